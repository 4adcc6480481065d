#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oneone/floer.hpp"

namespace oneone {

// One spin class of a knot complex, generators in walk order.
struct ClassComplex {
    FourTuple tuple;
    int spin_class = 0;
    std::vector<Generator> gens;  // gens[i].id is the id in the full complex
    std::vector<BigonComponent> edges;  // local indices
    std::size_t size() const { return gens.size(); }
};

ClassComplex class_complex(const KnotComplex& c, int spin_class);
ClassComplex dual_complex(const ClassComplex& c);

// Complex drawn in the (i,j) plane: generator k sits at coords[k], arrows
// give the nonzero components. Gradings follow from the drawing.
ClassComplex complex_from_plane(const std::vector<std::pair<i64, i64>>& coords,
                                const std::vector<std::pair<std::size_t, std::size_t>>& arrows);

// Grading in which every arrow drops by exactly one (the generator placed at
// the lift reached by arrows, with no U-shifts).
std::vector<i64> lift_gradings(const ClassComplex& c);

struct TurningPoint {
    std::size_t index = 0;  // walk-order position
    i64 number = 0;         // left-to-right rank along the line, from 1
    int sign = 0;           // +1 when the predecessor lies in its boundary
};

std::vector<i64> left_to_right_numbers(const ClassComplex& c);
std::vector<TurningPoint> turning_points(const ClassComplex& c);

enum class GradingKind { Maslov, Lift };

struct MaslovCensus {
    std::vector<i64> counts;  // from the highest grading down
    i64 top = 0;
    bool consecutive = true;
    std::string pattern;  // "" when no listed pattern matches
    bool matches() const { return !pattern.empty(); }
};

MaslovCensus maslov_census(const ClassComplex& c, GradingKind kind);
// "(1,*,*)", "(*,*,1)", "(1,2,*,*)", "(*,*,2,1)" or "".
std::string match_census_pattern(const std::vector<i64>& counts);

struct Truncation {
    std::vector<i64> kept;      // numbers left after removing the span
    std::vector<i64> chain;     // after identifying the flanking crossings, renumbered
    bool identified = false;
};

// Removes positions [first, last) of a numbered crossing sequence and, when
// crossings remain on both sides, identifies the two flanking ones.
// directions[i] is the sign of the intersection at position i.
Truncation truncate_walk(const std::vector<i64>& numbers, const std::vector<int>& directions, std::size_t first,
                         std::size_t last);

struct StaircaseData {
    std::vector<std::size_t> path;  // y1 x1 y2 ... in order
    std::size_t steps = 0;          // N
    int sign = 1;                   // +1 when the x's are sources
    std::size_t size() const { return path.size(); }
};

struct BoxData {
    std::size_t a = 0, b = 0, c = 0, d = 0;  // d -> b, c -> a
    int sign = 1;                            // -1 for the dual arrangement
};

std::optional<StaircaseData> recognize_staircase(std::size_t n, const std::vector<BigonComponent>& edges);
std::optional<StaircaseData> recognize_staircase(const ClassComplex& c);
std::optional<BoxData> recognize_box(const std::vector<BigonComponent>& edges);
// 'a' or 'b' per the two almost-staircase families (either sign), 0 otherwise.
char recognize_almost_staircase(const ClassComplex& c);

struct BasisElement {
    std::size_t lead = 0;
    std::vector<std::size_t> terms;  // sorted, contains lead
};

struct SplitResult {
    std::vector<BasisElement> basis;  // four box elements, then the staircase
    std::vector<BigonComponent> box_edges, stair_edges;  // in new-basis indices (staircase offset by 4)
    BoxData box;
    StaircaseData staircase;
    std::size_t center = 0;
    bool dualized = false;
    std::string recipe;
};

// Checks that the given elements form a filtered basis splitting c as box plus staircase.
std::optional<SplitResult> verify_split(const ClassComplex& c, const std::vector<BasisElement>& box,
                                        const std::vector<BasisElement>& rest);

SplitResult decompose_staircase_plus_box(const ClassComplex& c);
// Exhaustive search over filtered boxes; for small classes only.
std::optional<SplitResult> brute_force_split(const ClassComplex& c, std::size_t max_size = 12);

enum class ShapeKind { Staircase, StaircasePlusBox, AlmostStaircase, Other };

struct ShapeVerdict {
    ShapeKind kind = ShapeKind::Other;
    std::optional<StaircaseData> staircase;
    std::optional<SplitResult> split;
    char almost = 0;
    std::string diagnostics;
};

ShapeVerdict analyze_shape(const ClassComplex& c);
std::string shape_name(ShapeKind k);

}  // namespace oneone
