#pragma once

#include <cstddef>
#include <vector>

#include "oneone/diagram.hpp"

namespace oneone {

constexpr int kTop = 1;
constexpr int kBottom = -1;
constexpr int kUp = 1;
constexpr int kDown = -1;

struct EdgePoint {
    i64 pos = 0;
    int dir = kUp;
    int side = kTop;
    i64 h = 0;
    auto operator<=>(const EdgePoint&) const = default;
};

struct CoverWalk {
    FourTuple tuple;
    std::vector<EdgePoint> entries;  // one closed traversal, start repeated at the end
    i64 delta_height = 0;
    i64 drift = 0;
};

// Several traversals concatenated, heights shifted so that lines
// 0, sgn, ..., sgn*(k-1) (sgn = sign of delta) are crossed completely.
struct ExtendedWalk {
    FourTuple tuple;
    std::vector<EdgePoint> entries;
    i64 iteration = 0;
    i64 delta_height = 0;
    i64 shift = 0;  // amount subtracted from raw heights
    i64 min_crossing = 0, max_crossing = 0;  // raw crossing heights of the first traversal
    std::vector<i64> lines;  // one representative line per spin class
};

struct LineCrossing {
    std::size_t walk_index = 0;
    i64 x = 0;
    int direction = kUp;
    i64 residue = 0;
};

enum class Half { Upper, Lower };

struct HalfPlaneArc {
    i64 line = 0;
    LineCrossing from, to;
    Half half = Half::Upper;
    bool rightward = false;
    Rational height_extent;
};

struct HalfCount {
    std::vector<std::size_t> right, left;  // indices into ArcCensus::arcs
    bool tie() const { return !right.empty() && right.size() == left.size(); }
    std::size_t inconsistent() const { return std::min(right.size(), left.size()); }
    // Minority lists; both when tied.
    std::vector<std::vector<std::size_t>> choices() const;
};

struct ArcCensus {
    std::vector<HalfPlaneArc> arcs;
    HalfCount upper, lower;
    std::size_t total_inconsistent = 0;
    // Every admissible inconsistent set (upper choice followed by lower choice).
    std::vector<std::vector<std::size_t>> inconsistent_sets() const;
};

EdgePoint find_next(const EdgePoint& e, const FourTuple& t);
CoverWalk build_walk(const FourTuple& t);
i64 spin_structure_count(const CoverWalk& w);
ExtendedWalk extend_and_normalize(const CoverWalk& w);
bool line_covered(const ExtendedWalk& w, i64 h);
std::vector<LineCrossing> line_crossings(const ExtendedWalk& w, i64 h);
std::vector<HalfPlaneArc> half_plane_arcs(const ExtendedWalk& w, i64 h);
ArcCensus arc_census(const ExtendedWalk& w);

// Index of the spin class whose representative line is h, or -1.
int class_of_line(const ExtendedWalk& w, i64 h);

}  // namespace oneone
