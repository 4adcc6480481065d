#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oneone/cover.hpp"

namespace oneone {

enum class StepKind { BottomRainbow, TopRainbow, Strand };

// One geometric step of a closed traversal of beta downstairs.
struct GeoStep {
    StepKind kind = StepKind::Strand;
    i64 from = 0, to = 0;  // absolute positions of the two events
    std::size_t walk_index = 0;
    bool rightward() const { return to > from; }
};

struct NestCount {
    std::vector<std::size_t> right, left;  // indices into DownstairsCensus::steps
    bool tie() const { return !right.empty() && right.size() == left.size(); }
    std::size_t inconsistent() const { return std::min(right.size(), left.size()); }
    std::vector<std::vector<std::size_t>> choices() const;
};

struct DownstairsCensus {
    std::vector<GeoStep> steps;  // cyclic
    NestCount bottom, top;       // w nest, z nest
    std::size_t total_inconsistent() const { return bottom.inconsistent() + top.inconsistent(); }
};

enum class WitnessCase { None, SharedEndpoint, ConnectedByTwoArcs };

struct StrongWitness {
    WitnessCase kind = WitnessCase::None;
    std::vector<std::size_t> inconsistent;  // step indices
    std::vector<std::size_t> connecting;    // step indices of the two joining rainbows
};

DownstairsCensus downstairs_census(const FourTuple& t);
bool is_coherent(const FourTuple& t);
std::pair<bool, StrongWitness> is_strongly_almost_coherent(const FourTuple& t);
bool is_virtually_almost_coherent(const FourTuple& t);

struct EquivalenceReport {
    std::size_t checked = 0;
    std::size_t both_true = 0;
    std::vector<FourTuple> disagreements;
    std::vector<FourTuple> both_false_examples;
};

// Every connected tuple with p <= max_p and nonzero delta.
EquivalenceReport equivalence_report(i64 max_p);

// All valid tuples with the given p, in lexicographic order.
std::vector<FourTuple> tuples_with_p(i64 p);

std::string witness_name(WitnessCase c);

}  // namespace oneone
