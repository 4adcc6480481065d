#include "oneone/coherence.hpp"

#include <algorithm>

#include "oneone/errors.hpp"

namespace oneone {

std::vector<std::vector<std::size_t>> NestCount::choices() const {
    std::vector<std::vector<std::size_t>> out;
    if (right.size() <= left.size()) out.push_back(right);
    if (left.size() <= right.size() && !(right.empty() && left.empty())) out.push_back(left);
    return out;
}

DownstairsCensus downstairs_census(const FourTuple& t) {
    const CoverWalk w = build_walk(t);
    DownstairsCensus c;
    for (std::size_t i = 0; i + 1 < w.entries.size(); ++i) {
        const auto& e = w.entries[i];
        const auto& f = w.entries[i + 1];
        GeoStep g{StepKind::Strand, e.pos, f.pos, i};
        if (e.side == kBottom && e.dir == kUp) {
            if (f.side == kBottom) g.kind = StepKind::BottomRainbow;
        } else if (e.side == kTop && e.dir == kDown) {
            if (f.side == kTop) g.kind = StepKind::TopRainbow;
        } else {
            continue;  // edge identification, not a geometric step
        }
        c.steps.push_back(g);
    }
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const auto& g = c.steps[i];
        if (g.kind == StepKind::Strand) continue;
        NestCount& n = g.kind == StepKind::BottomRainbow ? c.bottom : c.top;
        (g.rightward() ? n.right : n.left).push_back(i);
    }
    return c;
}

bool is_coherent(const FourTuple& t) { return downstairs_census(t).total_inconsistent() == 0; }

std::pair<bool, StrongWitness> is_strongly_almost_coherent(const FourTuple& t) {
    const auto c = downstairs_census(t);
    const std::size_t n = c.steps.size();
    for (const auto& b : c.bottom.choices()) {
        for (const auto& tp : c.top.choices()) {
            std::vector<std::size_t> inc = b;
            inc.insert(inc.end(), tp.begin(), tp.end());
            if (inc.size() != 2) continue;
            std::sort(inc.begin(), inc.end());
            const std::size_t i = inc[0], j = inc[1];
            StrongWitness w;
            w.inconsistent = inc;
            const std::size_t fwd = j - i, back = n - fwd;
            if (fwd == 1 || back == 1) {
                w.kind = WitnessCase::SharedEndpoint;
                return {true, w};
            }
            // The two arcs between them along beta (either way round) must both be rainbows.
            for (auto [start, gap] : {std::pair{i, fwd}, std::pair{j, back}}) {
                if (gap != 3) continue;
                std::size_t m1 = (start + 1) % n, m2 = (start + 2) % n;
                if (c.steps[m1].kind != StepKind::Strand && c.steps[m2].kind != StepKind::Strand) {
                    w.kind = WitnessCase::ConnectedByTwoArcs;
                    w.connecting = {m1, m2};
                    return {true, w};
                }
            }
        }
    }
    return {false, StrongWitness{}};
}

bool is_virtually_almost_coherent(const FourTuple& t) {
    const auto w = extend_and_normalize(build_walk(t));
    return arc_census(w).total_inconsistent == 2;
}

std::vector<FourTuple> tuples_with_p(i64 p) {
    std::vector<FourTuple> out;
    for (i64 q = 0; 2 * q <= p; ++q)
        for (i64 r = 0; 2 * q + r <= p; ++r)
            for (i64 s = 0; s < p; ++s) out.push_back({p, q, r, s});
    return out;
}

EquivalenceReport equivalence_report(i64 max_p) {
    EquivalenceReport rep;
    for (i64 p = 1; p <= max_p; ++p) {
        for (const auto& t : tuples_with_p(p)) {
            CoverWalk w;
            try {
                w = build_walk(t);
            } catch (const DisconnectedBeta&) {
                continue;
            }
            if (w.delta_height == 0) continue;
            ++rep.checked;
            const bool strong = is_strongly_almost_coherent(t).first;
            const bool virt = arc_census(extend_and_normalize(w)).total_inconsistent == 2;
            if (strong != virt) rep.disagreements.push_back(t);
            else if (strong) ++rep.both_true;
            else if (!is_coherent(t)) rep.both_false_examples.push_back(t);
        }
    }
    return rep;
}

std::string witness_name(WitnessCase c) {
    switch (c) {
        case WitnessCase::SharedEndpoint: return "shared_endpoint";
        case WitnessCase::ConnectedByTwoArcs: return "connected_by_two_arcs";
        default: return "none";
    }
}

}  // namespace oneone
