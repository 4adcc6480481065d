#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oneone/coherence.hpp"
#include "oneone/errors.hpp"
#include "oneone/floer.hpp"

using namespace oneone;

namespace {

struct Case {
    FourTuple t;
    CoverWalk w;
};

// Connected tuples with nonzero delta, p <= max_p.
std::vector<Case> qhs_tuples(i64 max_p) {
    std::vector<Case> out;
    for (i64 p = 1; p <= max_p; ++p)
        for (auto t : tuples_with_p(p)) {
            try {
                auto w = build_walk(t);
                if (w.delta_height != 0) out.push_back({t, w});
            } catch (const DisconnectedBeta&) {
            }
        }
    return out;
}

std::set<i64> feet(const GeoStep& g, const FourTuple& t) {
    const i64 shift = g.kind == StepKind::TopRainbow ? t.s : 0;
    return {mod(g.from + shift, t.p), mod(g.to + shift, t.p)};
}

}  // namespace

TEST_CASE("downstairs census examples") {
    auto a = downstairs_census({5, 2, 0, 1});
    CHECK(a.bottom.right.size() == 1);
    CHECK(a.bottom.left.size() == 1);
    CHECK(a.top.right.size() == 1);
    CHECK(a.top.left.size() == 1);
    CHECK(a.bottom.tie());
    CHECK(a.top.tie());
    CHECK(downstairs_census({9, 2, 0, 4}).total_inconsistent() == 2);
    auto u = downstairs_census({4, 0, 2, 1});
    CHECK(u.bottom.right.empty());
    CHECK(u.bottom.left.empty());
    CHECK(u.total_inconsistent() == 0);
    CHECK_THROWS_AS(downstairs_census({3, 1, 0, 0}), DisconnectedBeta);
}

TEST_CASE("coherence examples") {
    CHECK(is_coherent({1, 0, 0, 0}));
    CHECK(is_coherent({3, 1, 0, 1}));
    CHECK_FALSE(is_coherent({5, 2, 0, 1}));
}

TEST_CASE("strong almost coherence examples") {
    auto [a, wa] = is_strongly_almost_coherent({5, 2, 0, 1});
    CHECK(a);
    CHECK(wa.kind == WitnessCase::SharedEndpoint);
    CHECK(wa.inconsistent.size() == 2);
    CHECK_FALSE(is_strongly_almost_coherent({9, 2, 0, 4}).first);
    auto [k1, wk] = is_strongly_almost_coherent({11, 3, 4, 2});
    CHECK(k1);
    CHECK(wk.kind != WitnessCase::None);
    auto [c, wc] = is_strongly_almost_coherent({7, 3, 0, 1});
    CHECK(c);
    CHECK(wc.kind == WitnessCase::ConnectedByTwoArcs);
    CHECK(wc.connecting.size() == 2);
    CHECK_FALSE(is_strongly_almost_coherent({3, 1, 0, 1}).first);
    CHECK(witness_name(WitnessCase::SharedEndpoint) == "shared_endpoint");
}

TEST_CASE("virtual almost coherence examples") {
    CHECK(is_virtually_almost_coherent({5, 2, 0, 1}));
    CHECK_FALSE(is_virtually_almost_coherent({9, 2, 0, 4}));
    CHECK_FALSE(is_virtually_almost_coherent({3, 1, 0, 1}));
    CHECK_THROWS_AS(is_virtually_almost_coherent({2, 1, 0, 0}), NotRationalHomologySphere);
    CHECK_THROWS_AS(is_virtually_almost_coherent({3, 1, 0, 0}), DisconnectedBeta);
}

TEST_CASE("equivalence report") {
    auto small = equivalence_report(1);
    CHECK(small.disagreements.empty());
    auto rep = equivalence_report(10);
    CHECK(rep.disagreements.empty());
    CHECK(rep.both_true > 0);
    CHECK(std::find(rep.both_false_examples.begin(), rep.both_false_examples.end(), FourTuple{9, 2, 0, 4}) !=
          rep.both_false_examples.end());
}

TEST_CASE("strong and virtual almost coherence agree up to p = 12") {
    auto rep = equivalence_report(12);
    CHECK(rep.checked == qhs_tuples(12).size());
    CHECK(rep.disagreements.empty());
}

TEST_CASE("rainbow steps follow the pairing") {
    for (const auto& [t, w] : qhs_tuples(11)) {
        auto c = downstairs_census(t);
        auto rp = rainbow_pairing(t);
        CHECK(c.bottom.right.size() + c.bottom.left.size() == (std::size_t)t.q);
        CHECK(c.top.right.size() + c.top.left.size() == (std::size_t)t.q);
        for (const auto& g : c.steps) {
            if (g.kind == StepKind::Strand) continue;
            const auto& nest = g.kind == StepKind::BottomRainbow ? rp.bottom : rp.top;
            std::pair<i64, i64> pr{mod(g.from, t.p), mod(g.to, t.p)};
            if (pr.first > pr.second) std::swap(pr.first, pr.second);
            CHECK(std::find(nest.begin(), nest.end(), pr) != nest.end());
        }
    }
}

TEST_CASE("shared endpoints meet at one intersection point") {
    for (const auto& [t, w] : qhs_tuples(12)) {
        auto [ok, wit] = is_strongly_almost_coherent(t);
        if (!ok) continue;
        auto c = downstairs_census(t);
        REQUIRE(wit.inconsistent.size() == 2);
        const auto& g1 = c.steps[wit.inconsistent[0]];
        const auto& g2 = c.steps[wit.inconsistent[1]];
        CHECK(g1.kind != StepKind::Strand);
        CHECK(g2.kind != StepKind::Strand);
        CHECK(g1.kind != g2.kind);
        auto f1 = feet(g1, t), f2 = feet(g2, t);
        std::vector<i64> common;
        std::set_intersection(f1.begin(), f1.end(), f2.begin(), f2.end(), std::back_inserter(common));
        if (wit.kind == WitnessCase::SharedEndpoint) {
            CHECK(common.size() == 1);
        } else {
            REQUIRE(wit.connecting.size() == 2);
            const auto& m1 = c.steps[wit.connecting[0]];
            const auto& m2 = c.steps[wit.connecting[1]];
            CHECK(m1.kind != StepKind::Strand);
            CHECK(m2.kind != StepKind::Strand);
            auto a = feet(m1, t), b = feet(m2, t);
            std::set<i64> touched;
            for (i64 x : a)
                if (f1.count(x) || f2.count(x)) touched.insert(x);
            for (i64 x : b)
                if (f1.count(x) || f2.count(x)) touched.insert(x);
            CHECK(touched.size() >= 2);
        }
    }
}

TEST_CASE("predicates are mirror invariant") {
    for (const auto& [t, w] : qhs_tuples(12)) {
        const FourTuple m = mirror_tuple(t);
        CHECK(is_coherent(t) == is_coherent(m));
        CHECK(is_strongly_almost_coherent(t).first == is_strongly_almost_coherent(m).first);
        CHECK(is_virtually_almost_coherent(t) == is_virtually_almost_coherent(m));
    }
}

TEST_CASE("coherent exactly when the cover has no inconsistent arcs") {
    for (const auto& [t, w] : qhs_tuples(12)) {
        const auto census = arc_census(extend_and_normalize(w));
        CHECK(is_coherent(t) == (census.total_inconsistent == 0));
    }
}

TEST_CASE("inconsistent arcs bound bigons with one basepoint") {
    std::size_t seen = 0;
    for (const auto& [t, w] : qhs_tuples(11)) {
        const auto x = extend_and_normalize(w);
        const auto census = arc_census(x);
        if (census.total_inconsistent != 2) continue;
        const auto real = realize_cover(x);
        for (const auto& set : census.inconsistent_sets()) {
            for (std::size_t idx : set) {
                const auto& arc = census.arcs[idx];
                const auto crossings = line_crossings(x, arc.line);
                std::size_t i = 0;
                while (crossings[i].walk_index != arc.from.walk_index) ++i;
                const auto bigons = enumerate_bigons(real, arc.line, 0);
                bool found = false;
                for (const auto& b : bigons) {
                    auto [lo, hi] = std::minmax(b.component.from, b.component.to);
                    if (b.embedded && lo == i && hi == i + 1) {
                        found = true;
                        CHECK(b.component.nw + b.component.nz == 1);
                    }
                }
                CHECK(found);
                ++seen;
            }
        }
    }
    CHECK(seen > 0);
}
