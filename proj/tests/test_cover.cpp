#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <tuple>

#include "oneone/coherence.hpp"
#include "oneone/cover.hpp"
#include "oneone/errors.hpp"

using namespace oneone;

namespace {

using Event = std::tuple<i64, int, int, i64>;  // pos, dir, side, h

// Transition table written out case by case, independent of find_next.
Event oracle_next(Event e, i64 p, i64 q, i64 r, i64 s) {
    auto [pos, dir, side, h] = e;
    i64 m = ((pos % p) + p) % p;
    if (side == 1 && dir == 1) return {pos + s, 1, -1, h};
    if (side == -1 && dir == -1) return {pos - s, -1, 1, h};
    if (side == 1) {
        if (m < r) return {pos + 2 * q, -1, -1, h - 1};
        if (m < r + 2 * q) return {2 * r + 2 * q - 1 - 2 * m + pos, 1, 1, h};
        return {pos, -1, -1, h - 1};
    }
    if (m < 2 * q) return {2 * q - 1 - 2 * m + pos, -1, -1, h};
    if (m < 2 * q + r) return {pos - 2 * q, 1, 1, h + 1};
    return {pos, 1, 1, h + 1};
}

Event as_tuple(const EdgePoint& e) { return {e.pos, e.dir, e.side, e.h}; }

// Number of distinct downstairs events visited before returning to the start.
std::size_t orbit_size(const FourTuple& t) {
    std::set<std::tuple<i64, int, int>> seen;
    Event e{0, 1, 1, 0};
    while (true) {
        auto key = std::make_tuple(((std::get<0>(e) % t.p) + t.p) % t.p, std::get<1>(e), std::get<2>(e));
        if (!seen.insert(key).second) break;
        e = oracle_next(e, t.p, t.q, t.r, t.s);
    }
    return seen.size();
}

template <class F>
void for_each_tuple(i64 max_p, F f) {
    for (i64 p = 1; p <= max_p; ++p)
        for (auto t : tuples_with_p(p)) f(t);
}

}  // namespace

TEST_CASE("find_next examples") {
    FourTuple t{5, 2, 0, 1};
    CHECK(find_next({0, kUp, kTop, 0}, t) == EdgePoint{1, kUp, kBottom, 0});
    CHECK(find_next({1, kUp, kBottom, 0}, t) == EdgePoint{2, kDown, kBottom, 0});
    CHECK(find_next({-1, kDown, kTop, 0}, t) == EdgePoint{-1, kDown, kBottom, -1});
}

TEST_CASE("find_next agrees with the transition table") {
    for_each_tuple(9, [](FourTuple t) {
        for (i64 pos = -2 * t.p; pos <= 2 * t.p; ++pos)
            for (int dir : {kUp, kDown})
                for (int side : {kTop, kBottom}) {
                    EdgePoint e{pos, dir, side, 3};
                    CHECK(as_tuple(find_next(e, t)) == oracle_next(as_tuple(e), t.p, t.q, t.r, t.s));
                }
    });
}

TEST_CASE("walk of 4_1 tuple") {
    auto w = build_walk({5, 2, 0, 1});
    std::vector<EdgePoint> expected{{0, 1, 1, 0},    {1, 1, -1, 0},   {2, -1, -1, 0},   {1, -1, 1, 0},
                                    {2, 1, 1, 0},    {3, 1, -1, 0},   {0, -1, -1, 0},   {-1, -1, 1, 0},
                                    {-1, -1, -1, -1}, {-2, -1, 1, -1}, {-5, 1, 1, -1}};
    CHECK(w.entries == expected);
    CHECK(w.delta_height == -1);
    CHECK(w.drift == -5);
}

TEST_CASE("small walks") {
    auto u = build_walk({1, 0, 0, 0});
    CHECK(u.entries.size() == 3);
    CHECK(u.delta_height == 1);
    CHECK(spin_structure_count(u) == 1);
    auto tr = build_walk({3, 1, 0, 1});
    CHECK(tr.entries.size() == 7);
    CHECK(spin_structure_count(tr) == 1);
    CHECK_THROWS_AS(build_walk({3, 1, 0, 0}), DisconnectedBeta);
    CHECK_THROWS_AS(spin_structure_count(build_walk({2, 1, 0, 0})), NotRationalHomologySphere);
    CHECK(spin_structure_count(build_walk({5, 2, 0, 1})) == 1);
}

TEST_CASE("disconnected message counts the visited points") {
    try {
        build_walk({3, 1, 0, 0});
        FAIL("expected DisconnectedBeta");
    } catch (const DisconnectedBeta& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("walk structure for every tuple up to p = 12") {
    for_each_tuple(12, [](FourTuple t) {
        const bool connected = orbit_size(t) == (std::size_t)(2 * t.p);
        CoverWalk w;
        try {
            w = build_walk(t);
        } catch (const DisconnectedBeta&) {
            CHECK_FALSE(connected);
            return;
        }
        REQUIRE(connected);
        REQUIRE(w.entries.size() == (std::size_t)(2 * t.p + 1));
        CHECK(w.entries.front() == EdgePoint{0, kUp, kTop, 0});
        for (std::size_t i = 0; i + 1 < w.entries.size(); ++i)
            CHECK(w.entries[i + 1] == find_next(w.entries[i], t));
        std::set<i64> top, bottom;
        for (std::size_t i = 0; i + 1 < w.entries.size(); ++i)
            (w.entries[i].side == kTop ? top : bottom).insert(mod(w.entries[i].pos, t.p));
        CHECK(top.size() == (std::size_t)t.p);
        CHECK(bottom.size() == (std::size_t)t.p);
        CHECK(mod(w.drift, t.p) == 0);
        CHECK(w.drift == w.entries.back().pos - w.entries.front().pos);
        CHECK(w.delta_height == w.entries.back().h - w.entries.front().h);
    });
}

TEST_CASE("extension of 4_1 tuple") {
    auto x = extend_and_normalize(build_walk({5, 2, 0, 1}));
    CHECK(x.iteration == 1);
    CHECK(x.entries.size() == 21);
    auto c = line_crossings(x, 0);
    std::vector<i64> xs;
    for (const auto& lc : c) xs.push_back(lc.x);
    CHECK(xs == std::vector<i64>{-1, -4, -3, -2, -5});
    for (const auto& lc : c) CHECK(lc.residue == mod(lc.x, 5));
}

TEST_CASE("extension of small tuples") {
    auto u = extend_and_normalize(build_walk({1, 0, 0, 0}));
    CHECK(u.iteration == 1);
    CHECK(line_crossings(u, 0).size() == 1);
    CHECK(half_plane_arcs(u, 0).empty());
    auto tr = extend_and_normalize(build_walk({3, 1, 0, 1}));
    std::vector<i64> xs;
    for (const auto& lc : line_crossings(tr, 0)) xs.push_back(lc.x);
    CHECK(xs == std::vector<i64>{-1, -2, -3});
}

TEST_CASE("zero delta keeps one traversal") {
    auto x = extend_and_normalize(build_walk({2, 1, 0, 0}));
    CHECK(x.iteration == 0);
    CHECK(x.entries.size() == 5);
}

TEST_CASE("uncovered line is reported") {
    auto x = extend_and_normalize(build_walk({5, 2, 0, 1}));
    CHECK_FALSE(line_covered(x, 40));
    CHECK_THROWS_AS(line_crossings(x, 40), LineNotCovered);
    CHECK_THROWS_AS(half_plane_arcs(x, 40), LineNotCovered);
}

TEST_CASE("half-plane arcs of 4_1 tuple") {
    auto arcs = half_plane_arcs(extend_and_normalize(build_walk({5, 2, 0, 1})), 0);
    REQUIRE(arcs.size() == 4);
    std::vector<std::tuple<i64, i64, Half, bool>> got, expected{{-1, -4, Half::Lower, false},
                                                                {-4, -3, Half::Upper, true},
                                                                {-3, -2, Half::Lower, true},
                                                                {-2, -5, Half::Upper, false}};
    for (const auto& a : arcs) got.emplace_back(a.from.x, a.to.x, a.half, a.rightward);
    CHECK(got == expected);
}

TEST_CASE("half-plane arcs of the trefoil tuple") {
    auto arcs = half_plane_arcs(extend_and_normalize(build_walk({3, 1, 0, 1})), 0);
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0].half == Half::Lower);
    CHECK_FALSE(arcs[0].rightward);
    CHECK(arcs[1].half == Half::Upper);
    CHECK_FALSE(arcs[1].rightward);
}

TEST_CASE("arc census examples") {
    auto a = arc_census(extend_and_normalize(build_walk({5, 2, 0, 1})));
    CHECK(a.upper.right.size() == 1);
    CHECK(a.upper.left.size() == 1);
    CHECK(a.lower.right.size() == 1);
    CHECK(a.lower.left.size() == 1);
    CHECK(a.upper.tie());
    CHECK(a.lower.tie());
    CHECK(a.total_inconsistent == 2);
    CHECK(a.inconsistent_sets().size() == 4);
    for (const auto& set : a.inconsistent_sets()) CHECK(set.size() == 2);
    CHECK(arc_census(extend_and_normalize(build_walk({9, 2, 0, 4}))).total_inconsistent == 4);
    auto tr = arc_census(extend_and_normalize(build_walk({3, 1, 0, 1})));
    CHECK(tr.total_inconsistent == 0);
    CHECK(tr.upper.right.empty());
    CHECK(tr.lower.right.empty());
}

TEST_CASE("line and arc invariants for every tuple up to p = 12") {
    for_each_tuple(12, [](FourTuple t) {
        CoverWalk w;
        try {
            w = build_walk(t);
        } catch (const DisconnectedBeta&) {
            return;
        }
        if (w.delta_height == 0) return;
        auto x = extend_and_normalize(w);
        const i64 k = spin_structure_count(w);
        REQUIRE(x.lines.size() == (std::size_t)k);
        std::set<i64> residues;
        std::size_t total = 0;
        for (std::size_t j = 0; j < x.lines.size(); ++j) {
            const i64 h = x.lines[j];
            REQUIRE(line_covered(x, h));
            CHECK(class_of_line(x, h) == (int)j);
            auto c = line_crossings(x, h);
            CHECK(c.size() % 2 == 1);
            total += c.size();
            for (const auto& lc : c) CHECK(residues.insert(lc.residue).second);
            for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(c[i].walk_index < c[i + 1].walk_index);
            auto arcs = half_plane_arcs(x, h);
            REQUIRE(arcs.size() + 1 == c.size());
            for (std::size_t i = 0; i < arcs.size(); ++i) {
                const auto& a = arcs[i];
                CHECK(a.line == h);
                CHECK(a.from.x != a.to.x);
                CHECK((a.half == Half::Upper) == (a.from.direction == kUp));
                CHECK(a.rightward == (a.from.x < a.to.x));
                CHECK(a.height_extent > Rational(0));
                if (i > 0) CHECK(a.half != arcs[i - 1].half);
            }
        }
        CHECK(total == (std::size_t)t.p);
        CHECK(residues.size() == (std::size_t)t.p);
    });
}

TEST_CASE("two inconsistent arcs sit one per half-plane, low, on a busy line") {
    std::size_t seen = 0;
    for_each_tuple(12, [&](FourTuple t) {
        CoverWalk w;
        try {
            w = build_walk(t);
        } catch (const DisconnectedBeta&) {
            return;
        }
        if (w.delta_height == 0) return;
        auto x = extend_and_normalize(w);
        auto census = arc_census(x);
        CHECK(census.total_inconsistent == census.upper.inconsistent() + census.lower.inconsistent());
        if (census.total_inconsistent != 2) return;
        ++seen;
        CHECK(census.upper.inconsistent() == 1);
        CHECK(census.lower.inconsistent() == 1);
        bool some_choice_on_one_line = false;
        for (const auto& set : census.inconsistent_sets()) {
            REQUIRE(set.size() == 2);
            const auto& a = census.arcs[set[0]];
            const auto& b = census.arcs[set[1]];
            CHECK(a.height_extent < Rational(1));
            CHECK(b.height_extent < Rational(1));
            if (a.line != b.line) continue;
            some_choice_on_one_line = true;
            std::size_t up = 0, low = 0;
            for (const auto& arc : census.arcs)
                if (arc.line == a.line) ++(arc.half == Half::Upper ? up : low);
            CHECK(up >= 2);
            CHECK(low >= 2);
        }
        CHECK(some_choice_on_one_line);
    });
    CHECK(seen > 0);
}
