#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oneone/diagram.hpp"
#include "oneone/errors.hpp"

using namespace oneone;

namespace {

bool interleave(std::pair<i64, i64> a, std::pair<i64, i64> b) {
    if (a.first > a.second) std::swap(a.first, a.second);
    if (b.first > b.second) std::swap(b.first, b.second);
    if (a.first > b.first) std::swap(a, b);
    return b.first < a.second && a.second < b.second;
}

}  // namespace

TEST_CASE("validate accepts and rejects") {
    CHECK(validate_tuple(5, 2, 0, 1) == FourTuple{5, 2, 0, 1});
    CHECK_THROWS_AS(validate_tuple(5, 3, 0, 0), ConstraintViolation);
    CHECK_THROWS_AS(validate_tuple(7, 3, 0, 9), SOutOfRange);
    CHECK_THROWS_AS(validate_tuple(0, 0, 0, 0), ConstraintViolation);
    CHECK_THROWS_AS(validate_tuple(4, -1, 0, 0), ConstraintViolation);
    CHECK_THROWS_AS(validate_tuple(4, 0, -1, 0), ConstraintViolation);
    CHECK_THROWS_AS(validate_tuple(4, 0, 0, -1), SOutOfRange);
}

TEST_CASE("constraint messages name the value") {
    try {
        validate_tuple(5, 3, 0, 0);
        FAIL("expected ConstraintViolation");
    } catch (const ConstraintViolation& e) {
        CHECK(std::string(e.what()).find("6") != std::string::npos);
        CHECK(e.kind == "ConstraintViolation");
    }
}

TEST_CASE("validate matches the inequalities exactly") {
    for (i64 p = -1; p <= 8; ++p)
        for (i64 q = -1; q <= 5; ++q)
            for (i64 r = -1; r <= 9; ++r)
                for (i64 s = -2; s <= 9; ++s) {
                    bool ok = p >= 1 && q >= 0 && r >= 0 && 2 * q + r <= p && 0 <= s && s < p;
                    bool accepted = true;
                    try {
                        validate_tuple(p, q, r, s);
                    } catch (const DomainError&) {
                        accepted = false;
                    }
                    CHECK(accepted == ok);
                }
}

TEST_CASE("normalize reduces s to the nonnegative residue") {
    CHECK(normalize_tuple(7, 3, 0, 9) == FourTuple{7, 3, 0, 2});
    CHECK(normalize_tuple(5, 2, 0, -1) == FourTuple{5, 2, 0, 4});
    CHECK(normalize_tuple(5, 2, 0, 1) == FourTuple{5, 2, 0, 1});
    CHECK(normalize_tuple(5, 2, 0, -11) == FourTuple{5, 2, 0, 4});
    CHECK_THROWS_AS(normalize_tuple(5, 3, 0, 0), ConstraintViolation);
    CHECK(mod(-1, 5) == 4);
    CHECK(mod(-10, 5) == 0);
    CHECK(mod(12, 5) == 2);
}

TEST_CASE("mirror examples") {
    CHECK(mirror_tuple({5, 2, 0, 1}) == FourTuple{5, 2, 1, 3});
    CHECK(mirror_tuple({7, 3, 0, 1}) == FourTuple{7, 3, 1, 5});
    CHECK(mirror_tuple({5, 2, 0, 4}) == FourTuple{5, 2, 1, 0});
    CHECK(mirror_tuple({1, 0, 0, 0}) == FourTuple{1, 0, 1, 0});
}

TEST_CASE("mirror is an involution preserving p and q") {
    for (i64 p = 1; p <= 14; ++p)
        for (i64 q = 0; 2 * q <= p; ++q)
            for (i64 r = 0; 2 * q + r <= p; ++r)
                for (i64 s = 0; s < p; ++s) {
                    FourTuple t{p, q, r, s};
                    FourTuple m = mirror_tuple(t);
                    CHECK(m.p == p);
                    CHECK(m.q == q);
                    CHECK_NOTHROW(validate_tuple(m.p, m.q, m.r, m.s));
                    CHECK(mirror_tuple(m) == t);
                }
}

TEST_CASE("canonical representative") {
    CHECK(canonical_rep({5, 2, 0, 4}) == FourTuple{5, 2, 0, 4});
    CHECK(canonical_rep({1, 0, 0, 0}) == FourTuple{1, 0, 0, 0});
    CHECK(canonical_rep({5, 2, 1, 3}) == FourTuple{5, 2, 0, 1});
    for (i64 p = 1; p <= 10; ++p)
        for (i64 q = 0; 2 * q <= p; ++q)
            for (i64 r = 0; 2 * q + r <= p; ++r)
                for (i64 s = 0; s < p; ++s) {
                    FourTuple t{p, q, r, s};
                    FourTuple c = canonical_rep(t);
                    CHECK(c == canonical_rep(mirror_tuple(t)));
                    CHECK(c == std::min(t, mirror_tuple(t)));
                }
}

TEST_CASE("rainbow pairing") {
    auto a = rainbow_pairing({5, 2, 0, 1});
    using P = std::vector<std::pair<i64, i64>>;
    CHECK(a.bottom == P{{0, 3}, {1, 2}});
    CHECK(a.top == P{{0, 3}, {1, 2}});
    CHECK(a.bottom_center == Rational(3, 2));
    CHECK(a.top_center == Rational(3, 2));
    auto b = rainbow_pairing({7, 3, 1, 0});
    CHECK(b.bottom == P{{0, 5}, {1, 4}, {2, 3}});
    CHECK(b.top == P{{1, 6}, {2, 5}, {3, 4}});
    CHECK(b.top_center == Rational(7, 2));
    auto c = rainbow_pairing({4, 0, 2, 1});
    CHECK(c.bottom.empty());
    CHECK(c.top.empty());
}

TEST_CASE("rainbow pairs never interleave and surround their center") {
    for (i64 p = 1; p <= 16; ++p)
        for (i64 q = 0; 2 * q <= p; ++q)
            for (i64 r = 0; 2 * q + r <= p; ++r) {
                auto rp = rainbow_pairing({p, q, r, 0});
                for (const auto* nest : {&rp.bottom, &rp.top}) {
                    const Rational& center = nest == &rp.bottom ? rp.bottom_center : rp.top_center;
                    CHECK(nest->size() == (std::size_t)q);
                    std::set<i64> feet;
                    for (std::size_t i = 0; i < nest->size(); ++i) {
                        auto [x, y] = (*nest)[i];
                        CHECK(Rational(x) < center);
                        CHECK(center < Rational(y));
                        feet.insert(x);
                        feet.insert(y);
                        for (std::size_t j = i + 1; j < nest->size(); ++j) CHECK_FALSE(interleave((*nest)[i], (*nest)[j]));
                    }
                    CHECK(feet.size() == 2 * (std::size_t)q);
                }
            }
}

TEST_CASE("rainbow heights nest below the strip midline") {
    for (i64 q = 1; q <= 8; ++q)
        for (i64 j = 0; j < q; ++j) {
            CHECK(rainbow_height(q, j) > Rational(0));
            CHECK(rainbow_height(q, j) <= Rational(1, 2 * q));
            if (j + 1 < q) CHECK(rainbow_height(q, j + 1) < rainbow_height(q, j));
        }
}

TEST_CASE("tuple text form") {
    CHECK(parse_tuple("5,2,0,1") == FourTuple{5, 2, 0, 1});
    CHECK(parse_tuple(" 5 , 2,0 , 1 ") == FourTuple{5, 2, 0, 1});
    CHECK(parse_tuple("5,2,-1,1") == FourTuple{5, 2, -1, 1});
    CHECK(parse_tuple("5,2,1,0", TupleOrder::PQSR) == FourTuple{5, 2, 0, 1});
    CHECK(format_tuple({15, 4, 2, 5}) == "15,4,2,5");
    CHECK_THROWS_AS(parse_tuple("5,2,0"), ParseError);
    CHECK_THROWS_AS(parse_tuple("5,2,0,1,1"), ParseError);
    CHECK_THROWS_AS(parse_tuple("5,2,,1"), ParseError);
    CHECK_THROWS_AS(parse_tuple("5,2,0,1,"), ParseError);
    CHECK_THROWS_AS(parse_tuple("5,2,x,1"), ParseError);
    CHECK_THROWS_AS(parse_tuple("5,2,0.5,1"), ParseError);
    for (i64 p = 1; p <= 6; ++p)
        for (i64 s = 0; s < p; ++s) {
            FourTuple t{p, 0, p / 2, s};
            CHECK(parse_tuple(format_tuple(t)) == t);
        }
}
