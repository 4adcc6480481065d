#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oneone/rational.hpp"

namespace oneone {

using i64 = std::int64_t;

// Nonnegative residue of a modulo m (m > 0).
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

struct FourTuple {
    i64 p = 1, q = 0, r = 0, s = 0;
    auto operator<=>(const FourTuple&) const = default;
};

struct RainbowPairing {
    std::vector<std::pair<i64, i64>> bottom;
    std::vector<std::pair<i64, i64>> top;
    Rational bottom_center;  // w nest
    Rational top_center;     // z nest
};

FourTuple validate_tuple(i64 p, i64 q, i64 r, i64 s);
FourTuple normalize_tuple(i64 p, i64 q, i64 r, i64 s_raw);
FourTuple mirror_tuple(const FourTuple& t);
FourTuple canonical_rep(const FourTuple& t);
RainbowPairing rainbow_pairing(const FourTuple& t);

// Height of the j-th rainbow of a nest above (or below) its edge; j = 0 is
// the outermost arc. Keeps nested rainbows disjoint and below 1/(2q).
Rational rainbow_height(i64 q, i64 j);

enum class TupleOrder { PQRS, PQSR };

// "p,q,r,s" with optional whitespace. Validation is left to the caller.
std::vector<i64> parse_numbers(const std::string& text);
FourTuple parse_tuple(const std::string& text, TupleOrder order = TupleOrder::PQRS);
std::string format_tuple(const FourTuple& t);

}  // namespace oneone
