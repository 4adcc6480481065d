#include "oneone/diagram.hpp"

#include <cctype>
#include <sstream>

#include "oneone/errors.hpp"

namespace oneone {

namespace {

void check_static(i64 p, i64 q, i64 r) {
    if (p < 1) throw ConstraintViolation("p = " + std::to_string(p) + " must be at least 1");
    if (q < 0) throw ConstraintViolation("q = " + std::to_string(q) + " must be nonnegative");
    if (r < 0) throw ConstraintViolation("r = " + std::to_string(r) + " must be nonnegative");
    if (2 * q + r > p)
        throw ConstraintViolation("2q + r = " + std::to_string(2 * q + r) + " exceeds p = " + std::to_string(p));
}

}  // namespace

FourTuple validate_tuple(i64 p, i64 q, i64 r, i64 s) {
    check_static(p, q, r);
    if (s < 0 || s >= p)
        throw SOutOfRange("s = " + std::to_string(s) + " is outside [0, " + std::to_string(p) + ")");
    return {p, q, r, s};
}

FourTuple normalize_tuple(i64 p, i64 q, i64 r, i64 s_raw) {
    check_static(p, q, r);
    return {p, q, r, mod(s_raw, p)};
}

FourTuple mirror_tuple(const FourTuple& t) {
    return normalize_tuple(t.p, t.q, t.p - 2 * t.q - t.r, 2 * t.q - t.s);
}

FourTuple canonical_rep(const FourTuple& t) {
    FourTuple a = normalize_tuple(t.p, t.q, t.r, t.s);
    FourTuple b = mirror_tuple(a);
    return std::min(a, b);
}

RainbowPairing rainbow_pairing(const FourTuple& t) {
    RainbowPairing rp;
    for (i64 j = 0; j < t.q; ++j) rp.bottom.emplace_back(j, 2 * t.q - 1 - j);
    for (i64 i = t.r; i < t.r + t.q; ++i) rp.top.emplace_back(i, 2 * t.r + 2 * t.q - 1 - i);
    rp.bottom_center = Rational(2 * t.q - 1, 2);
    rp.top_center = Rational(2 * t.r + 2 * t.q - 1, 2);
    return rp;
}

Rational rainbow_height(i64 q, i64 j) { return Rational(q - j, 2 * q * (q + 1)); }

std::vector<i64> parse_numbers(const std::string& text) {
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t b = 0, e = item.size();
        while (b < e && std::isspace((unsigned char)item[b])) ++b;
        while (e > b && std::isspace((unsigned char)item[e - 1])) --e;
        std::string tok = item.substr(b, e - b);
        if (tok.empty()) throw ParseError("empty field in \"" + text + "\"");
        std::size_t used = 0;
        i64 v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("not an integer: \"" + tok + "\"");
        }
        if (used != tok.size()) throw ParseError("not an integer: \"" + tok + "\"");
        out.push_back(v);
    }
    if (!text.empty() && text.back() == ',') throw ParseError("trailing comma in \"" + text + "\"");
    return out;
}

FourTuple parse_tuple(const std::string& text, TupleOrder order) {
    auto v = parse_numbers(text);
    if (v.size() != 4) throw ParseError("expected four comma-separated integers, got \"" + text + "\"");
    if (order == TupleOrder::PQSR) std::swap(v[2], v[3]);
    return {v[0], v[1], v[2], v[3]};
}

std::string format_tuple(const FourTuple& t) {
    return std::to_string(t.p) + "," + std::to_string(t.q) + "," + std::to_string(t.r) + "," + std::to_string(t.s);
}

}  // namespace oneone
