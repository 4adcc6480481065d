#include "oneone/cover.hpp"

#include <algorithm>
#include <tuple>

#include "oneone/errors.hpp"

namespace oneone {

EdgePoint find_next(const EdgePoint& e, const FourTuple& t) {
    const i64 p = t.p, q = t.q, r = t.r, s = t.s;
    const i64 m = mod(e.pos, p);
    if (e.side == kTop && e.dir == kUp) return {e.pos + s, kUp, kBottom, e.h};
    if (e.side == kBottom && e.dir == kDown) return {e.pos - s, kDown, kTop, e.h};
    if (e.side == kTop) {
        if (m <= r - 1) return {e.pos + 2 * q, kDown, kBottom, e.h - 1};
        if (m <= r + 2 * q - 1) return {2 * r + 2 * q - 1 - 2 * m + e.pos, kUp, kTop, e.h};
        return {e.pos, kDown, kBottom, e.h - 1};
    }
    if (m <= 2 * q - 1) return {2 * q - 1 - 2 * m + e.pos, kDown, kBottom, e.h};
    if (m <= 2 * q + r - 1) return {e.pos - 2 * q, kUp, kTop, e.h + 1};
    return {e.pos, kUp, kTop, e.h + 1};
}

CoverWalk build_walk(const FourTuple& t) {
    CoverWalk w;
    w.tuple = t;
    EdgePoint e{0, kUp, kTop, 0};
    w.entries.push_back(e);
    const std::size_t full = 2 * (std::size_t)t.p + 1;
    while (true) {
        e = find_next(e, t);
        w.entries.push_back(e);
        if (e.side == kTop && mod(e.pos, t.p) == 0) break;
        if (w.entries.size() > full) throw DisconnectedBeta(format_tuple(t) + ": walk does not close");
    }
    if (w.entries.size() != full)
        throw DisconnectedBeta(format_tuple(t) + ": beta closes after " + std::to_string((w.entries.size() - 1) / 2) +
                               " of " + std::to_string(t.p) + " points");
    w.delta_height = w.entries.back().h - w.entries.front().h;
    w.drift = w.entries.back().pos - w.entries.front().pos;
    return w;
}

i64 spin_structure_count(const CoverWalk& w) {
    if (w.delta_height == 0)
        throw NotRationalHomologySphere(format_tuple(w.tuple) + ": delta_height = 0");
    return w.delta_height < 0 ? -w.delta_height : w.delta_height;
}

ExtendedWalk extend_and_normalize(const CoverWalk& w) {
    ExtendedWalk x;
    x.tuple = w.tuple;
    x.delta_height = w.delta_height;
    i64 mx = w.entries.front().h, mn = mx;
    bool seen = false;
    for (const auto& e : w.entries) {
        mx = std::max(mx, e.h);
        mn = std::min(mn, e.h);
        if (e.side == kBottom) {
            x.min_crossing = seen ? std::min(x.min_crossing, e.h) : e.h;
            x.max_crossing = seen ? std::max(x.max_crossing, e.h) : e.h;
            seen = true;
        }
    }
    const i64 d = w.delta_height;
    const i64 k = d == 0 ? 1 : (d < 0 ? -d : d);
    x.iteration = d == 0 ? 0 : (mx - mn + k - 1 + k - 1) / k;
    const std::size_t period = w.entries.size() - 1;
    x.entries = w.entries;
    while (x.entries.size() <= (std::size_t)(x.iteration + 1) * period)
        x.entries.push_back(find_next(x.entries.back(), w.tuple));
    x.shift = d >= 0 ? mx : mn;
    for (auto& e : x.entries) e.h -= x.shift;
    const i64 sgn = d >= 0 ? 1 : -1;
    for (i64 j = 0; j < k; ++j) x.lines.push_back(sgn * j);
    return x;
}

bool line_covered(const ExtendedWalk& w, i64 h) {
    // Traversal j crosses raw heights [min + j*d, max + j*d]; the line is
    // covered when every traversal that reaches it lies inside the extension.
    const i64 raw = h + w.shift, d = w.delta_height;
    if (d == 0) return w.iteration == 0 && raw >= w.min_crossing && raw <= w.max_crossing;
    i64 lo = raw - w.max_crossing, hi = raw - w.min_crossing;  // j*d in [lo, hi]
    if (d < 0) std::tie(lo, hi) = std::pair(-hi, -lo);
    const i64 k = d < 0 ? -d : d;
    auto floor_div = [](i64 a, i64 b) { return a / b - (a % b != 0 && a < 0); };
    const i64 first = -floor_div(-lo, k), last = floor_div(hi, k);
    return first <= last && first >= 0 && last <= w.iteration;
}

std::vector<LineCrossing> line_crossings(const ExtendedWalk& w, i64 h) {
    if (!line_covered(w, h))
        throw LineNotCovered(format_tuple(w.tuple) + ": line " + std::to_string(h) + " is not fully crossed");
    std::vector<LineCrossing> out;
    for (std::size_t i = 0; i < w.entries.size(); ++i) {
        const auto& e = w.entries[i];
        if (e.side == kBottom && e.h == h) out.push_back({i, e.pos, e.dir, mod(e.pos, w.tuple.p)});
    }
    return out;
}

std::vector<HalfPlaneArc> half_plane_arcs(const ExtendedWalk& w, i64 h) {
    const auto cr = line_crossings(w, h);
    const auto& t = w.tuple;
    std::vector<HalfPlaneArc> out;
    for (std::size_t i = 0; i + 1 < cr.size(); ++i) {
        HalfPlaneArc a;
        a.line = h;
        a.from = cr[i];
        a.to = cr[i + 1];
        a.half = cr[i].direction == kUp ? Half::Upper : Half::Lower;
        a.rightward = cr[i].x < cr[i + 1].x;
        Rational ext(0);
        for (std::size_t k = cr[i].walk_index; k <= cr[i + 1].walk_index; ++k) {
            const auto& e = w.entries[k];
            Rational y(e.h - h);
            if (k < cr[i + 1].walk_index) {
                const auto& f = w.entries[k + 1];
                if (e.side == kBottom && e.dir == kUp && f.side == kBottom) {
                    y = y + rainbow_height(t.q, std::min(mod(e.pos, t.p), mod(f.pos, t.p)));
                } else if (e.side == kTop && e.dir == kDown && f.side == kTop) {
                    y = y - rainbow_height(t.q, std::min(mod(e.pos, t.p), mod(f.pos, t.p)) - t.r);
                }
            }
            if (y.sign() < 0) y = -y;
            if (y > ext) ext = y;
        }
        a.height_extent = ext;
        out.push_back(a);
    }
    return out;
}

std::vector<std::vector<std::size_t>> HalfCount::choices() const {
    std::vector<std::vector<std::size_t>> out;
    if (right.size() <= left.size()) out.push_back(right);
    if (left.size() <= right.size() && !(right.empty() && left.empty())) out.push_back(left);
    return out;
}

std::vector<std::vector<std::size_t>> ArcCensus::inconsistent_sets() const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& u : upper.choices()) {
        for (const auto& l : lower.choices()) {
            auto v = u;
            v.insert(v.end(), l.begin(), l.end());
            out.push_back(v);
        }
    }
    return out;
}

ArcCensus arc_census(const ExtendedWalk& w) {
    if (w.delta_height == 0) throw NotRationalHomologySphere(format_tuple(w.tuple) + ": delta_height = 0");
    ArcCensus c;
    for (i64 h : w.lines) {
        for (auto& a : half_plane_arcs(w, h)) c.arcs.push_back(a);
    }
    for (std::size_t i = 0; i < c.arcs.size(); ++i) {
        HalfCount& hc = c.arcs[i].half == Half::Upper ? c.upper : c.lower;
        (c.arcs[i].rightward ? hc.right : hc.left).push_back(i);
    }
    c.total_inconsistent = c.upper.inconsistent() + c.lower.inconsistent();
    return c;
}

int class_of_line(const ExtendedWalk& w, i64 h) {
    for (std::size_t i = 0; i < w.lines.size(); ++i)
        if (w.lines[i] == h) return (int)i;
    return -1;
}

}  // namespace oneone
