#include "oneone/floer.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "oneone/errors.hpp"
#include "oneone/gf2.hpp"

namespace oneone {

namespace {

Point entry_point(const EdgePoint& e, const FourTuple& t) {
    return {Rational(e.side == kBottom ? e.pos : e.pos + t.s), Rational(e.h)};
}

Rational cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (cross(a, b, p).sign() != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

Realization realize_cover(const ExtendedWalk& w) {
    const FourTuple& t = w.tuple;
    Realization r;
    r.walk = w;
    r.offset = t.q > 0 ? Rational(1, 4 * t.q * (t.q + 1)) : Rational(1, 4);
    const Rational s(t.s);
    r.points.push_back(entry_point(w.entries[0], t));
    r.index_of_entry.push_back(0);
    for (std::size_t i = 0; i + 1 < w.entries.size(); ++i) {
        const auto& e = w.entries[i];
        const auto& f = w.entries[i + 1];
        if (e.side == kBottom && e.dir == kUp && f.side == kBottom) {
            const Rational H = rainbow_height(t.q, std::min(mod(e.pos, t.p), mod(f.pos, t.p)));
            const Rational y = Rational(e.h) + H;
            r.points.push_back({Rational(e.pos) + s * H, y});
            r.points.push_back({Rational(f.pos) + s * H, y});
            r.points.push_back({Rational(f.pos), Rational(e.h)});
        } else if (e.side == kTop && e.dir == kDown && f.side == kTop) {
            const Rational H = rainbow_height(t.q, std::min(mod(e.pos, t.p), mod(f.pos, t.p)) - t.r);
            const Rational y = Rational(e.h) - H;
            const Rational dx = s * (Rational(1) - H);
            r.points.push_back({Rational(e.pos) + dx, y});
            r.points.push_back({Rational(f.pos) + dx, y});
            r.points.push_back({Rational(f.pos) + s, Rational(e.h)});
        } else if ((e.side == kBottom && e.dir == kUp) || (e.side == kTop && e.dir == kDown)) {
            r.points.push_back(entry_point(f, t));
        }
        r.index_of_entry.push_back(r.points.size() - 1);
    }
    return r;
}

std::vector<BasepointLift> basepoints_in_box(const Realization& r, const Rational& x0, const Rational& x1,
                                             const Rational& y0, const Rational& y1) {
    const FourTuple& t = r.walk.tuple;
    const Rational v = r.offset, s(t.s);
    const Rational uw = Rational(2 * t.q - 1, 2) + s * v;
    const Rational uz = Rational(2 * t.r + 2 * t.q - 1, 2) + s * (Rational(1) - v);
    std::vector<BasepointLift> out;
    for (i64 k = y0.floor() - 1; k <= y1.ceil() + 1; ++k) {
        for (int kind = 0; kind < 2; ++kind) {
            const Rational u = kind == 0 ? uw : uz;
            const Rational y = kind == 0 ? Rational(k) + v : Rational(k + 1) - v;
            if (y < y0 || y > y1) continue;
            const i64 m0 = ((x0 - u) / Rational(t.p)).floor() - 1;
            const i64 m1 = ((x1 - u) / Rational(t.p)).ceil() + 1;
            for (i64 m = m0; m <= m1; ++m) {
                const Rational x = u + Rational(m * t.p);
                if (x < x0 || x > x1) continue;
                out.push_back({{x, y}, kind == 0});
            }
        }
    }
    return out;
}

Rational signed_area2(const Polygon& poly) {
    Rational a(0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return a;
}

bool on_boundary(const Polygon& poly, const Point& pt) {
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (on_segment(poly[i], poly[(i + 1) % poly.size()], pt)) return true;
    return false;
}

bool point_in_polygon(const Polygon& poly, const Point& pt, PipMethod method) {
    const std::size_t n = poly.size();
    if (method == PipMethod::RayCasting) {
        bool inside = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = poly[i];
            const Point& b = poly[(i + 1) % n];
            if ((a.y > pt.y) != (b.y > pt.y)) {
                const Rational xi = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (xi > pt.x) inside = !inside;
            }
        }
        return inside;
    }
    int wn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        if (a.y <= pt.y) {
            if (b.y > pt.y && cross(a, b, pt).sign() > 0) ++wn;
        } else if (b.y <= pt.y && cross(a, b, pt).sign() < 0) {
            --wn;
        }
    }
    return wn != 0;
}

std::pair<i64, i64> count_basepoints(const Realization& r, const Polygon& poly, PipMethod method) {
    Rational x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (const auto& p : poly) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    i64 nw = 0, nz = 0;
    for (const auto& b : basepoints_in_box(r, x0, x1, y0, y1)) {
        if (on_boundary(poly, b.at)) {
            std::ostringstream os;
            os << format_tuple(r.walk.tuple) << ": basepoint (" << b.at.x << ", " << b.at.y << ") on beta";
            throw RealizationDegenerate(os.str());
        }
        if (point_in_polygon(poly, b.at, method)) ++(b.is_w ? nw : nz);
    }
    return {nw, nz};
}

i64 winding_number(const Polygon& poly, const Point& pt) {
    i64 wn = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        if (a.y <= pt.y) {
            if (b.y > pt.y && cross(a, b, pt).sign() > 0) ++wn;
        } else if (b.y <= pt.y && cross(a, b, pt).sign() < 0) {
            --wn;
        }
    }
    return wn;
}

std::pair<i64, i64> face_winding_range(const Polygon& poly) {
    // Every face meets the midline of some vertical slab between vertices
    // and edge crossings.
    std::vector<Rational> xs;
    for (const auto& p : poly) xs.push_back(p.x);
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (std::size_t j = i + 1; j < poly.size(); ++j) {
            const Point &a = poly[i], &b = poly[(i + 1) % poly.size()];
            const Point &c = poly[j], &d = poly[(j + 1) % poly.size()];
            const Rational den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
            if (den.sign() == 0) continue;
            const Rational u = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den;
            const Rational v = ((c.x - a.x) * (b.y - a.y) - (c.y - a.y) * (b.x - a.x)) / den;
            if (u > Rational(0) && u < Rational(1) && v > Rational(0) && v < Rational(1))
                xs.push_back(a.x + u * (b.x - a.x));
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    i64 lo = 0, hi = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational m = (xs[i] + xs[i + 1]) / Rational(2);
        std::vector<std::pair<Rational, int>> hits;
        for (std::size_t k = 0; k < n; ++k) {
            const Point& a = poly[k];
            const Point& b = poly[(k + 1) % n];
            if (std::min(a.x, b.x) < m && m < std::max(a.x, b.x))
                hits.push_back({a.y + (m - a.x) * (b.y - a.y) / (b.x - a.x), b.x > a.x ? 1 : -1});
        }
        std::sort(hits.begin(), hits.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
        i64 w = 0;
        for (const auto& [y, d] : hits) {
            w += d;
            lo = std::min(lo, w), hi = std::max(hi, w);
        }
    }
    return {lo, hi};
}

std::pair<i64, i64> basepoint_multiplicities(const Realization& r, const Polygon& poly) {
    Rational x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (const auto& p : poly) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    const i64 sgn = signed_area2(poly).sign() < 0 ? -1 : 1;
    i64 nw = 0, nz = 0;
    for (const auto& b : basepoints_in_box(r, x0, x1, y0, y1)) {
        if (on_boundary(poly, b.at)) {
            std::ostringstream os;
            os << format_tuple(r.walk.tuple) << ": basepoint (" << b.at.x << ", " << b.at.y << ") on beta";
            throw RealizationDegenerate(os.str());
        }
        const i64 w = winding_number(poly, b.at);
        if ((w % 2 != 0) != point_in_polygon(poly, b.at, PipMethod::RayCasting))
            throw RealizationDegenerate(format_tuple(r.walk.tuple) + ": winding parity disagrees with ray casting");
        (b.is_w ? nw : nz) += sgn * w;
    }
    return {nw, nz};
}

std::vector<Bigon> enumerate_bigons(const Realization& r, i64 h, std::size_t id_base, PipMethod method,
                                    bool immersed) {
    const auto cr = line_crossings(r.walk, h);
    std::vector<Bigon> out;
    for (std::size_t a = 0; a < cr.size(); ++a) {
        for (std::size_t b = a + 1; b < cr.size(); ++b) {
            const i64 lo = std::min(cr[a].x, cr[b].x), hi = std::max(cr[a].x, cr[b].x);
            bool blocked = false;
            for (std::size_t c = a + 1; c < b && !blocked; ++c) blocked = cr[c].x >= lo && cr[c].x <= hi;
            if (blocked && !immersed) continue;
            Polygon poly;
            for (std::size_t k = r.index_of_entry[cr[a].walk_index]; k <= r.index_of_entry[cr[b].walk_index]; ++k)
                if (poly.empty() || !(poly.back() == r.points[k])) poly.push_back(r.points[k]);
            if (poly.size() < 3) continue;
            const int sgn = signed_area2(poly).sign();
            if (sgn == 0) continue;
            const std::size_t n = poly.size();
            if (cross(poly[n - 1], poly[0], poly[1]).sign() != sgn) continue;
            if (cross(poly[n - 2], poly[n - 1], poly[0]).sign() != sgn) continue;
            i64 nw = 0, nz = 0;
            if (blocked) {
                const auto [wlo, whi] = face_winding_range(poly);
                if ((sgn > 0 ? wlo : -whi) < 0) continue;
                std::tie(nw, nz) = basepoint_multiplicities(r, poly);
            } else {
                std::tie(nw, nz) = count_basepoints(r, poly, method);
            }
            Bigon bg;
            bg.component = sgn < 0 ? BigonComponent{id_base + a, id_base + b, nw, nz}
                                   : BigonComponent{id_base + b, id_base + a, nw, nz};
            bg.boundary = std::move(poly);
            bg.embedded = !blocked;
            out.push_back(std::move(bg));
        }
    }
    return out;
}

namespace {

// Ranks of the homology of the n_w = 0 part of one class, keyed by Maslov grading.
std::map<i64, i64> w_free_homology(const KnotComplex& c, int cls) {
    std::map<i64, std::vector<std::size_t>> by_m;
    for (const auto& g : c.generators)
        if (g.spin_class == cls) by_m[g.maslov].push_back(g.id);
    auto block = [&](i64 m) {  // matrix of d: C_m -> C_{m-1}
        const auto& src = by_m[m];
        const auto& dst = by_m[m - 1];
        gf2::Matrix mat(dst.size(), src.size());
        for (const auto& e : c.components) {
            if (e.nw != 0) continue;
            auto i = std::find(src.begin(), src.end(), e.from);
            auto j = std::find(dst.begin(), dst.end(), e.to);
            if (i != src.end() && j != dst.end()) mat.at(j - dst.begin(), i - src.begin()) ^= 1;
        }
        return (i64)gf2::rank(mat);
    };
    std::vector<i64> grades;
    for (auto& [m, v] : by_m) grades.push_back(m);
    std::map<i64, i64> out;
    for (i64 m : grades) {
        const i64 r = (i64)by_m[m].size() - block(m) - block(m + 1);
        if (r != 0) out[m] = r;
    }
    return out;
}

}  // namespace

void assign_gradings(KnotComplex& c) {
    const std::size_t n = c.generators.size();
    std::vector<std::vector<std::pair<std::size_t, std::pair<i64, i64>>>> adj(n);
    for (const auto& e : c.components) {
        if (c.generators[e.from].spin_class != c.generators[e.to].spin_class)
            throw InconsistentGradings(format_tuple(c.tuple) + ": component joins two spin classes");
        const i64 da = e.nz - e.nw, dm = 1 - 2 * e.nw;
        adj[e.from].push_back({e.to, {-da, -dm}});
        adj[e.to].push_back({e.from, {da, dm}});
    }
    std::vector<bool> seen(n, false);
    std::vector<int> anchored_classes;
    for (std::size_t st = 0; st < n; ++st) {
        if (seen[st]) continue;
        const int cls = c.generators[st].spin_class;
        if (std::find(anchored_classes.begin(), anchored_classes.end(), cls) != anchored_classes.end())
            throw InconsistentGradings(format_tuple(c.tuple) + ": spin class " + std::to_string(cls) +
                                       " is not connected by components");
        anchored_classes.push_back(cls);
        seen[st] = true;
        c.generators[st].alexander = 0;
        c.generators[st].maslov = 0;
        std::vector<std::size_t> stack{st};
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (auto [y, d] : adj[x]) {
                const i64 a = c.generators[x].alexander + d.first, m = c.generators[x].maslov + d.second;
                if (!seen[y]) {
                    seen[y] = true;
                    c.generators[y].alexander = a;
                    c.generators[y].maslov = m;
                    stack.push_back(y);
                } else if (c.generators[y].alexander != a || c.generators[y].maslov != m) {
                    throw InconsistentGradings(format_tuple(c.tuple) + ": relation cycle with nonzero sum");
                }
            }
        }
    }
    if (c.spin_count == 1) {
        i64 lo = c.generators[0].alexander, hi = lo;
        for (const auto& g : c.generators) lo = std::min(lo, g.alexander), hi = std::max(hi, g.alexander);
        if ((lo + hi) % 2 != 0) throw InconsistentGradings(format_tuple(c.tuple) + ": Alexander support has no center");
        for (auto& g : c.generators) g.alexander -= (lo + hi) / 2;
        const auto h = w_free_homology(c, 0);
        if (h.size() != 1 || h.begin()->second != 1)
            throw InconsistentGradings(format_tuple(c.tuple) + ": w-free homology is not one-dimensional");
        const i64 shift = h.begin()->first;
        for (auto& g : c.generators) g.maslov -= shift;
        c.absolute = true;
    } else {
        // Anchor each class at its least-residue generator.
        std::map<int, std::size_t> anchor;
        for (const auto& g : c.generators) {
            auto it = anchor.find(g.spin_class);
            if (it == anchor.end() || c.generators[it->second].residue > g.residue) anchor[g.spin_class] = g.id;
        }
        std::map<int, std::pair<i64, i64>> base;
        for (auto [cls, id] : anchor) base[cls] = {c.generators[id].alexander, c.generators[id].maslov};
        for (auto& g : c.generators) {
            g.alexander -= base[g.spin_class].first;
            g.maslov -= base[g.spin_class].second;
        }
        c.absolute = false;
    }
}

KnotComplex build_complex(const FourTuple& t) {
    const CoverWalk w = build_walk(t);
    KnotComplex c;
    c.tuple = t;
    c.spin_count = spin_structure_count(w);
    c.grading_denominator = c.spin_count == 1 ? 1 : 2 * c.spin_count;
    const Realization r = realize_cover(extend_and_normalize(w));
    std::vector<BigonComponent> immersed;
    for (std::size_t cls = 0; cls < r.walk.lines.size(); ++cls) {
        const i64 h = r.walk.lines[cls];
        const std::size_t base = c.generators.size();
        for (const auto& x : line_crossings(r.walk, h))
            c.generators.push_back({c.generators.size(), x.residue, (int)cls, x.x, x.walk_index, 0, 0});
        for (const auto& b : enumerate_bigons(r, h, base, PipMethod::RayCasting, true))
            (b.embedded ? c.components : immersed).push_back(b.component);
    }
    if ((i64)c.generators.size() != t.p)
        throw ConsistencyError("GeneratorCount", format_tuple(t) + ": " + std::to_string(c.generators.size()) +
                                                     " generators for p = " + std::to_string(t.p));
    assign_gradings(c);
    // Positive immersed domains count exactly when their Maslov index is one.
    bool added = false;
    for (const auto& e : immersed) {
        const auto& x = c.generators[e.from];
        const auto& y = c.generators[e.to];
        if (x.maslov - y.maslov != 1 - 2 * e.nw) continue;
        if (x.alexander - y.alexander != e.nz - e.nw)
            throw InconsistentGradings(format_tuple(t) + ": immersed domain breaks the Alexander relation");
        c.components.push_back(e);
        added = true;
    }
    if (added) assign_gradings(c);
    return c;
}

bool d_squared_zero(const KnotComplex& c) {
    std::map<std::size_t, std::vector<const BigonComponent*>> out;
    for (const auto& e : c.components) out[e.from].push_back(&e);
    std::map<std::tuple<std::size_t, std::size_t, i64, i64>, int> count;
    for (const auto& e : c.components)
        for (const auto* f : out[e.to]) count[{e.from, f->to, e.nw + f->nw, e.nz + f->nz}] ^= 1;
    for (const auto& [k, v] : count)
        if (v) return false;
    return true;
}

i64 euler_characteristic(const KnotComplex& c, int spin_class) {
    i64 chi = 0;
    for (const auto& g : c.generators)
        if (g.spin_class == spin_class) chi += (mod(g.maslov, 2) == 0) ? 1 : -1;
    return chi;
}

std::map<std::pair<int, i64>, i64> hfk_hat(const KnotComplex& c) {
    std::map<std::pair<int, i64>, i64> out;
    for (const auto& g : c.generators) ++out[{g.spin_class, g.alexander}];
    return out;
}

std::map<std::pair<int, i64>, i64> hfk_hat(const FourTuple& t) { return hfk_hat(build_complex(t)); }

Laurent alexander_polynomial(const KnotComplex& c) {
    if (c.spin_count != 1)
        throw AmbientNotS3(format_tuple(c.tuple) + ": " + std::to_string(c.spin_count) + " spin structures");
    Laurent poly;
    i64 total = 0;
    for (const auto& g : c.generators) {
        const i64 sgn = mod(g.maslov, 2) == 0 ? 1 : -1;
        poly[g.alexander] += sgn;
        total += sgn;
    }
    if (total != 1 && total != -1)
        throw InconsistentGradings(format_tuple(c.tuple) + ": Alexander polynomial at 1 is " + std::to_string(total));
    Laurent out;
    for (auto [e, k] : poly)
        if (k != 0) out[e] = k * total;
    return out;
}

Laurent alexander_polynomial(const FourTuple& t) { return alexander_polynomial(build_complex(t)); }

std::string format_laurent(const Laurent& poly) {
    std::string s;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        auto [e, k] = *it;
        const i64 a = k < 0 ? -k : k;
        if (s.empty()) s += k < 0 ? "-" : "";
        else s += k < 0 ? " - " : " + ";
        if (e == 0 || a != 1) s += std::to_string(a);
        if (e == 1) s += "t";
        else if (e != 0) s += "t^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
}

}  // namespace oneone
