#include "oneone/cfk.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

#include "oneone/errors.hpp"
#include "oneone/gf2.hpp"

namespace oneone {

ClassComplex class_complex(const KnotComplex& c, int spin_class) {
    ClassComplex out;
    out.tuple = c.tuple;
    out.spin_class = spin_class;
    std::map<std::size_t, std::size_t> local;
    for (const auto& g : c.generators)
        if (g.spin_class == spin_class) out.gens.push_back(g);
    std::sort(out.gens.begin(), out.gens.end(),
              [](const Generator& a, const Generator& b) { return a.walk_index < b.walk_index; });
    for (std::size_t i = 0; i < out.gens.size(); ++i) local[out.gens[i].id] = i;
    for (const auto& e : c.components) {
        auto f = local.find(e.from);
        if (f == local.end()) continue;
        out.edges.push_back({f->second, local.at(e.to), e.nw, e.nz});
    }
    return out;
}

ClassComplex dual_complex(const ClassComplex& c) {
    ClassComplex d = c;
    for (auto& g : d.gens) g.alexander = -g.alexander, g.maslov = -g.maslov;
    for (auto& e : d.edges) std::swap(e.from, e.to);
    return d;
}

ClassComplex complex_from_plane(const std::vector<std::pair<i64, i64>>& coords,
                                const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
    const std::size_t n = coords.size();
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
    for (auto [a, b] : arrows) adj[a].push_back({b, -1}), adj[b].push_back({a, 1});
    std::vector<std::optional<i64>> lift(n);
    for (std::size_t st = 0; st < n; ++st) {
        if (lift[st]) continue;
        lift[st] = 0;
        std::vector<std::size_t> stack{st};
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto [y, d] : adj[x]) {
                if (!lift[y]) lift[y] = *lift[x] + d, stack.push_back(y);
                else if (*lift[y] != *lift[x] + d) throw InconsistentGradings("arrows do not fit one grading");
            }
        }
    }
    ClassComplex c;
    for (std::size_t k = 0; k < n; ++k) {
        Generator g;
        g.id = k;
        g.walk_index = k;
        g.x = (i64)k;
        g.alexander = coords[k].second - coords[k].first;
        g.maslov = *lift[k] - 2 * coords[k].first;
        c.gens.push_back(g);
    }
    for (auto [a, b] : arrows) {
        const i64 nw = coords[a].first - coords[b].first, nz = coords[a].second - coords[b].second;
        if (nw < 0 || nz < 0 || nw + nz == 0) throw InconsistentGradings("arrow does not lower the filtration");
        c.edges.push_back({a, b, nw, nz});
    }
    return c;
}

std::vector<i64> lift_gradings(const ClassComplex& c) {
    const std::size_t n = c.size();
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
    for (const auto& e : c.edges) adj[e.from].push_back({e.to, -1}), adj[e.to].push_back({e.from, 1});
    std::vector<std::optional<i64>> g(n);
    for (std::size_t st = 0; st < n; ++st) {
        if (g[st]) continue;
        g[st] = 0;
        std::vector<std::size_t> stack{st};
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto [y, d] : adj[x]) {
                if (!g[y]) g[y] = *g[x] + d, stack.push_back(y);
                else if (*g[y] != *g[x] + d)
                    throw InconsistentGradings(format_tuple(c.tuple) + ": lift grading has a nonzero cycle");
            }
        }
    }
    std::vector<i64> out;
    for (auto& v : g) out.push_back(*v);
    return out;
}

std::vector<i64> left_to_right_numbers(const ClassComplex& c) {
    std::vector<std::size_t> by_x(c.size());
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](auto a, auto b) { return c.gens[a].x < c.gens[b].x; });
    std::vector<i64> num(c.size());
    for (std::size_t i = 0; i < by_x.size(); ++i) num[by_x[i]] = (i64)i + 1;
    return num;
}

namespace {

bool has_edge(const ClassComplex& c, std::size_t from, std::size_t to) {
    for (const auto& e : c.edges)
        if (e.from == from && e.to == to) return true;
    return false;
}

std::vector<std::size_t> extrema(const std::vector<i64>& seq) {
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j + 1 < seq.size(); ++j)
        if ((seq[j] > seq[j - 1]) == (seq[j] > seq[j + 1])) out.push_back(j);
    return out;
}

}  // namespace

std::vector<TurningPoint> turning_points(const ClassComplex& c) {
    const auto num = left_to_right_numbers(c);
    std::vector<TurningPoint> out;
    for (auto j : extrema(num)) {
        int sign = 0;
        if (has_edge(c, j, j - 1)) sign = 1;
        else if (has_edge(c, j - 1, j)) sign = -1;
        out.push_back({j, num[j], sign});
    }
    return out;
}

std::string match_census_pattern(const std::vector<i64>& h) {
    if (h.size() == 3 && h[0] == 1) return "(1,*,*)";
    if (h.size() == 3 && h[2] == 1) return "(*,*,1)";
    if (h.size() == 4 && h[0] == 1 && h[1] == 2) return "(1,2,*,*)";
    if (h.size() == 4 && h[2] == 2 && h[3] == 1) return "(*,*,2,1)";
    return "";
}

MaslovCensus maslov_census(const ClassComplex& c, GradingKind kind) {
    std::vector<i64> g;
    if (kind == GradingKind::Lift) g = lift_gradings(c);
    else
        for (const auto& x : c.gens) g.push_back(x.maslov);
    std::map<i64, i64, std::greater<>> count;
    for (i64 v : g) ++count[v];
    MaslovCensus out;
    if (count.empty()) return out;
    out.top = count.begin()->first;
    i64 expect = out.top;
    for (auto [v, k] : count) {
        if (v != expect) out.consecutive = false;
        expect = v - 1;
        out.counts.push_back(k);
    }
    if (out.consecutive) out.pattern = match_census_pattern(out.counts);
    return out;
}

Truncation truncate_walk(const std::vector<i64>& numbers, const std::vector<int>& directions, std::size_t first,
                         std::size_t last) {
    const std::size_t n = numbers.size();
    if (directions.size() != n) throw TruncationHypothesisViolated("one direction per crossing is required");
    if (first > last || last > n) throw TruncationHypothesisViolated("span is not inside the walk");
    const bool empty = first == last;
    const bool has_a = !empty && first > 0, has_d = !empty && last < n;
    if (has_a && has_d && directions[first - 1] * directions[last] <= 0)
        throw TruncationHypothesisViolated("flanking crossings have opposite signs");
    if (!empty) {
        const std::size_t lo = has_a ? first - 1 : first, hi = has_d ? last : last - 1;
        for (auto j : extrema(numbers))
            if (j < lo || j > hi) throw TruncationHypothesisViolated("turning point outside the truncated span");
    }
    Truncation t;
    for (std::size_t i = 0; i < n; ++i)
        if (i < first || i >= last) t.kept.push_back(numbers[i]);
    t.identified = has_a && has_d;
    // Left of the junction reads a's number, right of it reads d's.
    std::vector<i64> left(numbers.begin(), numbers.begin() + first), right(numbers.begin() + last, numbers.end());
    auto monotone = [](const std::vector<i64>& v) { return extrema(v).empty(); };
    bool graphic = monotone(left) && monotone(right);
    if (empty) graphic = monotone(numbers);
    if (t.identified) {
        const i64 in = left.size() >= 2 ? left[left.size() - 1] - left[left.size() - 2] : 0;
        const i64 out = right.size() >= 2 ? right[1] - right[0] : 0;
        if (in != 0 && out != 0 && (in > 0) != (out > 0)) graphic = false;
    }
    if (!graphic) throw TruncationHypothesisViolated("truncated walk is not graphic");
    std::vector<i64> chain = left;
    chain.insert(chain.end(), right.begin() + (t.identified ? 1 : 0), right.end());
    std::vector<i64> sorted = chain;
    std::sort(sorted.begin(), sorted.end());
    for (auto& v : chain) v = (i64)(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1;
    t.chain = chain;
    return t;
}

std::optional<StaircaseData> recognize_staircase(std::size_t n, const std::vector<BigonComponent>& edges) {
    StaircaseData s;
    if (n == 0) return std::nullopt;
    if (n == 1) {
        if (!edges.empty()) return std::nullopt;
        s.path = {0};
        return s;
    }
    if (n % 2 == 0 || edges.size() != n - 1) return std::nullopt;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].from >= n || edges[k].to >= n || edges[k].from == edges[k].to) return std::nullopt;
        adj[edges[k].from].push_back(k);
        adj[edges[k].to].push_back(k);
    }
    std::vector<std::size_t> ends;
    for (std::size_t v = 0; v < n; ++v) {
        if (adj[v].size() > 2 || adj[v].empty()) return std::nullopt;
        if (adj[v].size() == 1) ends.push_back(v);
        std::size_t outs = 0;
        for (auto k : adj[v]) outs += edges[k].from == v;
        if (outs != 0 && outs != adj[v].size()) return std::nullopt;
    }
    if (ends.size() != 2) return std::nullopt;
    auto walk = [&](std::size_t start, std::vector<std::size_t>& path, std::vector<char>& kinds) {
        path = {start};
        std::size_t prev_edge = edges.size(), cur = start;
        while (true) {
            std::size_t next = edges.size();
            for (auto k : adj[cur])
                if (k != prev_edge) next = k;
            if (next == edges.size()) break;
            const auto& e = edges[next];
            if (e.nw >= 1 && e.nz == 0) kinds.push_back('w');
            else if (e.nw == 0 && e.nz >= 1) kinds.push_back('z');
            else kinds.push_back('?');
            cur = e.from == cur ? e.to : e.from;
            prev_edge = next;
            path.push_back(cur);
            if (path.size() > n) break;
        }
    };
    std::vector<std::size_t> path;
    std::vector<char> kinds;
    walk(ends[0], path, kinds);
    if (path.size() != n) return std::nullopt;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (kinds[i] == '?') return std::nullopt;
        if (i > 0 && kinds[i] == kinds[i - 1]) return std::nullopt;
    }
    if (kinds.front() != 'w') std::reverse(path.begin(), path.end());
    s.path = path;
    s.steps = (n - 1) / 2;
    const bool end_is_sink = edges[adj[path[0]][0]].to == path[0];
    s.sign = end_is_sink ? 1 : -1;
    return s;
}

std::optional<StaircaseData> recognize_staircase(const ClassComplex& c) { return recognize_staircase(c.size(), c.edges); }

std::optional<BoxData> recognize_box(const std::vector<BigonComponent>& edges) {
    if (edges.size() != 4) return std::nullopt;
    for (int sign : {1, -1}) {
        std::vector<BigonComponent> e = edges;
        if (sign < 0)
            for (auto& x : e) std::swap(x.from, x.to);
        std::array<std::size_t, 4> perm{0, 1, 2, 3};
        do {
            const auto [a, b, c, d] = perm;
            std::vector<BigonComponent> want{{d, b, 1, 0}, {d, c, 0, 1}, {b, a, 0, 1}, {c, a, 1, 0}};
            bool all = true;
            for (const auto& w : want)
                if (std::find(e.begin(), e.end(), w) == e.end()) all = false;
            if (all) return BoxData{a, b, c, d, sign};
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

namespace {

const BigonComponent* find_edge(const ClassComplex& c, std::size_t from, std::size_t to) {
    for (const auto& e : c.edges)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

std::vector<std::size_t> in_nbrs(const ClassComplex& c, std::size_t v) {
    std::vector<std::size_t> out;
    for (const auto& e : c.edges)
        if (e.to == v) out.push_back(e.from);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> out_nbrs(const ClassComplex& c, std::size_t v) {
    std::vector<std::size_t> out;
    for (const auto& e : c.edges)
        if (e.from == v) out.push_back(e.to);
    std::sort(out.begin(), out.end());
    return out;
}

bool vertical(const BigonComponent* e) { return e && e->nw == 0 && e->nz >= 1; }
bool horizontal(const BigonComponent* e) { return e && e->nz == 0 && e->nw >= 1; }

// The vertices outside `drop` as a path y1 x1 y2 ... whose odd entries are
// sources and even entries sinks, listed from one end; both ends are tried.
std::vector<std::vector<std::size_t>> source_sink_paths(const ClassComplex& c, const std::set<std::size_t>& drop) {
    const std::size_t n = c.size();
    std::vector<std::vector<std::size_t>> adj(n);
    std::size_t m = 0;
    for (const auto& e : c.edges) {
        if (drop.count(e.from) || drop.count(e.to)) continue;
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
        ++m;
    }
    const std::size_t k = n - drop.size();
    if (k == 0 || m + 1 != k) return {};
    std::vector<std::size_t> ends;
    for (std::size_t v = 0; v < n; ++v) {
        if (drop.count(v)) continue;
        if (adj[v].empty() || adj[v].size() > 2) return {};
        if (adj[v].size() == 1) ends.push_back(v);
    }
    if (ends.size() != 2) return {};
    std::vector<std::vector<std::size_t>> out;
    for (auto start : ends) {
        std::vector<std::size_t> path{start};
        std::size_t prev = n;
        while (path.size() < k) {
            const std::size_t cur = path.back();
            std::size_t next = n;
            for (auto y : adj[cur])
                if (y != prev) next = y;
            if (next == n) break;
            prev = cur;
            path.push_back(next);
        }
        if (path.size() != k) return {};
        bool ok = true;
        for (std::size_t i = 1; i < k; i += 2)
            ok = ok && find_edge(c, path[i], path[i - 1]) && (i + 1 >= k || find_edge(c, path[i], path[i + 1]));
        if (ok) out.push_back(path);
    }
    return out;
}

// path = y1 x1 ... ; x_l at 2l-1, y_l at 2l-2. Horizontal x_l -> y_l and
// vertical x_l -> y_{l+1}, except the vertical step out of x_free.
bool staircase_steps(const ClassComplex& c, const std::vector<std::size_t>& path, std::size_t free) {
    for (std::size_t l = 1; 2 * l - 1 < path.size(); ++l) {
        const std::size_t x = path[2 * l - 1];
        if (!horizontal(find_edge(c, x, path[2 * l - 2]))) return false;
        if (l != free && !vertical(find_edge(c, x, path[2 * l]))) return false;
    }
    return true;
}

char almost_positive(const ClassComplex& c) {
    const std::size_t n = c.size();
    if (n >= 7 && n % 4 == 3 && c.edges.size() == n + 1) {
        const std::size_t k = (n - 3) / 4;
        for (std::size_t z = 0; z < n; ++z) {
            if (!out_nbrs(c, z).empty() || in_nbrs(c, z).size() != 2) continue;
            const auto ins = in_nbrs(c, z);
            for (int flip = 0; flip < 2; ++flip) {
                const std::size_t u = ins[flip], v = ins[1 - flip];  // y_{k+1}, y'_{k+1}
                if (!vertical(find_edge(c, u, z)) || !horizontal(find_edge(c, v, z))) continue;
                for (const auto& path : source_sink_paths(c, {z, v})) {
                    if (path[2 * k] != u || !staircase_steps(c, path, k)) continue;
                    const std::size_t xk = path[2 * k - 1], xk1 = path[2 * k + 1];
                    if (in_nbrs(c, v) != std::vector<std::size_t>{std::min(xk, xk1), std::max(xk, xk1)}) continue;
                    if (!vertical(find_edge(c, xk, v))) continue;
                    return 'a';
                }
            }
        }
    }
    if (n >= 9 && n % 4 == 1 && c.edges.size() == n + 1) {
        const std::size_t k = (n - 5) / 4;
        for (std::size_t z = 0; z < n; ++z) {
            if (!in_nbrs(c, z).empty() || out_nbrs(c, z).size() != 2) continue;
            const auto outs = out_nbrs(c, z);
            for (int flip = 0; flip < 2; ++flip) {
                const std::size_t u = outs[flip], v = outs[1 - flip];  // x_{k+1}, x'_{k+1}
                if (!vertical(find_edge(c, z, u)) || !horizontal(find_edge(c, z, v))) continue;
                for (const auto& path : source_sink_paths(c, {z, v})) {
                    if (path[2 * k + 1] != u || !staircase_steps(c, path, k + 1)) continue;
                    const std::size_t y1 = path[2 * k], y2 = path[2 * k + 2];
                    if (out_nbrs(c, v) != std::vector<std::size_t>{std::min(y1, y2), std::max(y1, y2)}) continue;
                    if (!vertical(find_edge(c, v, y2))) continue;
                    return 'b';
                }
            }
        }
    }
    return 0;
}

}  // namespace

char recognize_almost_staircase(const ClassComplex& c) {
    if (char k = almost_positive(c)) return k;
    return almost_positive(dual_complex(c));
}

namespace {

using gf2::Vec;

struct Frame {
    const ClassComplex& c;
    std::vector<std::vector<std::size_t>> out;
    explicit Frame(const ClassComplex& cc) : c(cc), out(cc.size()) {
        for (const auto& e : cc.edges) out[e.from].push_back(e.to);
    }
    std::size_t n() const { return c.size(); }
    Vec boundary(const Vec& v) const {
        Vec d(n(), 0);
        for (std::size_t x = 0; x < n(); ++x)
            if (v[x])
                for (auto y : out[x]) d[y] ^= 1;
        return d;
    }
    Vec boundary(const BasisElement& b) const { return boundary(indicator(b)); }
    Vec indicator(const BasisElement& b) const {
        Vec v(n(), 0);
        for (auto x : b.terms) v[x] = 1;
        return v;
    }
    i64 A(std::size_t x) const { return c.gens[x].alexander; }
    i64 M(std::size_t x) const { return c.gens[x].maslov; }
    // x sits at or below the level of `at` once shifted to its grading.
    bool below(std::size_t x, std::size_t at) const {
        const i64 dm = M(x) - M(at);
        if (dm % 2 != 0 || dm < 0) return false;
        return A(x) - dm / 2 <= A(at);
    }
    bool filtered(const BasisElement& b) const {
        for (auto x : b.terms)
            if (!below(x, b.lead)) return false;
        return true;
    }
    std::optional<Vec> express(const std::vector<BasisElement>& basis, const Vec& v) const {
        gf2::Matrix m(n(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (auto x : basis[i].terms) m.at(x, i) = 1;
        return gf2::solve(m, v);
    }
};

std::vector<std::size_t> support(const Vec& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) out.push_back(i);
    return out;
}

std::optional<std::size_t> lead_of(const Frame& f, const std::vector<std::size_t>& terms) {
    for (auto l : terms)
        if (f.filtered({l, terms})) return l;
    return std::nullopt;
}

BasisElement single(std::size_t x) { return {x, {x}}; }

BasisElement sum_of(std::size_t lead, std::vector<std::size_t> terms) {
    std::sort(terms.begin(), terms.end());
    return {lead, terms};
}

// Corrects each q by box elements so that the span of the corrected q's is a subcomplex.
std::optional<std::vector<BasisElement>> solve_complement(const Frame& f, const std::vector<BasisElement>& box,
                                                          const std::vector<std::size_t>& Q) {
    std::vector<BasisElement> base = box;
    for (auto q : Q) base.push_back(single(q));
    const std::size_t nq = Q.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> var;
    for (std::size_t qi = 0; qi < nq; ++qi)
        for (std::size_t bi = 0; bi < 4; ++bi) {
            const i64 dm = f.M(box[bi].lead) - f.M(Q[qi]);
            if (dm % 2 != 0 || dm < 0) continue;
            if (f.A(box[bi].lead) - dm / 2 > f.A(Q[qi])) continue;
            var.emplace(std::make_pair(qi, bi), var.size());
        }
    std::vector<Vec> alpha(nq), boxd(4);
    for (std::size_t qi = 0; qi < nq; ++qi) {
        Vec d(f.n(), 0);
        for (auto y : f.out[Q[qi]]) d[y] ^= 1;
        auto sol = f.express(base, d);
        if (!sol) return std::nullopt;
        alpha[qi] = *sol;
    }
    for (std::size_t bi = 0; bi < 4; ++bi) {
        auto sol = f.express(base, f.boundary(box[bi]));
        if (!sol) return std::nullopt;
        for (std::size_t k = 4; k < sol->size(); ++k)
            if ((*sol)[k]) return std::nullopt;
        boxd[bi] = *sol;
    }
    gf2::Matrix m(nq * 4, var.size());
    Vec rhs(nq * 4, 0);
    for (std::size_t qi = 0; qi < nq; ++qi)
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t row = qi * 4 + b;
            for (std::size_t ri = 0; ri < nq; ++ri) {
                auto it = var.find({ri, b});
                if (alpha[qi][4 + ri] && it != var.end()) m.at(row, it->second) ^= 1;
            }
            for (std::size_t b2 = 0; b2 < 4; ++b2) {
                auto it = var.find({qi, b2});
                if (it != var.end() && boxd[b2][b]) m.at(row, it->second) ^= 1;
            }
            rhs[row] = alpha[qi][b];
        }
    auto sol = gf2::solve(m, rhs);
    if (!sol) return std::nullopt;
    std::vector<BasisElement> comp;
    for (std::size_t qi = 0; qi < nq; ++qi) {
        Vec t(f.n(), 0);
        t[Q[qi]] = 1;
        for (std::size_t b = 0; b < 4; ++b) {
            auto it = var.find({qi, b});
            if (it != var.end() && (*sol)[it->second])
                for (auto x : box[b].terms) t[x] ^= 1;
        }
        auto terms = support(t);
        auto lead = t[Q[qi]] ? std::optional(Q[qi]) : lead_of(f, terms);
        if (!lead) return std::nullopt;
        comp.push_back({*lead, terms});
    }
    return comp;
}

std::optional<SplitResult> verify(const ClassComplex& c, const std::vector<BasisElement>& box,
                                  const std::vector<BasisElement>& rest) {
    const Frame f(c);
    const std::size_t n = f.n();
    if (box.size() != 4 || box.size() + rest.size() != n) return std::nullopt;
    std::vector<BasisElement> nb = box;
    nb.insert(nb.end(), rest.begin(), rest.end());
    for (const auto& b : nb)
        if (std::find(b.terms.begin(), b.terms.end(), b.lead) == b.terms.end() || !f.filtered(b)) return std::nullopt;
    gf2::Matrix T(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto x : nb[i].terms) T.at(i, x) = 1;
    auto Tinv = gf2::inverse(T);
    if (!Tinv) return std::nullopt;
    // old_x = sum_i Tinv[x][i] new_i must be filtered too.
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < n; ++i)
            if (Tinv->at(x, i) && !f.below(nb[i].lead, x)) return std::nullopt;
    std::vector<BigonComponent> edges;
    for (std::size_t e = 0; e < n; ++e) {
        const Vec d = f.boundary(nb[e]);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t coef = 0;
            for (std::size_t x = 0; x < n; ++x) coef ^= d[x] & Tinv->at(x, i);
            if (!coef) continue;
            const i64 m2 = f.M(nb[i].lead) - f.M(nb[e].lead) + 1;
            if (m2 % 2 != 0) return std::nullopt;
            const i64 m = m2 / 2, nz = f.A(nb[e].lead) - f.A(nb[i].lead) + m;
            if (m < 0 || nz < 0 || m + nz == 0) return std::nullopt;
            edges.push_back({e, i, m, nz});
        }
    }
    SplitResult r;
    r.basis = nb;
    for (const auto& e : edges) {
        if ((e.from < 4) != (e.to < 4)) return std::nullopt;
        if (e.from < 4) r.box_edges.push_back(e);
        else r.stair_edges.push_back({e.from - 4, e.to - 4, e.nw, e.nz});
    }
    auto bx = recognize_box(r.box_edges);
    if (!bx) return std::nullopt;
    auto st = recognize_staircase(rest.size(), r.stair_edges);
    if (!st) return std::nullopt;
    r.box = *bx;
    r.staircase = *st;
    for (auto& e : r.stair_edges) e.from += 4, e.to += 4;
    return r;
}

// The explicit candidate bases around a center at walk position ci.
std::optional<std::pair<SplitResult, std::vector<BasisElement>>> recipe_at(const ClassComplex& c, std::size_t ci) {
    const Frame f(c);
    const long n = (long)c.size();
    auto at = [&](long i) -> std::optional<std::size_t> {
        if (i < 0 || i >= n) return std::nullopt;
        return (std::size_t)i;
    };
    const long pos = (long)ci;
    auto P1 = at(pos - 1), P2 = at(pos - 2), P3 = at(pos - 3);
    auto S1 = at(pos + 1), S2 = at(pos + 2), S3 = at(pos + 3);
    if (!P1 || !S1) return std::nullopt;
    std::vector<std::vector<std::size_t>> bopts{{*S1}}, copts{{*P1}};
    if (P3) bopts.push_back({*S1, *P3});
    if (S3) copts.push_back({*P1, *S3});
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> dopts;
    if (P2 && S2) dopts = {{*P2, {*P2, *S2}}, {*S2, {*P2, *S2}}};
    if (P2) dopts.push_back({*P2, {*P2}});
    if (S2) dopts.push_back({*S2, {*S2}});
    for (const auto& bt : bopts)
        for (const auto& ct : copts)
            for (const auto& [dl, dt] : dopts) {
                std::vector<BasisElement> box{single(ci), sum_of(*S1, bt), sum_of(*P1, ct), sum_of(dl, dt)};
                if (!f.filtered(box[1]) || !f.filtered(box[2]) || !f.filtered(box[3])) continue;
                std::set<std::size_t> used{ci, *S1, *P1, dl};
                std::vector<std::size_t> Q;
                for (std::size_t x = 0; x < c.size(); ++x)
                    if (!used.count(x)) Q.push_back(x);
                auto comp = solve_complement(f, box, Q);
                if (!comp) continue;
                auto r = verify(c, box, *comp);
                if (!r) continue;
                std::string d = dt.size() == 2 ? "d+e" : "d";
                std::string label;
                if (bt.size() == 1 && ct.size() == 1) label = "{a,b,c," + d + "}";
                else if (bt.size() == 2 && ct.size() == 2) label = "{a,b+g,c+f," + d + "}";
                else if (bt.size() == 1) label = "{a,b,f+c," + d + "}";
                else label = "{a,b+g,c," + d + "}";
                r->recipe = label;
                r->center = ci;
                std::vector<BasisElement> all = box;
                all.insert(all.end(), comp->begin(), comp->end());
                return std::make_pair(*r, all);
            }
    return std::nullopt;
}

// Splits c by applying the recipe to its dual and transporting the basis back.
std::optional<SplitResult> recipe_dual(const ClassComplex& c, std::size_t ci) {
    const ClassComplex d = dual_complex(c);
    auto r = recipe_at(d, ci);
    if (!r) return std::nullopt;
    const auto& nb = r->second;
    const std::size_t n = c.size();
    gf2::Matrix T(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto x : nb[i].terms) T.at(i, x) = 1;
    auto Tinv = gf2::inverse(T);
    if (!Tinv) return std::nullopt;
    const Frame f(c);
    std::vector<BasisElement> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> terms;
        for (std::size_t x = 0; x < n; ++x)
            if (Tinv->at(x, i)) terms.push_back(x);
        auto lead = lead_of(f, terms);
        if (!lead) return std::nullopt;
        out.push_back({*lead, terms});
    }
    auto res = verify(c, {out.begin(), out.begin() + 4}, {out.begin() + 4, out.end()});
    if (!res) return std::nullopt;
    res->recipe = r->first.recipe;
    res->center = ci;
    res->dualized = true;
    return res;
}

}  // namespace

std::optional<SplitResult> verify_split(const ClassComplex& c, const std::vector<BasisElement>& box,
                                        const std::vector<BasisElement>& rest) {
    return verify(c, box, rest);
}

SplitResult decompose_staircase_plus_box(const ClassComplex& c) {
    const std::string who = format_tuple(c.tuple) + " class " + std::to_string(c.spin_class);
    if (c.size() < 5) throw DecompositionFailed(who + ": fewer than five generators");
    const auto G = lift_gradings(c);
    const auto [lo, hi] = std::minmax_element(G.begin(), G.end());
    std::vector<std::size_t> centers;
    for (i64 m : {*lo, *hi}) {
        if (std::count(G.begin(), G.end(), m) != 1) continue;
        const std::size_t a = (std::size_t)(std::find(G.begin(), G.end(), m) - G.begin());
        if (std::find(centers.begin(), centers.end(), a) == centers.end()) centers.push_back(a);
    }
    for (auto a : centers) {
        const bool source = !out_nbrs(c, a).empty();
        for (int attempt = 0; attempt < 2; ++attempt) {
            const bool dual = (attempt == 0) != source;
            if (!dual) {
                if (auto r = recipe_at(c, a)) return r->first;
            } else if (auto r = recipe_dual(c, a)) {
                return *r;
            }
        }
    }
    throw DecompositionFailed(who + ": no staircase plus box basis found");
}

std::optional<SplitResult> brute_force_split(const ClassComplex& c, std::size_t max_size) {
    const std::size_t n = c.size();
    if (n > max_size || n > 20) throw DomainError("TooLarge", "exhaustive split search limited to " +
                                                                  std::to_string(std::min<std::size_t>(max_size, 20)) +
                                                                  " generators");
    if (n < 5) return std::nullopt;
    const Frame f(c);
    using Mask = std::uint32_t;
    std::vector<Mask> out(n, 0);
    for (const auto& e : c.edges) out[e.from] ^= Mask(1) << e.to;
    auto boundary = [&](Mask m) {
        Mask d = 0;
        for (std::size_t x = 0; x < n; ++x)
            if (m >> x & 1) d ^= out[x];
        return d;
    };
    auto terms_of = [&](Mask m) {
        std::vector<std::size_t> t;
        for (std::size_t x = 0; x < n; ++x)
            if (m >> x & 1) t.push_back(x);
        return t;
    };
    const Mask total = Mask(1) << n;
    std::vector<int> lead(total, -1);
    std::vector<Mask> elems;
    for (Mask m = 1; m < total; ++m)
        if (auto l = lead_of(f, terms_of(m))) lead[m] = (int)*l, elems.push_back(m);
    for (Mask d : elems) {
        const Mask dd = boundary(d);
        if (!dd) continue;
        for (Mask b : elems) {
            const Mask cm = dd ^ b;
            if (!cm || lead[cm] < 0) continue;
            const Mask a = boundary(b);
            if (!a || boundary(cm) != a || lead[a] < 0) continue;
            const std::set<int> leads{lead[a], lead[b], lead[cm], lead[d]};
            if (leads.size() < 4) continue;
            std::vector<BasisElement> box{{(std::size_t)lead[a], terms_of(a)},
                                          {(std::size_t)lead[b], terms_of(b)},
                                          {(std::size_t)lead[cm], terms_of(cm)},
                                          {(std::size_t)lead[d], terms_of(d)}};
            std::vector<std::size_t> Q;
            for (std::size_t x = 0; x < n; ++x)
                if (!leads.count((int)x)) Q.push_back(x);
            auto comp = solve_complement(f, box, Q);
            if (!comp) continue;
            if (auto r = verify(c, box, *comp)) {
                r->recipe = "exhaustive";
                r->center = box[0].lead;
                return r;
            }
        }
    }
    return std::nullopt;
}

ShapeVerdict analyze_shape(const ClassComplex& c) {
    ShapeVerdict v;
    if (auto s = recognize_staircase(c)) {
        v.kind = ShapeKind::Staircase;
        v.staircase = s;
        return v;
    }
    try {
        auto r = decompose_staircase_plus_box(c);
        v.kind = ShapeKind::StaircasePlusBox;
        v.staircase = r.staircase;
        v.split = r;
        return v;
    } catch (const DecompositionFailed& e) {
        v.diagnostics = e.what();
    }
    if (char k = recognize_almost_staircase(c)) {
        v.kind = ShapeKind::AlmostStaircase;
        v.almost = k;
        return v;
    }
    v.kind = ShapeKind::Other;
    return v;
}

std::string shape_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::Staircase: return "staircase";
        case ShapeKind::StaircasePlusBox: return "staircase+box";
        case ShapeKind::AlmostStaircase: return "almost-staircase";
        case ShapeKind::Other: return "other";
    }
    return "other";
}

}  // namespace oneone
