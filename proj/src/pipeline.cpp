#include "oneone/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oneone/errors.hpp"

namespace oneone {

using nlohmann::json;

std::string verdict_key(Verdict v) {
    switch (v) {
        case Verdict::LSpace: return "lspace";
        case Verdict::Almost: return "almost";
        case Verdict::Neither: return "neither";
        case Verdict::Disconnected: return "disconnected";
        case Verdict::NotQHS: return "not_qhs";
    }
    return "neither";
}

std::string verdict_text(Verdict v) {
    switch (v) {
        case Verdict::LSpace: return "l-space";
        case Verdict::Almost: return "almost-l-space";
        case Verdict::Neither: return "neither";
        case Verdict::Disconnected: return "disconnected";
        case Verdict::NotQHS: return "not-qhs";
    }
    return "neither";
}

Verdict verdict_from_key(const std::string& key) {
    for (Verdict v : {Verdict::LSpace, Verdict::Almost, Verdict::Neither, Verdict::Disconnected, Verdict::NotQHS})
        if (verdict_key(v) == key) return v;
    throw ParseError("unknown verdict \"" + key + "\"");
}

std::vector<int> exceptional_classes(const FourTuple& t) {
    const auto w = extend_and_normalize(build_walk(t));
    const auto census = arc_census(w);
    std::set<int> out;
    for (const auto& set : census.inconsistent_sets()) {
        if (set.empty()) continue;
        const i64 line = census.arcs[set[0]].line;
        bool same = true;
        for (auto i : set) same = same && census.arcs[i].line == line;
        if (same) out.insert(class_of_line(w, line));
    }
    return {out.begin(), out.end()};
}

namespace {

void check_shapes(KnotVerdict& v) {
    const KnotComplex c = build_complex(v.tuple);
    if (!d_squared_zero(c)) throw ShapeMismatch(format_tuple(v.tuple) + ": differential does not square to zero");
    std::size_t stairs = 0;
    std::vector<int> boxed;
    for (int cls = 0; cls < (int)c.spin_count; ++cls) {
        const auto cc = class_complex(c, cls);
        const auto s = analyze_shape(cc);
        ClassShape shape{cls, s.kind, s.staircase ? s.staircase->size() : 0, "", false};
        if (s.split) shape.recipe = s.split->recipe, shape.dualized = s.split->dualized;
        if (s.kind == ShapeKind::Staircase) ++stairs;
        if (s.kind == ShapeKind::StaircasePlusBox) boxed.push_back(cls);
        if (s.kind == ShapeKind::AlmostStaircase)
            throw ShapeMismatch(format_tuple(v.tuple) + ": class " + std::to_string(cls) + " is an almost staircase");
        v.shapes.push_back(shape);
    }
    const std::size_t k = (std::size_t)c.spin_count;
    const bool all_stairs = stairs == k;
    const bool one_box = boxed.size() == 1 && stairs + 1 == k;
    const std::string who = format_tuple(v.tuple);
    switch (v.verdict) {
        case Verdict::LSpace:
            if (!all_stairs) throw ShapeMismatch(who + ": coherent but some class is not a staircase");
            break;
        case Verdict::Almost:
            if (!one_box) throw ShapeMismatch(who + ": strongly almost coherent without a staircase plus box");
            if (std::find(v.exceptional.begin(), v.exceptional.end(), boxed[0]) == v.exceptional.end())
                throw ShapeMismatch(who + ": box found in class " + std::to_string(boxed[0]) +
                                    ", away from the inconsistent arcs");
            break;
        default:
            if (all_stairs || one_box) throw ShapeMismatch(who + ": verdict neither but the complex has a rigid shape");
    }
}

}  // namespace

KnotVerdict classify(const FourTuple& t, bool deep) {
    KnotVerdict v;
    v.tuple = t;
    const CoverWalk w = build_walk(t);
    v.delta_height = w.delta_height;
    v.spin_count = spin_structure_count(w);
    const auto down = downstairs_census(t);
    v.down_bottom = down.bottom.inconsistent();
    v.down_top = down.top.inconsistent();
    v.cover_inconsistent = arc_census(extend_and_normalize(w)).total_inconsistent;
    if (down.total_inconsistent() == 0) {
        v.verdict = Verdict::LSpace;
    } else {
        auto [strong, witness] = is_strongly_almost_coherent(t);
        v.witness = witness;
        v.verdict = strong ? Verdict::Almost : Verdict::Neither;
    }
    if (v.cover_inconsistent == 2) v.exceptional = exceptional_classes(t);
    if (deep) {
        v.deep = true;
        check_shapes(v);
    }
    return v;
}

ClassifiedRecord classify_record(const FourTuple& t, bool deep) {
    ClassifiedRecord r;
    r.tuple = t;
    r.canonical = canonical_rep(t);
    KnotVerdict v;
    try {
        v = classify(t, deep);
    } catch (const DisconnectedBeta&) {
        r.verdict = Verdict::Disconnected;
        return r;
    } catch (const NotRationalHomologySphere&) {
        r.verdict = Verdict::NotQHS;
        r.delta_h = 0;
        const auto down = downstairs_census(t);
        r.down_inc = {down.bottom.inconsistent(), down.top.inconsistent()};
        return r;
    }
    r.delta_h = v.delta_height;
    r.spin = v.spin_count;
    r.down_inc = {v.down_bottom, v.down_top};
    r.cover_inc = v.cover_inconsistent;
    r.verdict = v.verdict;
    if (v.spin_count == 1) {
        std::map<i64, i64> h;
        for (auto [key, rank] : hfk_hat(t)) h[key.second] += rank;
        r.hfk = h;
    }
    if (deep) {
        for (const auto& s : v.shapes) {
            if (v.verdict == Verdict::LSpace && s.spin_class == 0) r.staircase = s.staircase_size;
            if (v.verdict == Verdict::Almost && s.kind == ShapeKind::StaircasePlusBox) {
                r.staircase = s.staircase_size;
                r.box = true;
            }
        }
    }
    return r;
}

bool Ambient::accepts(const ClassifiedRecord& r) const {
    switch (kind) {
        case Any: return true;
        case S3: return r.delta_h && (*r.delta_h == 1 || *r.delta_h == -1);
        case Lens: return r.delta_h && (*r.delta_h == order || *r.delta_h == -order);
    }
    return false;
}

Ambient parse_ambient(const std::string& text) {
    if (text == "s3") return {Ambient::S3, 1};
    if (text == "all") return {Ambient::Any, 0};
    if (text.rfind("lens:", 0) == 0) {
        const auto v = parse_numbers(text.substr(5));
        if (v.size() == 1 && v[0] >= 1) return {Ambient::Lens, v[0]};
    }
    throw ParseError("ambient must be s3, all or lens:K, got \"" + text + "\"");
}

std::vector<ClassifiedRecord> enumerate_tuples(i64 max_p, Ambient ambient, unsigned jobs, bool deep) {
    std::vector<FourTuple> all;
    for (i64 p = 1; p <= max_p; ++p)
        for (const auto& t : tuples_with_p(p)) all.push_back(t);
    std::vector<std::optional<ClassifiedRecord>> slots(all.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < all.size();) {
            try {
                auto r = classify_record(all[i], deep);
                if (ambient.accepts(r)) slots[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = all.size();
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<ClassifiedRecord> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

const std::vector<Table1Entry>& table1_fixture() {
    static const std::vector<Table1Entry> rows{
        {{5, 2, 0, 1}, "4_1"},       {{5, 2, 0, 4}, "4_1"},        {{7, 2, 0, 3}, "5_2"},
        {{7, 2, 0, 4}, "5_2"},       {{7, 3, 0, 1}, "5_2"},        {{7, 3, 0, 2}, "5_2"},
        {{7, 3, 0, 5}, "5_2"},       {{7, 3, 0, 6}, "5_2"},        {{11, 3, 1, 4}, "10_139"},
        {{13, 4, 1, 7}, "12n_725"},  {{15, 3, 1, 4}, "16n_792631"}, {{15, 4, 2, 5}, "16n_792631"},
    };
    return rows;
}

Table1Report reproduce_table1(i64 max_p, unsigned jobs) {
    Table1Report rep;
    std::set<FourTuple> expected, found;
    std::map<FourTuple, std::string> names;
    for (const auto& e : table1_fixture()) {
        if (e.tuple.p > max_p) continue;
        expected.insert(canonical_rep(e.tuple));
        names[canonical_rep(e.tuple)] = e.knot;
    }
    for (const auto& r : enumerate_tuples(max_p, {Ambient::S3, 1}, jobs))
        if (r.verdict == Verdict::Almost) found.insert(r.canonical);
    rep.expected = expected.size();
    for (const auto& t : expected) {
        if (found.count(t)) {
            ++rep.matched;
            rep.by_knot[names[t]].push_back(t);
        } else {
            rep.missing.push_back(t);
        }
    }
    for (const auto& t : found)
        if (!expected.count(t)) rep.extra.push_back(t);
    return rep;
}

namespace {

json tuple_json(const FourTuple& t) { return json::array({t.p, t.q, t.r, t.s}); }

FourTuple tuple_from(const json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("tuple must be an array of four integers");
    return {j[0].get<i64>(), j[1].get<i64>(), j[2].get<i64>(), j[3].get<i64>()};
}

constexpr const char* kHeader = "# oneone records v1";

}  // namespace

std::string record_to_json(const ClassifiedRecord& r) {
    json j;
    j["v"] = 1;
    j["tuple"] = tuple_json(r.tuple);
    j["canonical"] = tuple_json(r.canonical);
    j["delta_h"] = r.delta_h ? json(*r.delta_h) : json(nullptr);
    j["spin"] = r.spin;
    j["down_inc"] = json::array({r.down_inc[0], r.down_inc[1]});
    j["cover_inc"] = r.cover_inc;
    j["verdict"] = verdict_key(r.verdict);
    if (r.hfk) {
        json h = json::object();
        for (auto [a, rank] : *r.hfk) h[std::to_string(a)] = rank;
        j["hfk"] = h;
    } else {
        j["hfk"] = nullptr;
    }
    j["staircase"] = r.staircase ? json(*r.staircase) : json(nullptr);
    j["box"] = r.box;
    return j.dump();
}

ClassifiedRecord record_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        if (j.at("v").get<int>() != 1) throw ParseError("unsupported record version");
        ClassifiedRecord r;
        r.tuple = tuple_from(j.at("tuple"));
        r.canonical = tuple_from(j.at("canonical"));
        if (!j.at("delta_h").is_null()) r.delta_h = j["delta_h"].get<i64>();
        r.spin = j.at("spin").get<i64>();
        r.down_inc = {j.at("down_inc").at(0).get<std::size_t>(), j["down_inc"].at(1).get<std::size_t>()};
        r.cover_inc = j.at("cover_inc").get<std::size_t>();
        r.verdict = verdict_from_key(j.at("verdict").get<std::string>());
        if (!j.at("hfk").is_null()) {
            std::map<i64, i64> h;
            for (auto& [k, v] : j["hfk"].items()) h[std::stoll(k)] = v.get<i64>();
            r.hfk = h;
        }
        if (!j.at("staircase").is_null()) r.staircase = j["staircase"].get<std::size_t>();
        r.box = j.at("box").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad record field: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ParseError("bad Alexander grading key");
    }
}

void write_records(std::ostream& out, const std::vector<ClassifiedRecord>& records) {
    out << kHeader << '\n';
    for (const auto& r : records) out << record_to_json(r) << '\n';
}

std::vector<ClassifiedRecord> read_records(std::istream& in, const std::string& name) {
    std::vector<ClassifiedRecord> out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(record_from_json(line));
        } catch (const ParseError& e) {
            throw ParseError(name + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

void write_records(const std::string& path, const std::vector<ClassifiedRecord>& records) {
    std::ofstream f(path);
    if (!f) throw DomainError("IOError", "cannot open " + path + " for writing");
    write_records(f, records);
    if (!f) throw DomainError("IOError", "write to " + path + " failed");
}

std::vector<ClassifiedRecord> read_records(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("IOError", "cannot open " + path);
    return read_records(f, path);
}

void write_csv(std::ostream& out, const std::vector<ClassifiedRecord>& records) {
    auto tup = [](const FourTuple& t) { return "\"" + format_tuple(t) + "\""; };
    out << "v,tuple,canonical,delta_h,spin,down_inc,cover_inc,verdict,hfk,staircase,box\n";
    for (const auto& r : records) {
        out << 1 << ',' << tup(r.tuple) << ',' << tup(r.canonical) << ',';
        if (r.delta_h) out << *r.delta_h;
        out << ',' << r.spin << ",\"" << r.down_inc[0] << ',' << r.down_inc[1] << "\"," << r.cover_inc << ','
            << verdict_key(r.verdict) << ',';
        if (r.hfk) {
            std::string s;
            for (auto [a, rank] : *r.hfk) s += (s.empty() ? "" : ";") + std::to_string(a) + ":" + std::to_string(rank);
            out << s;
        }
        out << ',';
        if (r.staircase) out << *r.staircase;
        out << ',' << (r.box ? "true" : "false") << '\n';
    }
}

}  // namespace oneone
