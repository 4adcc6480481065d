#include "cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oneone/errors.hpp"
#include "oneone/pipeline.hpp"

namespace oneone::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string format = "text";
    std::string order = "pqrs";
    std::string tuple;
    bool deep = false;
    bool diagnostics = false;
    bool decompose = false;
    i64 max_p = 15;
    std::string ambient = "s3";
    unsigned jobs = 1;
    std::string out_file;
    bool csv = false;
    std::string verdict;
};

bool color_enabled(const std::ostream& out) {
    const char* env = std::getenv("ONEONE_COLOR");
    if (env && std::string(env) == "never") return false;
    return &out == &std::cout && isatty(STDOUT_FILENO);
}

std::string paint(const std::string& text, const char* code, bool on) {
    return on ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
}

json tuple_json(const FourTuple& t) { return json::array({t.p, t.q, t.r, t.s}); }

FourTuple read_tuple(const Options& o) {
    const FourTuple raw = parse_tuple(o.tuple, o.order == "pqsr" ? TupleOrder::PQSR : TupleOrder::PQRS);
    return validate_tuple(raw.p, raw.q, raw.r, raw.s);
}

std::string side_name(int side) { return side == kTop ? "top" : "bottom"; }
std::string dir_name(int dir) { return dir == kUp ? "up" : "down"; }

int cmd_validate(const Options& o, std::ostream& out) {
    const FourTuple t = read_tuple(o);
    const FourTuple m = mirror_tuple(t), c = canonical_rep(t);
    if (o.format == "json") {
        out << json{{"tuple", tuple_json(t)}, {"mirror", tuple_json(m)}, {"canonical", tuple_json(c)}}.dump() << '\n';
    } else {
        out << "valid " << format_tuple(t) << '\n';
        out << "mirror " << format_tuple(m) << '\n';
        out << "canonical " << format_tuple(c) << '\n';
    }
    return 0;
}

int cmd_walk(const Options& o, std::ostream& out) {
    const CoverWalk w = build_walk(read_tuple(o));
    if (o.format == "json") {
        json e = json::array();
        for (const auto& x : w.entries)
            e.push_back({x.pos, x.dir, x.side, x.h});
        out << json{{"tuple", tuple_json(w.tuple)}, {"entries", e}, {"delta_height", w.delta_height}, {"drift", w.drift}}
                   .dump()
            << '\n';
        return 0;
    }
    for (const auto& x : w.entries)
        out << '(' << x.pos << ',' << dir_name(x.dir) << ',' << side_name(x.side) << ',' << x.h << ")\n";
    out << "delta_h " << w.delta_height << '\n' << "drift " << w.drift << '\n';
    return 0;
}

int cmd_census(const Options& o, std::ostream& out) {
    const FourTuple t = read_tuple(o);
    const auto down = downstairs_census(t);
    const auto w = build_walk(t);
    std::optional<std::size_t> cover;
    if (w.delta_height != 0) cover = arc_census(extend_and_normalize(w)).total_inconsistent;
    if (o.format == "json") {
        out << json{{"tuple", tuple_json(t)},
                    {"bottom", {{"right", down.bottom.right.size()}, {"left", down.bottom.left.size()}}},
                    {"top", {{"right", down.top.right.size()}, {"left", down.top.left.size()}}},
                    {"down_inc", down.total_inconsistent()},
                    {"cover_inc", cover ? json(*cover) : json(nullptr)}}
                   .dump()
            << '\n';
        return 0;
    }
    out << "bottom right " << down.bottom.right.size() << " left " << down.bottom.left.size() << '\n';
    out << "top right " << down.top.right.size() << " left " << down.top.left.size() << '\n';
    out << "downstairs inconsistent " << down.total_inconsistent() << '\n';
    if (cover) out << "cover inconsistent " << *cover << '\n';
    else out << "cover inconsistent n/a (delta_h = 0)\n";
    return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const KnotVerdict v = classify(read_tuple(o), o.deep);
    if (o.format == "json") {
        json j{{"tuple", tuple_json(v.tuple)},
               {"verdict", verdict_key(v.verdict)},
               {"delta_h", v.delta_height},
               {"spin", v.spin_count},
               {"down_inc", {v.down_bottom, v.down_top}},
               {"cover_inc", v.cover_inconsistent},
               {"witness", witness_name(v.witness.kind)},
               {"deep", v.deep}};
        json shapes = json::array();
        for (const auto& s : v.shapes)
            shapes.push_back({{"class", s.spin_class},
                              {"shape", shape_name(s.kind)},
                              {"staircase", s.staircase_size},
                              {"recipe", s.recipe},
                              {"dualized", s.dualized}});
        j["shapes"] = shapes;
        out << j.dump() << '\n';
        return 0;
    }
    const bool c = color_enabled(out);
    const char* code = v.verdict == Verdict::LSpace ? "32" : v.verdict == Verdict::Almost ? "33" : "0";
    out << paint(verdict_text(v.verdict), code, c) << '\n';
    if (o.diagnostics || o.deep) {
        out << "delta_h " << v.delta_height << " spin " << v.spin_count << '\n';
        out << "downstairs inconsistent bottom " << v.down_bottom << " top " << v.down_top << '\n';
        out << "cover inconsistent " << v.cover_inconsistent << '\n';
        if (v.verdict == Verdict::Almost) out << "witness " << witness_name(v.witness.kind) << '\n';
        for (const auto& s : v.shapes) {
            out << "class " << s.spin_class << ' ' << shape_name(s.kind) << " staircase " << s.staircase_size;
            if (!s.recipe.empty()) out << " basis " << s.recipe << (s.dualized ? " dual" : "");
            out << '\n';
        }
    }
    return 0;
}

int cmd_hfk(const Options& o, std::ostream& out) {
    const KnotComplex c = build_complex(read_tuple(o));
    std::map<std::tuple<int, i64, i64>, i64> ranks;
    for (const auto& g : c.generators) ++ranks[{g.spin_class, g.alexander, g.maslov}];
    if (o.format == "json") {
        json rows = json::array();
        json by_a = json::object();
        for (auto [k, n] : ranks) {
            rows.push_back({{"class", std::get<0>(k)}, {"A", std::get<1>(k)}, {"M", std::get<2>(k)}, {"rank", n}});
            std::string key = std::to_string(std::get<1>(k));
            if (c.spin_count > 1) key = std::to_string(std::get<0>(k)) + ":" + key;
            by_a[key] = by_a.value(key, 0) + n;
        }
        out << json{{"tuple", tuple_json(c.tuple)},
                    {"spin", c.spin_count},
                    {"absolute", c.absolute},
                    {"total", c.generators.size()},
                    {"ranks", by_a},
                    {"graded", rows}}
                   .dump()
            << '\n';
        return 0;
    }
    if (!c.absolute) out << "gradings relative within each spin class\n";
    for (auto [k, n] : ranks)
        out << "class " << std::get<0>(k) << " A " << std::get<1>(k) << " M " << std::get<2>(k) << " rank " << n << '\n';
    out << "total " << c.generators.size() << '\n';
    return 0;
}

int cmd_alexander(const Options& o, std::ostream& out) {
    const FourTuple t = read_tuple(o);
    const Laurent poly = alexander_polynomial(t);
    if (o.format == "json") {
        json coeffs = json::object();
        for (auto [e, k] : poly) coeffs[std::to_string(e)] = k;
        out << json{{"tuple", tuple_json(t)}, {"polynomial", format_laurent(poly)}, {"coefficients", coeffs}}.dump()
            << '\n';
    } else {
        out << format_laurent(poly) << '\n';
    }
    return 0;
}

int cmd_cfk(const Options& o, std::ostream& out) {
    const KnotComplex c = build_complex(read_tuple(o));
    json classes = json::array();
    for (int cls = 0; cls < (int)c.spin_count; ++cls) {
        const ClassComplex cc = class_complex(c, cls);
        json j{{"class", cls}};
        json gens = json::array(), edges = json::array();
        for (const auto& g : cc.gens)
            gens.push_back({{"residue", g.residue}, {"x", g.x}, {"A", g.alexander}, {"M", g.maslov}});
        for (const auto& e : cc.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"nw", e.nw}, {"nz", e.nz}});
        j["generators"] = gens;
        j["edges"] = edges;
        if (o.decompose) {
            const auto s = analyze_shape(cc);
            j["shape"] = shape_name(s.kind);
            if (s.staircase) j["staircase"] = s.staircase->size();
            if (s.split) {
                json basis = json::array();
                for (const auto& b : s.split->basis) basis.push_back({{"lead", b.lead}, {"terms", b.terms}});
                j["basis"] = basis;
                j["recipe"] = s.split->recipe;
                j["dualized"] = s.split->dualized;
                j["center"] = s.split->center;
            }
        }
        classes.push_back(j);
    }
    if (o.format == "json") {
        out << json{{"tuple", tuple_json(c.tuple)}, {"classes", classes}}.dump() << '\n';
        return 0;
    }
    for (const auto& j : classes) {
        out << "class " << j["class"] << '\n';
        std::size_t i = 0;
        for (const auto& g : j["generators"])
            out << "  x" << i++ << " residue " << g["residue"] << " A " << g["A"] << " M " << g["M"] << '\n';
        for (const auto& e : j["edges"])
            out << "  x" << e["from"] << " -> x" << e["to"] << " nw " << e["nw"] << " nz " << e["nz"] << '\n';
        if (j.contains("shape")) {
            out << "  shape " << j["shape"].get<std::string>();
            if (j.contains("staircase")) out << " staircase " << j["staircase"];
            if (j.contains("recipe")) out << " basis " << j["recipe"].get<std::string>() << (j["dualized"] ? " dual" : "");
            out << '\n';
            if (j.contains("basis"))
                for (const auto& b : j["basis"]) {
                    out << "   ";
                    for (const auto& t : b["terms"]) out << " x" << t;
                    out << " (lead x" << b["lead"] << ")\n";
                }
        }
    }
    return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
    if (o.max_p < 1) throw ConstraintViolation("--max-p must be at least 1");
    auto records = enumerate_tuples(o.max_p, parse_ambient(o.ambient), o.jobs, o.deep);
    if (!o.verdict.empty()) {
        const Verdict want = verdict_from_key(o.verdict);
        std::erase_if(records, [&](const ClassifiedRecord& r) { return r.verdict != want; });
    }
    std::ofstream file;
    std::ostream* dst = &out;
    if (!o.out_file.empty()) {
        file.open(o.out_file);
        if (!file) throw DomainError("IOError", "cannot open " + o.out_file + " for writing");
        dst = &file;
    }
    if (o.csv) {
        write_csv(*dst, records);
    } else if (o.format == "json" || !o.out_file.empty()) {
        write_records(*dst, records);
    } else {
        for (const auto& r : records)
            *dst << format_tuple(r.tuple) << ' ' << verdict_text(r.verdict) << '\n';
    }
    if (!o.out_file.empty()) out << records.size() << " records written to " << o.out_file << '\n';
    return 0;
}

int cmd_table1(const Options& o, std::ostream& out) {
    const auto rep = reproduce_table1(o.max_p, o.jobs);
    if (o.format == "json") {
        json missing = json::array(), extra = json::array(), knots = json::object();
        for (const auto& t : rep.missing) missing.push_back(tuple_json(t));
        for (const auto& t : rep.extra) extra.push_back(tuple_json(t));
        for (const auto& [name, ts] : rep.by_knot) {
            knots[name] = json::array();
            for (const auto& t : ts) knots[name].push_back(tuple_json(t));
        }
        out << json{{"expected", rep.expected}, {"matched", rep.matched}, {"missing", missing}, {"extra", extra},
                    {"knots", knots}}
                   .dump()
            << '\n';
    } else {
        for (const auto& [name, ts] : rep.by_knot) {
            out << name << ':';
            for (const auto& t : ts) out << ' ' << format_tuple(t);
            out << '\n';
        }
        for (const auto& t : rep.missing) out << "missing " << format_tuple(t) << '\n';
        for (const auto& t : rep.extra) out << "extra " << format_tuple(t) << '\n';
        out << rep.matched << '/' << rep.expected << " matched";
        if (!rep.extra.empty()) out << ", " << rep.extra.size() << " extra";
        out << '\n';
    }
    return rep.ok() ? 0 : 3;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knot Floer invariants of (1,1) knots from four-tuples"};
    app.name("oneone");
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--order", o.order, "Field order of tuple arguments (pqsr is nonstandard)")
        ->check(CLI::IsMember({"pqrs", "pqsr"}));
    auto tuple_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("tuple", o.tuple, "p,q,r,s")->required();
        sub->fallthrough();
        return sub;
    };
    auto* validate = tuple_cmd("validate", "Check the tuple constraints");
    auto* walk = tuple_cmd("walk", "Print one closed traversal of the lifted beta curve");
    auto* census = tuple_cmd("census", "Count inconsistent rainbow and cover arcs");
    auto* classify_cmd = tuple_cmd("classify", "L-space / almost L-space verdict");
    classify_cmd->add_flag("--deep", o.deep, "Build the knot complex and check its shape");
    classify_cmd->add_flag("--diagnostics", o.diagnostics, "Print censuses and witnesses");
    auto* hfk = tuple_cmd("hfk", "Knot Floer homology ranks by grading");
    auto* alex = tuple_cmd("alexander", "Symmetrized Alexander polynomial");
    auto* cfk = tuple_cmd("cfk", "Dump the knot complex");
    cfk->add_flag("--dump", "Generators and differential (default)");
    cfk->add_flag("--decompose", o.decompose, "Recognize the shape of each spin class");
    auto* enumerate = app.add_subcommand("enumerate", "Classify every tuple up to a bound");
    enumerate->fallthrough();
    enumerate->add_option("--max-p", o.max_p, "Largest p")->required();
    enumerate->add_option("--ambient", o.ambient, "s3, all or lens:K");
    enumerate->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    enumerate->add_option("--out", o.out_file, "Write JSONL (or CSV) to this file");
    enumerate->add_flag("--csv", o.csv, "CSV instead of JSONL");
    enumerate->add_flag("--deep", o.deep, "Check complex shapes for every record");
    enumerate->add_option("--verdict", o.verdict, "Keep only this verdict")
        ->check(CLI::IsMember({"lspace", "almost", "neither", "disconnected", "not_qhs"}));
    auto* table1 = app.add_subcommand("table1", "Compare the S^3 almost L-space census with the reference table");
    table1->fallthrough();
    table1->add_option("--max-p", o.max_p, "Largest p");
    table1->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (walk->parsed()) return cmd_walk(o, out);
        if (census->parsed()) return cmd_census(o, out);
        if (classify_cmd->parsed()) return cmd_classify(o, out);
        if (hfk->parsed()) return cmd_hfk(o, out);
        if (alex->parsed()) return cmd_alexander(o, out);
        if (cfk->parsed()) return cmd_cfk(o, out);
        if (enumerate->parsed()) return cmd_enumerate(o, out);
        if (table1->parsed()) return cmd_table1(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const ConsistencyError& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace oneone::cli
