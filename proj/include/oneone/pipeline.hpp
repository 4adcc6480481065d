#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oneone/cfk.hpp"
#include "oneone/coherence.hpp"

namespace oneone {

enum class Verdict { LSpace, Almost, Neither, Disconnected, NotQHS };

std::string verdict_key(Verdict v);   // lspace, almost, ...
std::string verdict_text(Verdict v);  // l-space, almost-l-space, ...
Verdict verdict_from_key(const std::string& key);

struct ClassShape {
    int spin_class = 0;
    ShapeKind kind = ShapeKind::Other;
    std::size_t staircase_size = 0;
    std::string recipe;
    bool dualized = false;
};

struct KnotVerdict {
    FourTuple tuple;
    Verdict verdict = Verdict::Neither;
    i64 delta_height = 0;
    i64 spin_count = 1;
    std::size_t down_bottom = 0, down_top = 0;
    std::size_t cover_inconsistent = 0;
    StrongWitness witness;
    std::vector<int> exceptional;  // candidate classes carrying the inconsistent cover arcs
    bool deep = false;
    std::vector<ClassShape> shapes;  // filled when deep
};

// Throws DisconnectedBeta or NotRationalHomologySphere. With deep set, the
// knot complex is built and its shape must agree with the verdict
// (ShapeMismatch otherwise).
KnotVerdict classify(const FourTuple& t, bool deep = false);
std::vector<int> exceptional_classes(const FourTuple& t);

struct ClassifiedRecord {
    FourTuple tuple, canonical;
    std::optional<i64> delta_h;
    i64 spin = 0;
    std::array<std::size_t, 2> down_inc{0, 0};
    std::size_t cover_inc = 0;
    Verdict verdict = Verdict::Neither;
    std::optional<std::map<i64, i64>> hfk;  // Alexander grading -> rank, S^3 only
    std::optional<std::size_t> staircase;
    bool box = false;
    bool operator==(const ClassifiedRecord&) const = default;
};

// Never throws for a valid tuple: domain failures become the verdict.
ClassifiedRecord classify_record(const FourTuple& t, bool deep = false);

struct Ambient {
    enum Kind { S3, Any, Lens } kind = S3;
    i64 order = 1;  // |H_1| for Lens
    bool accepts(const ClassifiedRecord& r) const;
};
Ambient parse_ambient(const std::string& text);

// Records for every valid tuple with p <= max_p that the ambient accepts, in
// lexicographic tuple order regardless of jobs.
std::vector<ClassifiedRecord> enumerate_tuples(i64 max_p, Ambient ambient, unsigned jobs = 1, bool deep = false);

struct Table1Entry {
    FourTuple tuple;
    std::string knot;
};
const std::vector<Table1Entry>& table1_fixture();

struct Table1Report {
    std::size_t expected = 0, matched = 0;
    std::vector<FourTuple> missing, extra;  // canonical representatives
    std::map<std::string, std::vector<FourTuple>> by_knot;
    bool ok() const { return missing.empty() && extra.empty(); }
};
Table1Report reproduce_table1(i64 max_p = 15, unsigned jobs = 1);

std::string record_to_json(const ClassifiedRecord& r);
ClassifiedRecord record_from_json(const std::string& line);
void write_records(std::ostream& out, const std::vector<ClassifiedRecord>& records);
std::vector<ClassifiedRecord> read_records(std::istream& in, const std::string& name = "<stream>");
void write_records(const std::string& path, const std::vector<ClassifiedRecord>& records);
std::vector<ClassifiedRecord> read_records(const std::string& path);
void write_csv(std::ostream& out, const std::vector<ClassifiedRecord>& records);

}  // namespace oneone
