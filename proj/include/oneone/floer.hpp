#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oneone/cover.hpp"

namespace oneone {

struct Point {
    Rational x, y;
    bool operator==(const Point&) const = default;
};
using Polygon = std::vector<Point>;

// Exact planar drawing of the extended lift. points[index_of_entry[i]] is
// where walk entry i sits; the polyline runs through all points in order.
struct Realization {
    ExtendedWalk walk;
    std::vector<Point> points;
    std::vector<std::size_t> index_of_entry;
    Rational offset;  // basepoint distance from its edge, in strip units
};

struct BasepointLift {
    Point at;
    bool is_w = true;
};

Realization realize_cover(const ExtendedWalk& w);
// All w and z lifts inside the closed box [x0,x1] x [y0,y1].
std::vector<BasepointLift> basepoints_in_box(const Realization& r, const Rational& x0, const Rational& x1,
                                             const Rational& y0, const Rational& y1);

enum class PipMethod { RayCasting, WindingNumber };
bool on_boundary(const Polygon& poly, const Point& pt);
bool point_in_polygon(const Polygon& poly, const Point& pt, PipMethod method);
Rational signed_area2(const Polygon& poly);

struct Generator {
    std::size_t id = 0;
    i64 residue = 0;
    int spin_class = 0;
    i64 x = 0;
    std::size_t walk_index = 0;
    i64 alexander = 0;
    i64 maslov = 0;
};

struct BigonComponent {
    std::size_t from = 0, to = 0;
    i64 nw = 0, nz = 0;
    bool operator==(const BigonComponent&) const = default;
};

struct Bigon {
    BigonComponent component;
    Polygon boundary;
    bool embedded = true;
};

// Bigons between crossings of line h, generator ids offset by id_base
// (crossings numbered in walk order). With immersed set, also the positive
// domains whose beta arc crosses its own alpha segment; these still need a
// Maslov index check before they count.
std::vector<Bigon> enumerate_bigons(const Realization& r, i64 h, std::size_t id_base,
                                    PipMethod method = PipMethod::RayCasting, bool immersed = false);
std::pair<i64, i64> count_basepoints(const Realization& r, const Polygon& poly, PipMethod method);
i64 winding_number(const Polygon& poly, const Point& pt);
// Least and greatest winding number over the bounded faces (and 0 outside).
std::pair<i64, i64> face_winding_range(const Polygon& poly);
// Basepoints counted with winding multiplicity, oriented so the domain is positive.
std::pair<i64, i64> basepoint_multiplicities(const Realization& r, const Polygon& poly);

struct KnotComplex {
    FourTuple tuple;
    std::vector<Generator> generators;  // grouped by spin class, walk order inside a class
    std::vector<BigonComponent> components;
    i64 spin_count = 1;
    i64 grading_denominator = 1;
    bool absolute = false;  // gradings absolute (S^3) or anchored per class
};

void assign_gradings(KnotComplex& c);
KnotComplex build_complex(const FourTuple& t);

bool d_squared_zero(const KnotComplex& c);
i64 euler_characteristic(const KnotComplex& c, int spin_class);

using Laurent = std::map<i64, i64>;  // exponent -> coefficient
std::map<std::pair<int, i64>, i64> hfk_hat(const KnotComplex& c);
std::map<std::pair<int, i64>, i64> hfk_hat(const FourTuple& t);
Laurent alexander_polynomial(const KnotComplex& c);
Laurent alexander_polynomial(const FourTuple& t);
std::string format_laurent(const Laurent& poly);

}  // namespace oneone
