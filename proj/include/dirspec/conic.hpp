#pragma once

#include <utility>
#include <vector>

#include "dirspec/exact.hpp"
#include "dirspec/lattice.hpp"

// Exact predicates and constructors for the plane geometry of the
// construction: tangency ellipses, hyperbola regions, the lambda-window
// quantities, the facet mapping F, and the dilated-ellipse lattice check.
// Every y-coordinate is carried as y/d so the predicates stay rational.

namespace dirspec {

enum class CaseTag { case1, case2 };

// 0-symmetric ellipse through W = (q, 0) with horizontal tangent at
// (x2, y2), y2 = y2_over_d * d, dilated by `dilation`:
//   (x y2 - y x2)^2 + (q y)^2 <= dilation^2 (q y2)^2.
struct EllipseSpec {
    Rat q;          // > 0
    Rat x2;
    Rat y2_over_d;  // > 0
    Rat d_sq;       // > 0
    Rat dilation;   // >= 1
};

bool ellipse_contains(const EllipseSpec& e, const Rat& x, const Rat& y_over_d);

// Region { (x, y): y >= 0, (a y - d x)^2 + (q d)^2 >= (q y)^2 }.
struct HyperbolaRegionSpec {
    Rat q;  // > 0
    Rat a;
    Rat d_sq;  // > 0
};

bool hyperbola_region_contains(const HyperbolaRegionSpec& h, const Rat& x, const Rat& y_over_d);

// Enclosure of lambda - 2 sqrt(lambda^2 - 1) for lambda in [1, 2/sqrt(3)).
RatInterval epsilon_lambda(const RatInterval& lambda, unsigned bits = 96);

// Squared height of the single common point of the hyperbola pair for
// shifts a and a+q; equals (4/3) d_sq independently of a and q.
Rat hyperbola_pair_apex_sq(const Rat& q, const Rat& d_sq);

// r = a*lambda + q*sqrt(lambda^2-1), s = (a+q)*lambda - q*sqrt(lambda^2-1).
std::pair<RatInterval, RatInterval> segment_endpoints_rs(const RatInterval& lambda,
                                                         const Rat& q, const Rat& a,
                                                         unsigned bits = 96);

// Vertical search segment at abscissa v.  In case 1 the endpoints are
// lambda-free rationals (y from d*alpha to d*omega); in case 2 they are
// enclosures of (v, d*v*lambda/s) .. (v, d*lambda).
struct SegmentUV {
    CaseTag case_tag;
    RatInterval v;
    RatInterval y_lo_over_d;
    RatInterval y_hi_over_d;
};

SegmentUV segment_uv(CaseTag tag, const RatInterval& lambda, const Rat& q, const Rat& a0,
                     long k, const Rat& alpha, const Rat& omega, const Rat& d_sq);

// case 1: exactly 1/omega; case 2: a rational lower bound of
// 1 + 2/sqrt(3) - omega (outward-safe for emptiness checks).
Rat dilation_coefficient(CaseTag tag, const Rat& omega, unsigned bits = 64);

// x1 = h (x2^2 + q^2) / (y2 q), y1 = h x2 / q, reduced to rationals via
// q^2 d^2 h^2 = 1.  Returns (x1, y1_over_d).
std::pair<Rat, Rat> map_f(const Rat& q, const Rat& d_sq, const Rat& x2, const Rat& y2_over_d);
std::pair<Rat, Rat> map_f_inverse(const Rat& q, const Rat& d_sq, const Rat& x1,
                                  const Rat& y1_over_d);

// Point (x, m*d) of the lattice generated by (q, 0) and (a0, d).
struct LatticePoint2 {
    Int row_m;
    Int x;
    bool operator==(const LatticePoint2& o) const { return row_m == o.row_m && x == o.x; }
    bool operator<(const LatticePoint2& o) const {
        if (int c = cmp(row_m, o.row_m)) return c < 0;
        return cmp(x, o.x) < 0;
    }
};

// All lattice points inside the dilated ellipse, by row enumeration.
// Refuses if more than enum_limit candidates would need testing.
std::vector<LatticePoint2> ellipse_lattice_points(const EllipseSpec& e, const Int& lattice_q,
                                                  const Int& lattice_a0, const Int& enum_limit);

// True iff the closed dilated ellipse meets the lattice only in
// {0, +-(q, 0)}.
bool ellipse_lattice_empty(const EllipseSpec& e, const Int& lattice_q, const Int& lattice_a0,
                           const Int& enum_limit);

}  // namespace dirspec
