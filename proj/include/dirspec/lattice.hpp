#pragma once

#include <compare>
#include <vector>

#include "dirspec/exact.hpp"

// Integer vectors, unimodular bases, exact natural-coordinate frames,
// cylinder membership / enumeration, and the brute-force best-approximation
// oracle.  Everything is decided in exact rational arithmetic.

namespace dirspec {

struct EnumerationLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// w = (q, p1, p2), the integer atoms of the construction.
struct IntVec3 {
    Int q, p1, p2;

    friend IntVec3 operator+(const IntVec3& a, const IntVec3& b) {
        return {a.q + b.q, a.p1 + b.p1, a.p2 + b.p2};
    }
    friend IntVec3 operator-(const IntVec3& a, const IntVec3& b) {
        return {a.q - b.q, a.p1 - b.p1, a.p2 - b.p2};
    }
    friend IntVec3 operator*(const Int& c, const IntVec3& a) {
        return {c * a.q, c * a.p1, c * a.p2};
    }
    bool operator==(const IntVec3& o) const { return q == o.q && p1 == o.p1 && p2 == o.p2; }
    // lexicographic (q, p1, p2): the deterministic enumeration order
    bool operator<(const IntVec3& o) const {
        if (int c = cmp(q, o.q)) return c < 0;
        if (int c = cmp(p1, o.p1)) return c < 0;
        return cmp(p2, o.p2) < 0;
    }
};

struct RatVec2 {
    Rat v1, v2;

    friend RatVec2 operator-(const RatVec2& a, const RatVec2& b) {
        return {a.v1 - b.v1, a.v2 - b.v2};
    }
    Rat norm_sq() const { return v1 * v1 + v2 * v2; }
    bool operator==(const RatVec2& o) const { return v1 == o.v1 && v2 == o.v2; }
};

// v = (p1/q, p2/q) for q > 0.
RatVec2 rational_point(const IntVec3& w);

Int det3(const IntVec3& a, const IntVec3& b, const IntVec3& c);
bool is_unimodular(const IntVec3& a, const IntVec3& b, const IntVec3& c);

// Coefficients of w in an unimodular basis (b1, b2, b3); exact by Cramer.
struct Expansion {
    Int c1, c2, c3;
};
Expansion expand_in_basis(const IntVec3& w,
                          const IntVec3& b1, const IntVec3& b2, const IntVec3& b3);

// Exact natural-coordinate data for a basis (w_nu, w_nm1, w_nm2):
//   images (q, 0, 0), (a0, d, 0), (g, f, h) with q d h = 1.
// Only squared / ratio quantities are stored (d_sq, h_sq, f_over_d), so
// every downstream predicate stays rational.
struct Frame {
    Int q;   // first coordinate of w_nu
    Int a0;  // first coordinate of w_nm1
    Int g;   // first coordinate of w_nm2
    Rat d_sq;
    Rat h_sq;
    Rat f_over_d;
    IntVec3 w_nu, w_nm1, w_nm2;
};

// Throws DomainError on a degenerate (collinear) basis or non-unimodular
// input.
Frame build_frame(const IntVec3& w_nu, const IntVec3& w_nm1, const IntVec3& w_nm2);

struct NaturalPoint {
    Rat x;
    Rat y_over_d;  // y = y_over_d * d
    Int z_level;   // z = z_level * h
};
NaturalPoint natural_coords(const Frame& frame, const IntVec3& w);

// Pi(v, Q, R): 0 <= x <= Q, |x*axis - (p1,p2)|^2 <= radius_sq.  The radius
// is stored squared so membership is a rational predicate.
struct Cylinder {
    RatVec2 axis;
    Rat height_Q;
    Rat radius_sq;
};

bool cylinder_contains(const Cylinder& c, const IntVec3& w, const Rat& dilation_sq = Rat(1));

// All integer points of the (dilated) cylinder, ordered by (x, p1, p2).
// Refuses when height_Q exceeds q_limit.
std::vector<IntVec3> enumerate_cylinder_points(const Cylinder& c, const Int& q_limit,
                                               const Rat& dilation_sq = Rat(1));

// True iff the dilated cylinder's integer points are exactly `expected`
// (sorted); bails out at the first foreign point instead of collecting.
bool cylinder_contents_match(const Cylinder& c, const Int& q_limit, const Rat& dilation_sq,
                             const std::vector<IntVec3>& expected);

// ---- best approximations ------------------------------------------------

struct ThetaBox {
    RatInterval t1, t2;
};

struct BestApproxEntry {
    Int q;
    Int p1, p2;
    RatInterval psi_sq;  // zero-width for rational theta
    bool tie_p = false;  // another p attains the same minimum at this q
};

// Brute force over all q <= T: the denominators where the running minimum
// of |q*theta - p| strictly drops, with the minimizing p and exact psi^2.
std::vector<BestApproxEntry> best_approx_oracle(const RatVec2& theta, const Int& T);

// Same scan against a rational box enclosing theta.  Every accept/skip
// decision is certified against the box; an undecidable comparison raises
// InsufficientPrecision naming the offending q.
std::vector<BestApproxEntry> best_approx_oracle(const ThetaBox& theta, const Int& T);

}  // namespace dirspec
