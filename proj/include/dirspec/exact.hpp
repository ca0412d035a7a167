#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

// Exact arithmetic foundation: arbitrary-precision integers and rationals,
// rigorous rational interval arithmetic, and comparisons of radical
// expressions reduced to rational comparisons by squaring.  No floating
// point is used anywhere in this module.

namespace dirspec {

using Int = mpz_class;
using Rat = mpq_class;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Canonical rational n/d (gcd reduced, d > 0).  Throws on d == 0.
Rat make_rat(const Int& n, const Int& d);
Rat make_rat(long n, long d = 1);

// Parse decimal "num" or "num/den" strings (the run-record wire format).
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);
// Rounded fixed-point rendering for human-facing summaries; the exact
// num/den strings remain the wire format.
std::string rat_decimal(const Rat& r, unsigned digits = 9);

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);
// Nearest integer, halves rounded down (only used for search midpoints).
Int rat_round(const Rat& r);

// Largest n >= 0 with n^2 <= r (requires r >= 0).
Int floor_sqrt(const Rat& r);
// Smallest n >= 0 with n^2 >= r.
Int ceil_sqrt(const Rat& r);

// -1/0/+1 ordering of sqrt(a_sq) vs sqrt(b_sq); both inputs must be >= 0.
int cmp_sqrt(const Rat& a_sq, const Rat& b_sq);

// sqrt(a_sq) vs the (possibly negative) rational t, by sign analysis and
// squaring.
int cmp_sqrt_vs(const Rat& a_sq, const Rat& t);

// p*sqrt(a_sq) + r*sqrt(b_sq) vs s*sqrt(c_sq) with p, r, s >= 0, decided by
// squaring twice.  Used for cylinder containment chains.
int cmp_sqrt_sum(const Rat& p, const Rat& a_sq,
                 const Rat& r, const Rat& b_sq,
                 const Rat& s, const Rat& c_sq);

struct RatInterval {
    Rat lo;
    Rat hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat point) : lo(point), hi(point) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw DomainError("interval: lo > hi");
    }

    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool operator==(const RatInterval& o) const { return lo == o.lo && hi == o.hi; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator/(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const Rat& a, const RatInterval& b);

// Enclosure of x^2 over the interval (tight: respects sign change).
RatInterval interval_sq(const RatInterval& a);

enum class IvalOp { add, sub, mul, div };
RatInterval interval_arith(IvalOp op, const RatInterval& a, const RatInterval& b);

// [lo, hi] with lo^2 <= r <= hi^2 and hi - lo <= 2^-bits * max(1, hi).
// Exact when r is the square of a rational representable at the working
// scale (then lo == hi).
RatInterval sqrt_enclosure(const Rat& r, unsigned bits = 64);

// A value of the form coeff * d where d = sqrt(d_sq) of an ambient frame.
// Keeping the coefficient instead of the product keeps every predicate
// rational; the value itself only materializes as a square or an enclosure.
struct ScaledValue {
    Rat coeff;

    Rat value_sq(const Rat& d_sq) const { return coeff * coeff * d_sq; }
    // enclosure of coeff * sqrt(d_sq); requires coeff >= 0
    RatInterval enclose(const Rat& d_sq, unsigned bits = 64) const;
};

}  // namespace dirspec
