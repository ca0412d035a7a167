#include "dirspec/exact.hpp"

#include <algorithm>

namespace dirspec {

Rat make_rat(const Int& n, const Int& d) {
    if (sgn(d) == 0) throw DomainError("rational with zero denominator");
    Rat r;
    r.get_num() = n;
    r.get_den() = d;
    r.canonicalize();
    return r;
}

Rat make_rat(long n, long d) { return make_rat(Int(n), Int(d)); }

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rat(Int(s), Int(1));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("unparseable rational: " + s);
    }
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rat_decimal(const Rat& r, unsigned digits) {
    Int pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, digits);
    Rat scaled = r * Rat(pow10);
    Int rounded = rat_floor(scaled + make_rat(1, 2));
    bool neg = sgn(rounded) < 0;
    Int a = abs(rounded);
    Int whole = a / pow10, frac = a % pow10;
    std::string f = frac.get_str();
    while (f.size() < digits) f.insert(f.begin(), '0');
    std::string out = (neg ? "-" : "") + whole.get_str();
    if (digits > 0) out += "." + f;
    return out;
}

Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Int rat_round(const Rat& r) { return rat_floor(r + make_rat(1, 2)); }

Int floor_sqrt(const Rat& r) {
    if (sgn(r) < 0) throw DomainError("floor_sqrt of negative value");
    // floor(sqrt(n/d)) = floor(sqrt(n*d)/d); search from the integer sqrt.
    Int nd = r.get_num() * r.get_den();
    Int s;
    mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
    Int c = s / r.get_den();
    while (Rat(c + 1) * Rat(c + 1) <= r) ++c;
    while (c > 0 && Rat(c) * Rat(c) > r) --c;
    return c;
}

Int ceil_sqrt(const Rat& r) {
    Int f = floor_sqrt(r);
    if (Rat(f) * Rat(f) == r) return f;
    return f + 1;
}

int cmp_sqrt(const Rat& a_sq, const Rat& b_sq) {
    if (sgn(a_sq) < 0 || sgn(b_sq) < 0) throw DomainError("cmp_sqrt of negative value");
    return cmp(a_sq, b_sq);
}

int cmp_sqrt_vs(const Rat& a_sq, const Rat& t) {
    if (sgn(a_sq) < 0) throw DomainError("cmp_sqrt_vs of negative value");
    if (sgn(t) < 0) return 1;  // sqrt >= 0 > t
    return cmp(a_sq, t * t);
}

int cmp_sqrt_sum(const Rat& p, const Rat& a_sq,
                 const Rat& r, const Rat& b_sq,
                 const Rat& s, const Rat& c_sq) {
    if (sgn(p) < 0 || sgn(r) < 0 || sgn(s) < 0)
        throw DomainError("cmp_sqrt_sum needs nonnegative coefficients");
    if (sgn(a_sq) < 0 || sgn(b_sq) < 0 || sgn(c_sq) < 0)
        throw DomainError("cmp_sqrt_sum of negative radicand");
    // (p sqrt(a) + r sqrt(b))^2 = p^2 a + r^2 b + 2pr sqrt(ab), vs s^2 c.
    Rat lhs_fixed = p * p * a_sq + r * r * b_sq;
    Rat rhs = s * s * c_sq;
    Rat gap = rhs - lhs_fixed;
    Rat cross_sq = 4 * p * p * r * r * a_sq * b_sq;
    if (sgn(gap) < 0) return 1;
    // compare 2pr sqrt(ab) vs gap, both nonnegative: square once more.
    return cmp(cross_sq, gap * gap);
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    return {std::min(std::min(c1, c2), std::min(c3, c4)),
            std::max(std::max(c1, c2), std::max(c3, c4))};
}

RatInterval operator/(const RatInterval& a, const RatInterval& b) {
    if (b.contains_zero()) throw DomainError("interval division by interval containing 0");
    return a * RatInterval(Rat(1) / b.hi, Rat(1) / b.lo);
}

RatInterval operator*(const Rat& a, const RatInterval& b) {
    return RatInterval(a) * b;
}

RatInterval interval_sq(const RatInterval& a) {
    Rat l2 = a.lo * a.lo, h2 = a.hi * a.hi;
    if (a.contains_zero()) return {Rat(0), std::max(l2, h2)};
    return {std::min(l2, h2), std::max(l2, h2)};
}

RatInterval interval_arith(IvalOp op, const RatInterval& a, const RatInterval& b) {
    switch (op) {
        case IvalOp::add: return a + b;
        case IvalOp::sub: return a - b;
        case IvalOp::mul: return a * b;
        case IvalOp::div: return a / b;
    }
    throw DomainError("unknown interval op");
}

RatInterval ScaledValue::enclose(const Rat& d_sq, unsigned bits) const {
    if (sgn(coeff) < 0) throw DomainError("ScaledValue::enclose needs coeff >= 0");
    RatInterval root = sqrt_enclosure(d_sq, bits);
    return {coeff * root.lo, coeff * root.hi};
}

RatInterval sqrt_enclosure(const Rat& r, unsigned bits) {
    if (sgn(r) < 0) throw DomainError("sqrt_enclosure of negative value");
    if (sgn(r) == 0) return {Rat(0), Rat(0)};
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits so the integer sqrt carries
    // `bits` fractional bits.  Width is then 1/(d*2^bits) <= 2^-bits.
    const Int& n = r.get_num();
    const Int& d = r.get_den();
    Int scaled = n * d;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
    Int s, rem;
    mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
    Int den = d;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    Rat lo = make_rat(s, den);
    if (sgn(rem) == 0) return {lo, lo};
    return {lo, make_rat(s + 1, den)};
}

}  // namespace dirspec
