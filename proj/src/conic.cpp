#include "dirspec/conic.hpp"

#include <algorithm>

namespace dirspec {

namespace {

void check_ellipse(const EllipseSpec& e) {
    if (sgn(e.q) <= 0 || sgn(e.y2_over_d) <= 0 || sgn(e.d_sq) <= 0 || e.dilation < 1)
        throw DomainError("malformed ellipse spec");
}

// lambda must satisfy 1 <= lambda and lambda^2 < 4/3
void check_lambda_domain(const RatInterval& lambda) {
    if (lambda.lo < 1) throw DomainError("lambda below 1");
    if (lambda.hi * lambda.hi >= make_rat(4, 3)) throw DomainError("lambda^2 must stay below 4/3");
}

}  // namespace

bool ellipse_contains(const EllipseSpec& e, const Rat& x, const Rat& y_over_d) {
    check_ellipse(e);
    // (x y2 - y x2)^2 + (q y)^2 <= t^2 (q y2)^2 with y = y_over_d * d; the
    // common factor d^2 cancels.
    Rat a = x * e.y2_over_d - y_over_d * e.x2;
    Rat b = e.q * y_over_d;
    Rat rhs = e.dilation * e.q * e.y2_over_d;
    return a * a + b * b <= rhs * rhs;
}

bool hyperbola_region_contains(const HyperbolaRegionSpec& h, const Rat& x, const Rat& y_over_d) {
    if (sgn(h.q) <= 0 || sgn(h.d_sq) <= 0) throw DomainError("malformed hyperbola region spec");
    if (sgn(y_over_d) < 0) throw DomainError("hyperbola region is defined for y >= 0 only");
    // (a y - d x)^2 + (q d)^2 >= (q y)^2, divided through by d^2
    Rat a = h.a * y_over_d - x;
    Rat lhs = a * a + h.q * h.q;
    Rat rhs = h.q * y_over_d;
    return lhs >= rhs * rhs;
}

RatInterval epsilon_lambda(const RatInterval& lambda, unsigned bits) {
    check_lambda_domain(lambda);
    // decreasing in lambda on the domain, so bound with opposite endpoints
    RatInterval root_hi = sqrt_enclosure(lambda.hi * lambda.hi - 1, bits);
    RatInterval root_lo = sqrt_enclosure(lambda.lo * lambda.lo - 1, bits);
    return {lambda.lo - 2 * root_hi.hi, lambda.hi - 2 * root_lo.lo};
}

Rat hyperbola_pair_apex_sq(const Rat& q, const Rat& d_sq) {
    if (sgn(q) <= 0 || sgn(d_sq) <= 0) throw DomainError("apex needs q, d_sq > 0");
    return make_rat(4, 3) * d_sq;
}

std::pair<RatInterval, RatInterval> segment_endpoints_rs(const RatInterval& lambda,
                                                         const Rat& q, const Rat& a,
                                                         unsigned bits) {
    check_lambda_domain(lambda);
    RatInterval root{sqrt_enclosure(lambda.lo * lambda.lo - 1, bits).lo,
                     sqrt_enclosure(lambda.hi * lambda.hi - 1, bits).hi};
    RatInterval r = RatInterval(a) * lambda + RatInterval(q) * root;
    RatInterval s = RatInterval(a + q) * lambda - RatInterval(q) * root;
    return {r, s};
}

SegmentUV segment_uv(CaseTag tag, const RatInterval& lambda, const Rat& q, const Rat& a0,
                     long k, const Rat& alpha, const Rat& omega, const Rat& d_sq) {
    if (sgn(q) <= 0 || sgn(d_sq) <= 0) throw DomainError("segment_uv: q, d_sq > 0 required");
    if (tag == CaseTag::case1) {
        if (!(sgn(alpha) > 0 && omega < 1 && alpha < omega))
            throw DomainError("segment_uv case 1 needs (alpha, omega) inside (0, 1)");
        Rat a = a0 + Rat(k) * q;
        RatInterval v = RatInterval(a + q / 2) * lambda;
        return {tag, v, RatInterval(alpha), RatInterval(omega)};
    }
    if (!(alpha > 1 && omega * omega < make_rat(4, 3) && alpha < omega))
        throw DomainError("segment_uv case 2 needs (alpha, omega) inside (1, 2/sqrt(3))");
    if (k < 2) throw DomainError("segment_uv case 2 needs k >= 2");
    Rat a = a0 + Rat(k) * q;
    if (sgn(a) < 0) throw DomainError("segment_uv case 2 needs a >= 0");
    auto [r, s] = segment_endpoints_rs(lambda, q, a);
    RatInterval v = RatInterval((a + q / 2)) * lambda;
    RatInterval u_over_d = v * lambda / s;  // u = d v lambda / s
    return {tag, v, u_over_d, lambda};
}

Rat dilation_coefficient(CaseTag tag, const Rat& omega, unsigned bits) {
    if (tag == CaseTag::case1) {
        if (!(sgn(omega) > 0 && omega < 1))
            throw DomainError("dilation coefficient case 1 needs omega in (0, 1)");
        return Rat(1) / omega;
    }
    if (!(omega * omega < make_rat(4, 3)))
        throw DomainError("dilation coefficient case 2 needs omega below 2/sqrt(3)");
    Rat two_over_sqrt3_lo = sqrt_enclosure(make_rat(4, 3), bits).lo;
    Rat t = 1 + two_over_sqrt3_lo - omega;
    if (t < 1) throw DomainError("dilation coefficient case 2 collapsed below 1");
    return t;
}

std::pair<Rat, Rat> map_f(const Rat& q, const Rat& d_sq, const Rat& x2, const Rat& y2_over_d) {
    if (sgn(y2_over_d) <= 0) throw DomainError("map_f needs y2 > 0");
    if (sgn(q) <= 0 || sgn(d_sq) <= 0) throw DomainError("map_f needs q, d_sq > 0");
    Rat q2d2 = q * q * d_sq;
    Rat x1 = (x2 * x2 + q * q) / (y2_over_d * q2d2);
    Rat y1_over_d = x2 / q2d2;
    return {x1, y1_over_d};
}

std::pair<Rat, Rat> map_f_inverse(const Rat& q, const Rat& d_sq, const Rat& x1,
                                  const Rat& y1_over_d) {
    if (sgn(x1) <= 0) throw DomainError("map_f_inverse needs x1 > 0");
    if (sgn(q) <= 0 || sgn(d_sq) <= 0) throw DomainError("map_f_inverse needs q, d_sq > 0");
    Rat q2d2 = q * q * d_sq;
    Rat x2 = y1_over_d * q2d2;
    Rat y2_over_d = (x2 * x2 + q * q) / (x1 * q2d2);
    return {x2, y2_over_d};
}

std::vector<LatticePoint2> ellipse_lattice_points(const EllipseSpec& e, const Int& lattice_q,
                                                  const Int& lattice_a0, const Int& enum_limit) {
    check_ellipse(e);
    if (Rat(lattice_q) != e.q) throw DomainError("lattice step must match the ellipse's q");

    // membership of (x, m d):  (x u - m x2)^2 + (q m)^2 <= t^2 q^2 u^2,
    // u = y2_over_d (everything divided by d^2)
    const Rat& u = e.y2_over_d;
    Rat t_sq = e.dilation * e.dilation;
    Rat rhs = t_sq * e.q * e.q * u * u;
    Rat row_bound_sq = t_sq * u * u;  // m^2 <= t^2 u^2

    Int m_max = floor_sqrt(row_bound_sq);
    if (2 * m_max + 1 > enum_limit)
        throw EnumerationLimit("ellipse row count exceeds enumeration limit");

    std::vector<LatticePoint2> out;
    Int budget = enum_limit;
    for (Int m = -m_max; m <= m_max; ++m) {
        Rat cap = rhs - e.q * e.q * Rat(m) * Rat(m);
        if (sgn(cap) < 0) continue;
        // |x u - m x2| <= sqrt(cap): outward bounds for the x-range
        Rat root_hi = sqrt_enclosure(cap, 32).hi;
        Rat x_lo = (Rat(m) * e.x2 - root_hi) / u;
        Rat x_hi = (Rat(m) * e.x2 + root_hi) / u;
        // x = m a0 + l q on this row
        Int base = m * lattice_a0;
        Int l_lo = rat_ceil((x_lo - Rat(base)) / Rat(lattice_q));
        Int l_hi = rat_floor((x_hi - Rat(base)) / Rat(lattice_q));
        budget -= std::max(Int(0), Int(l_hi - l_lo + 1));
        if (budget < 0) throw EnumerationLimit("ellipse candidate count exceeds enumeration limit");
        for (Int l = l_lo; l <= l_hi; ++l) {
            Int x = base + l * lattice_q;
            Rat a = Rat(x) * u - Rat(m) * e.x2;
            Rat b = e.q * Rat(m);
            if (a * a + b * b <= rhs) out.push_back({m, x});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ellipse_lattice_empty(const EllipseSpec& e, const Int& lattice_q, const Int& lattice_a0,
                           const Int& enum_limit) {
    std::vector<LatticePoint2> pts = ellipse_lattice_points(e, lattice_q, lattice_a0, enum_limit);
    std::vector<LatticePoint2> expected{{0, -lattice_q}, {0, 0}, {0, lattice_q}};
    return pts == expected;
}

}  // namespace dirspec
