#include "dirspec/lattice.hpp"

#include <algorithm>

namespace dirspec {

RatVec2 rational_point(const IntVec3& w) {
    if (sgn(w.q) <= 0) throw DomainError("rational_point needs q > 0");
    return {make_rat(w.p1, w.q), make_rat(w.p2, w.q)};
}

Int det3(const IntVec3& a, const IntVec3& b, const IntVec3& c) {
    return a.q * (b.p1 * c.p2 - b.p2 * c.p1)
         - a.p1 * (b.q * c.p2 - b.p2 * c.q)
         + a.p2 * (b.q * c.p1 - b.p1 * c.q);
}

bool is_unimodular(const IntVec3& a, const IntVec3& b, const IntVec3& c) {
    Int d = det3(a, b, c);
    return d == 1 || d == -1;
}

Expansion expand_in_basis(const IntVec3& w,
                          const IntVec3& b1, const IntVec3& b2, const IntVec3& b3) {
    Int det = det3(b1, b2, b3);
    if (det != 1 && det != -1) throw DomainError("expand_in_basis: basis not unimodular");
    // Cramer; division by +-1 keeps everything integral.
    Int c1 = det3(w, b2, b3) / det;
    Int c2 = det3(b1, w, b3) / det;
    Int c3 = det3(b1, b2, w) / det;
    return {c1, c2, c3};
}

Frame build_frame(const IntVec3& w_nu, const IntVec3& w_nm1, const IntVec3& w_nm2) {
    if (!is_unimodular(w_nu, w_nm1, w_nm2))
        throw DomainError("build_frame: vectors do not form a basis of Z^3");
    if (sgn(w_nu.q) <= 0) throw DomainError("build_frame: leading vector needs q > 0");

    Frame fr;
    fr.q = w_nu.q;
    fr.a0 = w_nm1.q;
    fr.g = w_nm2.q;
    fr.w_nu = w_nu;
    fr.w_nm1 = w_nm1;
    fr.w_nm2 = w_nm2;

    RatVec2 v = rational_point(w_nu);
    // deviation of w_nm1 / w_nm2 from the axis through w_nu
    RatVec2 u1{Rat(w_nm1.p1) - Rat(w_nm1.q) * v.v1, Rat(w_nm1.p2) - Rat(w_nm1.q) * v.v2};
    RatVec2 u2{Rat(w_nm2.p1) - Rat(w_nm2.q) * v.v1, Rat(w_nm2.p2) - Rat(w_nm2.q) * v.v2};

    fr.d_sq = u1.norm_sq();
    if (sgn(fr.d_sq) == 0) throw DomainError("build_frame: degenerate basis (collinear)");
    fr.h_sq = Rat(1) / (Rat(fr.q) * Rat(fr.q) * fr.d_sq);
    Rat fd = u1.v1 * u2.v1 + u1.v2 * u2.v2;  // f*d, exact
    fr.f_over_d = fd / fr.d_sq;

    // Orthogonality identity: |u2|^2 = f^2 + h^2 must hold exactly for a
    // unimodular basis.
    Rat h_sq_check = u2.norm_sq() - fr.f_over_d * fr.f_over_d * fr.d_sq;
    if (h_sq_check != fr.h_sq)
        throw DomainError("build_frame: frame identity q^2 d^2 h^2 = 1 violated");
    return fr;
}

NaturalPoint natural_coords(const Frame& frame, const IntVec3& w) {
    Expansion c = expand_in_basis(w, frame.w_nu, frame.w_nm1, frame.w_nm2);
    NaturalPoint np;
    np.x = Rat(w.q);
    np.y_over_d = Rat(c.c2) + Rat(c.c3) * frame.f_over_d;
    np.z_level = c.c3;
    return np;
}

bool cylinder_contains(const Cylinder& c, const IntVec3& w, const Rat& dilation_sq) {
    if (dilation_sq < 1) throw DomainError("cylinder_contains: dilation_sq < 1");
    if (sgn(w.q) < 0 || Rat(w.q) > c.height_Q) return false;
    Rat dx1 = Rat(w.q) * c.axis.v1 - Rat(w.p1);
    Rat dx2 = Rat(w.q) * c.axis.v2 - Rat(w.p2);
    return dx1 * dx1 + dx2 * dx2 <= c.radius_sq * dilation_sq;
}

namespace {

using i64 = long;  // mpz round trips use long on this ABI
using i128 = __int128;

// integer form of a dilated cylinder: with axis = (n1/D, n2/D), membership
// of (x, p) is  B ((x n1 - p1 D)^2 + (x n2 - p2 D)^2) <= A,
// where A/B = radius_sq * dilation_sq * D^2
struct CylinderScanData {
    Int D, n1, n2, A, B;
    Int x_max;
};

CylinderScanData cylinder_scan_data(const Cylinder& c, const Int& q_limit,
                                    const Rat& dilation_sq) {
    if (sgn(c.height_Q) < 0 || sgn(c.radius_sq) < 0)
        throw DomainError("cylinder scan: malformed cylinder");
    if (c.height_Q > Rat(q_limit))
        throw EnumerationLimit("cylinder height " + rat_str(c.height_Q) +
                               " exceeds enumeration limit " + q_limit.get_str());
    CylinderScanData s;
    s.D = c.axis.v1.get_den();
    mpz_lcm(s.D.get_mpz_t(), s.D.get_mpz_t(), c.axis.v2.get_den().get_mpz_t());
    s.n1 = c.axis.v1.get_num() * (s.D / c.axis.v1.get_den());
    s.n2 = c.axis.v2.get_num() * (s.D / c.axis.v2.get_den());
    Rat SD2 = c.radius_sq * dilation_sq * Rat(s.D) * Rat(s.D);
    s.A = SD2.get_num();
    s.B = SD2.get_den();
    s.x_max = rat_floor(c.height_Q);
    return s;
}

bool fits_native(const CylinderScanData& s) {
    // every product in the native scan stays within int128 when the raw
    // data fits in 31 and 62 bits
    const Int cap31 = Int(1) << 31, cap62 = Int(1) << 62;
    return s.x_max < cap31 && abs(s.n1) < cap31 && abs(s.n2) < cap31 && s.D < cap31 &&
           s.A < cap62 && s.B < cap31;
}

// visit(x, p1, p2) -> bool (false aborts); returns false iff aborted
template <typename Visit>
bool scan_native(const CylinderScanData& s, Visit&& visit) {
    const i64 D = s.D.get_si(), n1 = s.n1.get_si(), n2 = s.n2.get_si();
    const i64 x_max = s.x_max.get_si();
    const i128 A = i128(s.A.get_si());
    const i64 B = s.B.get_si();
    // outward bound on sqrt(A/B)/... for the candidate windows: use the
    // integer sqrt of A/B once; membership decides exactly afterwards
    Int rad = floor_sqrt(make_rat(s.A, s.B)) + 1;  // >= sqrt(A/B) = r*D
    const i64 R = rad.get_si();
    for (i64 x = 0; x <= x_max; ++x) {
        i64 c1 = x * n1, c2 = x * n2;
        // floor/ceil of (c +- R)/D with sign-correct rounding
        auto fdiv = [](i64 a, i64 b) { i64 q = a / b; return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q; };
        i64 lo1 = fdiv(c1 - R + D - 1, D), hi1 = fdiv(c1 + R, D);
        i64 lo2 = fdiv(c2 - R + D - 1, D), hi2 = fdiv(c2 + R, D);
        for (i64 p1 = lo1; p1 <= hi1; ++p1) {
            i128 d1 = i128(c1 - p1 * D) * (c1 - p1 * D);
            for (i64 p2 = lo2; p2 <= hi2; ++p2) {
                i128 d2 = i128(c2 - p2 * D) * (c2 - p2 * D);
                if ((d1 + d2) * B <= A)
                    if (!visit(x, p1, p2)) return false;
            }
        }
    }
    return true;
}

template <typename Visit>
bool scan_wide(const CylinderScanData& s, Visit&& visit) {
    Rat SD2 = make_rat(s.A, s.B);
    Rat r_hi = sqrt_enclosure(SD2, 32).hi;
    const Int& P = r_hi.get_num();
    const Int& Q = r_hi.get_den();
    Int QD = Q * s.D;
    Int c1, c2, lo1, hi1, lo2, hi2, d1, d2, rhs;
    for (Int x = 0; x <= s.x_max; ++x) {
        c1 = x * s.n1;
        c2 = x * s.n2;
        mpz_cdiv_q(lo1.get_mpz_t(), Int(c1 * Q - P).get_mpz_t(), QD.get_mpz_t());
        mpz_fdiv_q(hi1.get_mpz_t(), Int(c1 * Q + P).get_mpz_t(), QD.get_mpz_t());
        mpz_cdiv_q(lo2.get_mpz_t(), Int(c2 * Q - P).get_mpz_t(), QD.get_mpz_t());
        mpz_fdiv_q(hi2.get_mpz_t(), Int(c2 * Q + P).get_mpz_t(), QD.get_mpz_t());
        for (Int p1 = lo1; p1 <= hi1; ++p1) {
            d1 = c1 - p1 * s.D;
            d1 *= d1;
            for (Int p2 = lo2; p2 <= hi2; ++p2) {
                d2 = c2 - p2 * s.D;
                rhs = d1 + d2 * d2;
                rhs *= s.B;
                if (rhs <= s.A)
                    if (!visit(Int(x), Int(p1), Int(p2))) return false;
            }
        }
    }
    return true;
}

}  // namespace

std::vector<IntVec3> enumerate_cylinder_points(const Cylinder& c, const Int& q_limit,
                                               const Rat& dilation_sq) {
    CylinderScanData s = cylinder_scan_data(c, q_limit, dilation_sq);
    std::vector<IntVec3> out;
    if (fits_native(s)) {
        scan_native(s, [&](i64 x, i64 p1, i64 p2) {
            out.push_back({Int(x), Int(p1), Int(p2)});
            return true;
        });
    } else {
        scan_wide(s, [&](const Int& x, const Int& p1, const Int& p2) {
            out.push_back({x, p1, p2});
            return true;
        });
    }
    return out;  // emitted in (x, p1, p2) order
}

bool cylinder_contents_match(const Cylinder& c, const Int& q_limit, const Rat& dilation_sq,
                             const std::vector<IntVec3>& expected) {
    CylinderScanData s = cylinder_scan_data(c, q_limit, dilation_sq);
    size_t idx = 0;
    bool complete;
    if (fits_native(s)) {
        complete = scan_native(s, [&](i64 x, i64 p1, i64 p2) {
            if (idx >= expected.size()) return false;
            const IntVec3& e = expected[idx];
            if (!(e.q == x && e.p1 == p1 && e.p2 == p2)) return false;
            ++idx;
            return true;
        });
    } else {
        complete = scan_wide(s, [&](const Int& x, const Int& p1, const Int& p2) {
            if (idx >= expected.size()) return false;
            const IntVec3& e = expected[idx];
            if (!(e.q == x && e.p1 == p1 && e.p2 == p2)) return false;
            ++idx;
            return true;
        });
    }
    return complete && idx == expected.size();
}

}  // namespace dirspec
