#include <algorithm>
#include <optional>

#include "dirspec/lattice.hpp"

namespace dirspec {

namespace {

// Nearest integer to num/den (den > 0); halves resolved downward, with a
// flag when the other neighbour is equidistant.
struct Nearest {
    Int p;
    bool half_tie;
};

Nearest nearest_int(const Int& num, const Int& den) {
    Int twice = 2 * num + den;  // floor(num/den + 1/2) = floor(twice / (2 den))
    Int p, rem;
    mpz_fdiv_qr(p.get_mpz_t(), rem.get_mpz_t(), twice.get_mpz_t(), Int(2 * den).get_mpz_t());
    if (sgn(rem) == 0) return {p - 1, true};  // exactly half way: pick the smaller
    return {p, false};
}

using i128 = __int128;

i128 floordiv(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// |z| must stay below 2^126
i128 to_i128(const Int& z) {
    Int a = abs(z);
    Int mask = (Int(1) << 64) - 1;
    unsigned long lo = Int(a & mask).get_ui();
    unsigned long hi = Int((a >> 64) & mask).get_ui();
    i128 v = (i128(hi) << 64) | i128(lo);
    return sgn(z) < 0 ? -v : v;
}

struct AxisDist {
    i128 lo, hi;  // enclosure of the per-axis nearest-integer distance
    bool unique_p;
};

// distance of [lo, hi] (scaled by S = 2^E) to its nearest integers
AxisDist axis_distance(i128 lo, i128 hi, i128 S) {
    i128 half = S / 2;
    i128 pmin = floordiv(lo + half, S);
    i128 pmax = floordiv(hi + half, S);
    if (pmin == pmax) {
        i128 pS = pmin * S;
        i128 dlo, dhi;
        if (pS < lo) {
            dlo = lo - pS;
            dhi = hi - pS;
        } else if (pS > hi) {
            dlo = pS - hi;
            dhi = pS - lo;
        } else {
            dlo = 0;
            dhi = std::max(hi - pS, pS - lo);
        }
        return {dlo, dhi, true};
    }
    // the band spans a rounding boundary; stay conservative
    i128 klo = floordiv(lo + S - 1, S) * S;  // smallest multiple >= lo
    i128 dlo;
    if (klo <= hi) {
        dlo = 0;
    } else {
        dlo = std::min(lo - floordiv(lo, S) * S, klo - hi);
        dlo = std::min<i128>(dlo, std::min(klo - lo, hi - floordiv(hi, S) * S));
    }
    return {dlo, half, false};
}

// Exact per-axis distance interval and minimizing integer for q * [lo,hi].
struct ExactAxis {
    RatInterval dist;
    Int p;
    bool unique_p;
};

ExactAxis exact_axis(const RatInterval& x) {
    Nearest a = nearest_int(x.lo.get_num(), x.lo.get_den());
    Nearest b = nearest_int(x.hi.get_num(), x.hi.get_den());
    bool unique = (a.p == b.p) && !a.half_tie && !b.half_tie;
    Int p = a.p;
    Rat plo = Rat(p);
    Rat dlo, dhi;
    if (plo < x.lo) {
        dlo = x.lo - plo;
        dhi = x.hi - plo;
    } else if (plo > x.hi) {
        dlo = plo - x.hi;
        dhi = plo - x.lo;
    } else {
        dlo = 0;
        dhi = std::max(x.hi - plo, plo - x.lo);
    }
    if (!unique) {
        // keep an enclosure that is valid for whichever p is nearest
        dlo = Rat(0);
        dhi = make_rat(1, 2) + (x.hi - x.lo);
    }
    return {{dlo, dhi}, p, unique};
}

}  // namespace

std::vector<BestApproxEntry> best_approx_oracle(const RatVec2& theta, const Int& T) {
    if (T < 1) throw DomainError("best_approx_oracle: T >= 1 required");

    // clear denominators once: theta = (A/m, C/m)
    Int m = theta.v1.get_den();
    mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), theta.v2.get_den().get_mpz_t());
    Int A = theta.v1.get_num() * (m / theta.v1.get_den());
    Int C = theta.v2.get_num() * (m / theta.v2.get_den());
    Rat m_sq(m * m);

    std::vector<BestApproxEntry> out;
    Int record_num;  // record psi^2 = record_num / m^2
    bool have = false;
    for (Int q = 1; q <= T; ++q) {
        Int x1 = q * A, x2 = q * C;
        Nearest n1 = nearest_int(x1, m);
        Nearest n2 = nearest_int(x2, m);
        Int d1 = x1 - n1.p * m;
        Int d2 = x2 - n2.p * m;
        Int dist = d1 * d1 + d2 * d2;
        if (n1.half_tie) {
            Int alt = x1 - (n1.p + 1) * m;
            dist = std::min(dist, Int(alt * alt + d2 * d2));
        }
        if (n2.half_tie) {
            Int alt = x2 - (n2.p + 1) * m;
            dist = std::min(dist, Int(d1 * d1 + alt * alt));
        }
        if (!have || dist < record_num) {
            out.push_back({q, n1.p, n2.p, RatInterval(make_rat(dist, m * m)),
                           n1.half_tie || n2.half_tie});
            record_num = dist;
            have = true;
        }
    }
    return out;
}

std::vector<BestApproxEntry> best_approx_oracle(const ThetaBox& theta, const Int& T) {
    if (T < 1) throw DomainError("best_approx_oracle: T >= 1 required");
    const Rat four(4);
    if (abs(theta.t1.lo) > four || abs(theta.t1.hi) > four ||
        abs(theta.t2.lo) > four || abs(theta.t2.hi) > four)
        throw DomainError("best_approx_oracle: box out of the supported range");
    if (!mpz_fits_slong_p(T.get_mpz_t()) || T > Int(1000000000))
        throw EnumerationLimit("best_approx_oracle: T exceeds the scan limit");
    long Tl = T.get_si();

    // dyadic outward screen at 56 fractional bits; exact rationals only at
    // candidate drops and ambiguities
    constexpr unsigned E = 56;
    const i128 S = i128(1) << E;
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, E);
    auto dyadic = [&](const Rat& r, bool up) -> i128 {
        Rat s = r * Rat(scale);
        Int z = up ? rat_ceil(s) : rat_floor(s);
        return i128(z.get_si());  // |r| <= 4 so this fits easily
    };
    const i128 L1 = dyadic(theta.t1.lo, false), U1 = dyadic(theta.t1.hi, true);
    const i128 L2 = dyadic(theta.t2.lo, false), U2 = dyadic(theta.t2.hi, true);

    auto exact_dist = [&](long q) {
        RatInterval x1 = Rat(q) * theta.t1;
        RatInterval x2 = Rat(q) * theta.t2;
        ExactAxis a1 = exact_axis(x1);
        ExactAxis a2 = exact_axis(x2);
        return std::tuple<RatInterval, Int, Int, bool>(
            interval_sq(a1.dist) + interval_sq(a2.dist), a1.p, a2.p,
            a1.unique_p && a2.unique_p);
    };

    std::vector<BestApproxEntry> out;
    RatInterval record;
    bool have = false;
    i128 rec_hi_s = 0;  // outward dyadic image of record.hi, dist^2 scale 2^(2E)

    auto set_record = [&](const RatInterval& r) {
        record = r;
        Rat scaled = r.hi * Rat(scale) * Rat(scale);  // dist^2 scale is 2^(2E)
        rec_hi_s = to_i128(rat_ceil(scaled));
    };

    for (long q = 1; q <= Tl; ++q) {
        if (have) {
            AxisDist a1 = axis_distance(q * L1, q * U1, S);
            AxisDist a2 = axis_distance(q * L2, q * U2, S);
            i128 dlo = a1.lo * a1.lo + a2.lo * a2.lo;
            if (dlo > rec_hi_s) continue;  // certainly no drop
        }
        auto [dist, p1, p2, unique] = exact_dist(q);
        if (!have) {
            if (!unique)
                throw InsufficientPrecision("best approximation at q=1 is ambiguous");
            out.push_back({Int(q), p1, p2, dist, false});
            set_record(dist);
            have = true;
            continue;
        }
        if (dist.lo > record.hi) continue;  // no drop
        if (dist.hi < record.lo) {
            if (!unique)
                throw InsufficientPrecision(
                    "minimizing p ambiguous at q=" + std::to_string(q));
            // flag a tie when the runner-up p cannot be separated
            bool tie = false;
            RatInterval x1 = Rat(q) * theta.t1;
            RatInterval x2 = Rat(q) * theta.t2;
            for (int s1 = -1; s1 <= 1 && !tie; ++s1)
                for (int s2 = -1; s2 <= 1 && !tie; ++s2) {
                    if (s1 == 0 && s2 == 0) continue;
                    RatInterval d1 = x1 - RatInterval(Rat(p1 + s1));
                    RatInterval d2 = x2 - RatInterval(Rat(p2 + s2));
                    RatInterval alt = interval_sq(d1) + interval_sq(d2);
                    if (alt.lo <= dist.hi) tie = true;
                }
            out.push_back({Int(q), p1, p2, dist, tie});
            set_record(dist);
            continue;
        }
        if (theta.t1.width() == 0 && theta.t2.width() == 0) continue;  // exact: equal, no drop
        throw InsufficientPrecision("undecidable best-approximation comparison at q=" +
                                    std::to_string(q));
    }
    return out;
}

}  // namespace dirspec
