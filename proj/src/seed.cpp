#include <algorithm>

#include "dirspec/engine.hpp"

namespace dirspec {

namespace {

// q2 p3 - q3 p2 = u with cross(p2, u) = +-q2 keeps (p2, p3) a basis of Z^2;
// solutions u lie on the two lines u0 + t p2.
struct CrossLine {
    Int u1_0, u2_0;  // particular solution of c*u2 - e*u1 = rhs
};

CrossLine solve_cross(const Int& c, const Int& e, const Int& rhs) {
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t());
    // c x + e y = 1  =>  c (x rhs) - e (-(y rhs)) = rhs
    return {-(y * rhs), x * rhs};
}

// margin factor 65/64 separating non-best points from the running record,
// so the later (tiny) drift from v_3 to theta cannot create or destroy a
// best approximation below q_3.  Seed magnitudes fit comfortably in native
// words, which keeps this O(q3) scan cheap.
bool separation_scan(const Int& q2_z, const IntVec3& w2, const IntVec3& w3) {
    using i64 = long long;
    using i128 = __int128;
    const long q2 = q2_z.get_si();
    const long q3 = w3.q.get_si();
    const i64 p21 = w2.p1.get_si(), p22 = w2.p2.get_si();
    const i64 p31 = w3.p1.get_si(), p32 = w3.p2.get_si();

    i64 record = p31 * p31 + p32 * p32;  // psi(1)^2 at v3, scale q3^2
    i64 u1 = q2 * p31 - i64(q3) * p21;
    i64 u2 = q2 * p32 - i64(q3) * p22;
    i64 drop_num = u1 * u1 + u2 * u2;  // psi(q2)^2 at v3, scale q3^2
    if (i128(drop_num) * 65 * 65 > i128(record) * 64 * 64) return false;

    const i64 den = 2 * i64(q3);
    i64 x1 = p31, x2 = p32;
    for (long x = 2; x < q3; ++x) {
        x1 += p31;
        x2 += p32;
        if (x == q2) {
            record = drop_num;
            continue;
        }
        i64 d1 = x1 - (2 * x1 + q3) / den * q3;  // positive operands: plain
        i64 d2 = x2 - (2 * x2 + q3) / den * q3;  // division is the floor
        i64 dist = d1 * d1 + d2 * d2;
        if (x == q3 - q2) {
            // w3 - w2 attains exactly the record distance; keeping it out of
            // the cylinders is the next step's business, not a margin matter
            if (dist < record) return false;
            continue;
        }
        if (i128(dist) * 64 * 64 < i128(record) * 65 * 65) return false;
    }
    return true;
}

bool separation_scan_fits(const Int& q2, const IntVec3& w2, const IntVec3& w3) {
    const Int cap = (Int(1) << 31);
    return q2 < cap && w3.q < cap && abs(w2.p1) < cap && abs(w2.p2) < cap &&
           abs(w3.p1) < cap && abs(w3.p2) < cap;
}

struct ThirdCandidate {
    Int q3;
    Int p31, p32;
    bool operator<(const ThirdCandidate& o) const {
        if (int c = cmp(q3, o.q3)) return c < 0;
        if (int c = cmp(p31, o.p31)) return c < 0;
        return cmp(p32, o.p32) < 0;
    }
};

}  // namespace

ConstructionState seed_construction(const ParameterSchedule& sch, const Int& enum_limit) {
    ConstructionState st;
    st.schedule = sch;
    int want = std::min(3, sch.max_nu());
    if (want == 0) return st;

    const IntVec3 w1{1, 0, 0};
    if (want == 1) {
        std::vector<IntVec3> ws{w1};
        st.steps.push_back(make_step_record(ws, sch, 1, enum_limit));
        return st;
    }

    const StepParams& s2 = sch.at(2);
    // start where the volume window has at least unit width, so candidates
    // appear at every q2 and the third-step scan stays small
    Int q2_start = std::max(Int(2), rat_ceil(Rat(1) / s2.eps));
    const Int q2_cap = q2_start + 200000;

    for (Int q2 = q2_start; q2 <= q2_cap; ++q2) {
        Int n_lo = rat_floor(s2.alpha * Rat(q2)) + 1;
        Int n_hi = rat_ceil(s2.omega * Rat(q2)) - 1;
        for (Int n2 = n_lo; n2 <= n_hi; ++n2) {
            if (!(s2.alpha * Rat(q2) < Rat(n2) && Rat(n2) < s2.omega * Rat(q2))) continue;
            for (Int c = 1; 2 * c * c <= n2; ++c) {
                Int e_sq = n2 - c * c;
                Int e = floor_sqrt(Rat(e_sq));
                if (e * e != e_sq) continue;
                if (e < c) continue;
                Int g;
                mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t());
                if (g != 1) continue;
                if (2 * e + 2 > q2) continue;  // keep v2 inside (0, 1/2)^2

                IntVec3 w2{q2, c, e};
                {
                    std::vector<IntVec3> ws{w1, w2};
                    if (!check_step_conditions(ws, sch, 2, enum_limit, true).all_ok()) continue;
                }
                if (want == 2) {
                    std::vector<IntVec3> ws{w1, w2};
                    st.steps.push_back(make_step_record(ws, sch, 1, enum_limit));
                    st.steps.push_back(make_step_record(ws, sch, 2, enum_limit));
                    return st;
                }

                // ---- third vector ------------------------------------
                const StepParams& s3 = sch.at(3);
                Rat q3_min_r(q2 + 1);
                if (sch.mode == Mode::theorem2) {
                    // accuracy margin 64 n2 n3 <= (q2 q3 eps*)^2, with
                    // n3 < omega q3 folded in
                    Rat bound = Rat(64 * n2) * s3.omega /
                                (Rat(q2) * Rat(q2) * sch.eps_star * sch.eps_star);
                    q3_min_r = std::max(q3_min_r, bound);
                } else {
                    q3_min_r = std::max(q3_min_r, Rat(sch.phi(2) * Rat(q2)));
                }
                Int q3_min = rat_ceil(q3_min_r);
                Int q3_max = 4 * q3_min + 60000;

                // enumerate lattice-compatible candidates along the two
                // cross lines, collecting cheap survivors
                Int xg, yg, gg;
                mpz_gcdext(gg.get_mpz_t(), xg.get_mpz_t(), yg.get_mpz_t(), c.get_mpz_t(),
                           e.get_mpz_t());
                std::vector<ThirdCandidate> cands;
                for (int sign = 0; sign < 2; ++sign) {
                    CrossLine line = solve_cross(c, e, sign == 0 ? q2 : -q2);
                    // |u0 + t p2|^2 <= omega q3_max bounds the t sweep
                    Rat A(n2);
                    Rat B = 2 * (Rat(line.u1_0) * Rat(c) + Rat(line.u2_0) * Rat(e));
                    Rat C0 = Rat(line.u1_0 * line.u1_0 + line.u2_0 * line.u2_0);
                    Rat disc = B * B - 4 * A * (C0 - s3.omega * Rat(q3_max));
                    if (sgn(disc) < 0) continue;
                    Rat root_hi = sqrt_enclosure(disc, 32).hi;
                    Int t_lo = rat_ceil((-B - root_hi) / (2 * A));
                    Int t_hi = rat_floor((-B + root_hi) / (2 * A));
                    for (Int t = t_lo; t <= t_hi; ++t) {
                        Int u1 = line.u1_0 + t * c, u2 = line.u2_0 + t * e;
                        Int n3 = u1 * u1 + u2 * u2;
                        // q3 range from alpha q3 < n3 < omega q3
                        Int lo = std::max(q3_min, Int(rat_floor(Rat(n3) / s3.omega) + 1));
                        Int hi = std::min(q3_max, Int(rat_ceil(Rat(n3) / s3.alpha) - 1));
                        if (lo > hi) continue;
                        // q3 must satisfy c q3 = -u1, e q3 = -u2 (mod q2)
                        Int r = (-(xg * u1 + yg * u2)) % q2;
                        if (sgn(r) < 0) r += q2;
                        if ((c * r + u1) % q2 != 0 || (e * r + u2) % q2 != 0) continue;
                        Int q3 = lo + ((r - lo) % q2 + q2) % q2;
                        for (; q3 <= hi; q3 += q2) {
                            if (!(s3.alpha * Rat(q3) < Rat(n3) && Rat(n3) < s3.omega * Rat(q3)))
                                continue;
                            Int p31 = (u1 + q3 * c) / q2, p32 = (u2 + q3 * e) / q2;
                            if (sgn(p31) <= 0 || sgn(p32) <= 0) continue;
                            if (2 * p31 + 2 > q3 || 2 * p32 + 2 > q3) continue;
                            // psi must strictly drop at q2
                            if (n3 * q2 * q2 >= n2 * q3 * q3) continue;
                            if (sch.mode == Mode::theorem2) {
                                Rat lhs = Rat(64 * n2 * n3);
                                Rat rhs = Rat(q2) * Rat(q3) * sch.eps_star;
                                if (lhs > rhs * rhs) continue;
                            }
                            cands.push_back({q3, p31, p32});
                        }
                    }
                }
                std::sort(cands.begin(), cands.end());

                int heavy_budget = 200;
                for (const ThirdCandidate& cand : cands) {
                    if (--heavy_budget < 0) break;
                    IntVec3 w3{cand.q3, cand.p31, cand.p32};
                    if (!is_unimodular(w1, w2, w3)) continue;
                    if (!separation_scan_fits(q2, w2, w3)) continue;
                    if (!separation_scan(q2, w2, w3)) continue;
                    std::vector<IntVec3> ws{w1, w2, w3};
                    if (!check_step_conditions(ws, sch, 3, enum_limit, true).all_ok()) continue;
                    st.steps.push_back(make_step_record(ws, sch, 1, enum_limit));
                    st.steps.push_back(make_step_record(ws, sch, 2, enum_limit));
                    st.steps.push_back(make_step_record(ws, sch, 3, enum_limit));
                    return st;
                }
            }
        }
    }
    throw SeedError("seed search exhausted the configured bounds");
}

}  // namespace dirspec
