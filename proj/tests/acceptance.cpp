// Acceptance suite: drives the reference configuration end to end and
// checks every exit criterion at its stated tolerance, printing one
// pass/fail line per criterion.

#include <algorithm>
#include <functional>
#include <iostream>
#include <vector>

#include "dirspec/analysis.hpp"
#include "dirspec/conic.hpp"
#include "dirspec/record.hpp"

using namespace dirspec;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void criterion(int n, const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    if (!ok) ++g_failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << name;
    if (!ok && !err.empty()) std::cout << "  (" << err << ")";
    std::cout << "\n";
    for (const std::string& s : g_notes) std::cout << "       " << s << "\n";
    g_notes.clear();
}

void note(const std::string& s) { g_notes.push_back(s); }

struct Rng {
    unsigned long long s = 0xa5a5a5a51234fedcULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
    Rat pos_rat(long nmax, long dmax) { return make_rat(range(1, nmax), range(1, dmax)); }
};

const Int kEnumLimit(10000000);

}  // namespace

int main() {
    const Rat lambda = make_rat(1, 2);
    const Rat epsilon = make_rat(1, 100);

    RunConfig cfg;
    cfg.mode = Mode::theorem2;
    cfg.lambda = lambda;
    cfg.epsilon = epsilon;
    cfg.steps = 8;
    cfg.enum_limit = kEnumLimit;

    RunRecord rec;
    bool constructed = false;

    criterion(1, "8-step run, every condition exact, enumeration to 1e7 then certificates", [&] {
        ParameterSchedule sch = schedule_from_config(cfg);
        ConstructionState st = construct_run(sch, kEnumLimit);
        rec = build_record(cfg, std::move(st));
        constructed = true;
        if (rec.state.max_nu() != 8) return false;
        bool ok = true;
        for (const StepRecord& s : rec.state.steps) {
            ok = ok && s.cond.all_ok();
            bool small = Rat(s.w.q) <= Rat(kEnumLimit);
            if (s.nu >= 2) {
                CertMode want = small ? CertMode::enumerated : CertMode::certified;
                ok = ok && (s.cond.c4_mode == want);
            }
            if (s.nu >= 3) {
                bool prev_small =
                    Rat(rec.state.q(s.nu - 1)) <= Rat(kEnumLimit);
                CertMode want = prev_small ? CertMode::enumerated : CertMode::certified;
                ok = ok && (s.cond.c5_mode == want);
            }
        }
        note("q_8 has " + std::to_string(rec.state.q(8).get_str().size()) + " digits");
        VerifyResult ver = verify_record(rec, kEnumLimit);
        return ok && ver.ok();
    });

    if (!constructed) {
        std::cout << "construction failed; remaining criteria cannot run\n";
        return 1;
    }

    const ConstructionState& st = rec.state;
    ThetaEnclosure enc = theta_enclosure(st, 8);

    criterion(2, "every certified approximant inside (lambda - eps, lambda]", [&] {
        DirichletEstimate est = dirichlet_estimate(st, 8, enc.box);
        bool ok = est.approximants.size() == 7;
        for (const Approximant& a : est.approximants) {
            ok = ok && a.value.lo > lambda - epsilon && a.value.hi <= lambda;
            if (a.nu >= 4) ok = ok && a.within_pivot_radius;
        }
        return ok;
    });

    criterion(3, "ratio bounds: below 1e6/eps^2, above 45/eps, and the schedule ceiling", [&] {
        const ParameterSchedule& sch = st.schedule;
        bool ok = true;
        for (int nu = 2; nu <= 8; ++nu) {
            Rat ratio = *st.steps[static_cast<size_t>(nu - 1)].ratio;
            ok = ok && ratio < Rat(1000000) / (epsilon * epsilon);
            if (nu >= 4) ok = ok && ratio * sch.at(nu).eps >= 45;
        }
        for (int nu = 2; nu <= 8; ++nu) {
            Rat bk2 = sch.B_plus(nu) * Rat(sch.at(nu).k) * Rat(sch.at(nu).k);
            ok = ok && bk2 <= Rat(60000) / (sch.eps_star * sch.eps_star);
        }
        return ok;
    });

    criterion(4, "brute force to min(q_5, 1e7) reproduces the best-approximation prefix", [&] {
        Int T = std::min(st.q(5), Int(kEnumLimit));
        std::vector<BestApproxEntry> seq = best_approx_oracle(enc.box, T);
        std::vector<int> expect;
        for (int nu = 1; nu <= st.max_nu(); ++nu)
            if (st.q(nu) <= T) expect.push_back(nu);
        if (seq.size() != expect.size()) return false;
        bool ok = true;
        for (size_t i = 0; i < seq.size(); ++i) {
            const IntVec3& w = st.w(expect[i]);
            ok = ok && seq[i].q == w.q && seq[i].p1 == w.p1 && seq[i].p2 == w.p2 &&
                 !seq[i].tie_p;
        }
        note("scanned q <= " + T.get_str() + ", matched " + std::to_string(seq.size()) +
             " best approximations, no ties");
        return ok;
    });

    criterion(5, "volume ceiling (q R^2)^2 <= 4/3 at every step", [&] {
        bool ok = true;
        for (const StepRecord& s : st.steps) {
            ok = ok && s.cond.mahler_ok;
            if (s.v_over_pi) ok = ok && (*s.v_over_pi) * (*s.v_over_pi) <= make_rat(4, 3);
        }
        return ok;
    });

    criterion(6, "growth mode: 6 steps with every ratio above its target", [&] {
        ParameterSchedule sch = make_schedule_theorem1(lambda, {}, 6);
        ConstructionState g = construct_run(sch, kEnumLimit);
        if (g.max_nu() != 6) return false;
        bool ok = true;
        for (const StepRecord& s : g.steps) ok = ok && s.cond.all_ok();
        // q_{nu+1}/q_nu >= nu^2 for every nu
        for (int nu = 1; nu <= 5; ++nu) {
            Rat ratio = make_rat(g.q(nu + 1), g.q(nu));
            ok = ok && ratio >= Rat(nu) * Rat(nu);
        }
        return ok;
    });

    criterion(7, "geometry suite: apex identity, gap bounds, mapping, lattice emptiness", [&] {
        Rng rng;
        bool ok = true;
        // (a) apex substitution, 100 draws
        for (int i = 0; i < 100 && ok; ++i) {
            Rat q = rng.pos_rat(60, 8), a = rng.pos_rat(90, 8), d_sq = rng.pos_rat(40, 12);
            Rat y_sq = hyperbola_pair_apex_sq(q, d_sq);
            ok = ok && y_sq == make_rat(4, 3) * d_sq;
            Rat x_sq = (2 * a + q) * (2 * a + q) / 3;
            Rat xy = 2 * (2 * a + q) / 3;
            for (int shift = 0; shift < 2 && ok; ++shift) {
                Rat as = a + Rat(shift) * q;
                Rat lhs = as * as * y_sq - 2 * as * d_sq * xy + d_sq * x_sq +
                          q * q * d_sq - q * q * y_sq;
                ok = ok && lhs == 0;
            }
        }
        if (!ok) note("apex identity failed");
        // (b) gap bounds on 1000 draws: 3(2/sqrt3 - lambda) < eps_lambda <= 1
        Rat hi_23 = sqrt_enclosure(make_rat(4, 3), 192).hi;
        for (int i = 0; i < 1000 && ok; ++i) {
            Rat lam = 1 + make_rat(rng.range(1, 15470), 100000);
            if (lam * lam >= make_rat(4, 3)) continue;
            RatInterval eps = epsilon_lambda(RatInterval(lam), 192);
            ok = ok && eps.hi <= 1 && 3 * (hi_23 - lam) < eps.lo;
        }
        if (!ok) note("gap bound failed");
        // (c) mapping round trip on 1000 draws
        for (int i = 0; i < 1000 && ok; ++i) {
            Rat q = rng.pos_rat(40, 6), d_sq = rng.pos_rat(25, 9);
            Rat x2 = make_rat(rng.range(-300, 300), rng.range(1, 9));
            Rat y2 = rng.pos_rat(60, 7);
            auto [x1, y1] = map_f(q, d_sq, x2, y2);
            auto [xb, yb] = map_f_inverse(q, d_sq, x1, y1);
            ok = ok && xb == x2 && yb == y2;
        }
        if (!ok) note("mapping round trip failed");
        // (d) lattice emptiness, 100 valid draws per case, doubled dilation
        // as the negative control
        for (int done = 0, guard = 0; done < 100 && ok && guard < 10000; ++guard) {
            // case 1: omega above 1/2 keeps the uniform dilation 1/omega sound
            Rat eps = make_rat(rng.range(2, 9), 1000);
            Rat omega = make_rat(rng.range(55, 95), 100);
            Rat alpha = omega - eps;
            Rat lam = alpha + eps / 2;
            Rat q(rng.range(2, 40)), a0(rng.range(0, 39));
            if (a0 >= q) a0 = q - 1;
            Rat d_sq = rng.pos_rat(9, 5);
            long k = rng.range(2, 50);
            Rat x2 = (a0 + (Rat(k) + make_rat(1, 2)) * q) * lam;
            Rat t1 = dilation_coefficient(CaseTag::case1, omega);
            EllipseSpec e{q, x2, lam, d_sq, t1};
            ok = ok && ellipse_lattice_empty(e, q.get_num(), a0.get_num(), Int(2000000));
            EllipseSpec dbl{q, x2, lam, d_sq, 2 * t1};
            ok = ok && !ellipse_lattice_empty(dbl, q.get_num(), a0.get_num(), Int(2000000));
            ++done;
        }
        if (!ok) note("case-1 lattice emptiness failed");
        for (int done = 0, guard = 0; done < 100 && ok && guard < 10000; ++guard) {
            // case 2: sample inside the window where the dangerous points
            // stay excluded: lambda^2 (t2^2 - 1/4) < 1
            Rat eps = make_rat(rng.range(2, 9), 1000);
            Rat omega = 1 + make_rat(rng.range(200, 1400), 10000);
            Rat alpha = omega - eps;
            if (!(alpha > 1) || (omega + eps) * (omega + eps) >= make_rat(4, 3)) continue;
            Rat t2 = dilation_coefficient(CaseTag::case2, omega, 96);
            Rat lam = alpha + eps / 2;
            if (lam * lam * (t2 * t2 - make_rat(1, 4)) >= 1) continue;
            Rat q(rng.range(2, 40)), a0(rng.range(0, 39));
            if (a0 >= q) a0 = q - 1;
            Rat d_sq = rng.pos_rat(9, 5);
            long k = rng.range(2, 50);
            Rat x2 = (a0 + (Rat(k) + make_rat(1, 2)) * q) * lam;
            EllipseSpec e{q, x2, lam, d_sq, t2};
            ok = ok && ellipse_lattice_empty(e, q.get_num(), a0.get_num(), Int(2000000));
            EllipseSpec dbl{q, x2, lam, d_sq, 2 * t2};
            ok = ok && !ellipse_lattice_empty(dbl, q.get_num(), a0.get_num(), Int(2000000));
            ++done;
        }
        if (!ok) note("case-2 lattice emptiness failed");
        return ok;
    });

    criterion(8, "ratio/accuracy audit raises no finding", [&] {
        DirichletEstimate est = dirichlet_estimate(st, 8, enc.box);
        RatioStats rs = ratio_stats(st);
        return proposition3_check(est.running_sup.hi, rs.m_estimate);
    });

    criterion(9, "100 random single-coordinate mutations all detected", [&] {
        Rng rng;
        std::vector<IntVec3> ws = st.vectors();
        for (int i = 0; i < 100; ++i) {
            std::vector<IntVec3> bad = ws;
            size_t step = static_cast<size_t>(rng.range(0, 7));
            int coord = static_cast<int>(rng.range(0, 2));
            Int delta(rng.range(0, 1) == 0 ? 1 : -1);
            if (coord == 0) bad[step].q += delta;
            else if (coord == 1) bad[step].p1 += delta;
            else bad[step].p2 += delta;
            VerifyResult res = verify_history(bad, st.schedule, kEnumLimit);
            if (res.ok()) {
                note("undetected mutation at step " + std::to_string(step + 1) + " coord " +
                     std::to_string(coord));
                return false;
            }
        }
        return true;
    });

    std::cout << (g_failures == 0 ? "all criteria passed\n"
                                  : std::to_string(g_failures) + " criteria failed\n");
    return g_failures == 0 ? 0 : 1;
}
