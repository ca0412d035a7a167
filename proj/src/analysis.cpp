#include "dirspec/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace dirspec {

DirichletEstimate dirichlet_estimate(const ConstructionState& st, int N, const ThetaBox& theta) {
    if (N > st.max_nu()) throw DomainError("dirichlet_estimate: not enough steps");
    DirichletEstimate est;
    est.steps_used = N;
    bool have_sup = false;
    for (int nu = 2; nu <= N; ++nu) {
        const IntVec3& prev = st.w(nu - 1);
        RatInterval d1 = Rat(prev.q) * theta.t1 - RatInterval(Rat(prev.p1));
        RatInterval d2 = Rat(prev.q) * theta.t2 - RatInterval(Rat(prev.p2));
        RatInterval value = Rat(st.q(nu)) * (interval_sq(d1) + interval_sq(d2));

        Approximant a;
        a.nu = nu;
        a.v_over_pi = *st.steps[static_cast<size_t>(nu - 1)].v_over_pi;
        a.value = value;
        const Rat& eps = st.schedule.at(nu).eps;
        a.pivot_radius = eps * eps * a.v_over_pi / 30;
        a.within_pivot_radius =
            RatInterval(a.v_over_pi - a.pivot_radius, a.v_over_pi + a.pivot_radius)
                .contains(value);
        if (!have_sup) {
            est.running_sup = value;
            have_sup = true;
        } else {
            est.running_sup =
                RatInterval(std::max(est.running_sup.lo, value.lo),
                            std::max(est.running_sup.hi, value.hi));
        }
        est.approximants.push_back(std::move(a));
    }
    return est;
}

DirichletEstimate dirichlet_estimate(const ConstructionState& st, int N) {
    return dirichlet_estimate(st, N, theta_enclosure(st, st.max_nu()).box);
}

RatioStats ratio_stats(const ConstructionState& st, int tail_start) {
    if (st.max_nu() < 2) throw DomainError("ratio_stats needs at least 2 steps");
    RatioStats rs;
    rs.tail_start = tail_start;
    bool have_tail = false;
    for (int nu = 2; nu <= st.max_nu(); ++nu) {
        Rat ratio = make_rat(st.q(nu), st.q(nu - 1));
        if (nu == 2 || ratio > rs.max_ratio) rs.max_ratio = ratio;
        if (nu >= tail_start && (!have_tail || ratio > rs.m_estimate)) {
            rs.m_estimate = ratio;
            have_tail = true;
        }
        rs.ratios.emplace_back(nu, ratio);
    }
    if (!have_tail) rs.m_estimate = rs.max_ratio;
    return rs;
}

bool proposition3_check(const Rat& d_hi, const Rat& m_lo) {
    if (sgn(d_hi) <= 0) throw DomainError("proposition3_check needs d_hi > 0");
    return m_lo * 36 * d_hi * d_hi >= 1;
}

std::vector<BadnessRow> badness_report(const std::vector<BestApproxEntry>& oracle,
                                       const Int& T, const std::vector<Rat>& gamma_grid) {
    std::vector<BadnessRow> rows;
    (void)T;
    for (const Rat& gamma : gamma_grid) {
        BadnessRow row{gamma, true, true, Int(0)};
        Rat g_sq = gamma * gamma;
        // q psi(q)^2 grows within each constancy segment of psi, so the
        // infimum over the scan sits at the drop points q_i themselves
        for (size_t i = 0; i < oracle.size() && row.holds && row.decided; ++i) {
            RatInterval lhs = Rat(oracle[i].q) * oracle[i].psi_sq;
            if (lhs.lo > g_sq) continue;
            row.first_fail_q = oracle[i].q;
            if (lhs.hi <= g_sq)
                row.holds = false;
            else
                row.decided = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string analysis_table(const ConstructionState& st, const DirichletEstimate& est) {
    std::ostringstream out;
    out << "nu\tq\tratio\tR_sq\tV_over_pi\tapprox_lo\tapprox_hi\t"
           "cond_1\tcond_2\tcond_3\tcond_4\tcond_5\tcond_6\tcert_mode\n";
    for (const StepRecord& s : st.steps) {
        out << s.nu << '\t' << s.w.q.get_str() << '\t'
            << (s.ratio ? rat_str(*s.ratio) : "-") << '\t'
            << (s.r_sq ? rat_str(*s.r_sq) : "-") << '\t'
            << (s.v_over_pi ? rat_str(*s.v_over_pi) : "-") << '\t';
        const Approximant* ap = nullptr;
        for (const Approximant& a : est.approximants)
            if (a.nu == s.nu) ap = &a;
        out << (ap ? rat_str(ap->value.lo) : "-") << '\t'
            << (ap ? rat_str(ap->value.hi) : "-");
        for (CondStatus c : s.cond.status) out << '\t' << to_string(c);
        out << '\t' << to_string(s.cond.c4_mode) << '\n';
    }
    return out.str();
}

}  // namespace dirspec
