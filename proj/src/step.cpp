#include <algorithm>

#include "dirspec/engine.hpp"

namespace dirspec {

namespace {

// offsets 0, +1, -1, +2, -2, ... for the centered-out candidate sweeps
Int sweep_offset(long i) {
    long k = (i + 1) / 2;
    return (i % 2 == 1) ? Int(k) : Int(-k);
}

}  // namespace

void inductive_step(ConstructionState& st, int nu_next, const Int& enum_limit) {
    if (st.max_nu() != nu_next - 1 || nu_next < 4)
        throw DomainError("inductive_step: state must end exactly at step nu_next - 1 >= 3");
    const ParameterSchedule& sch = st.schedule;
    const StepParams& sp = sch.at(nu_next);

    Frame fr = build_frame(st.w(nu_next - 1), st.w(nu_next - 2), st.w(nu_next - 3));
    Rat q(fr.q);
    Rat q2d2 = q * q * fr.d_sq;              // = q d / h
    Rat lambda_minus = q * fr.d_sq;          // = d/h, the current volume ratio
    Rat xi = (Rat(fr.a0) + (Rat(sp.k) + make_rat(1, 2)) * q) / q;

    // lambda(m) = q d^2 (f/d + m) / xi; aim at the middle of the window
    Rat lambda_mid = (sp.alpha + sp.omega) / 2;
    Int m_pred = rat_round(lambda_mid * xi / (q * fr.d_sq) - fr.f_over_d);

    std::vector<std::string> diags;
    auto diag = [&](const std::string& s) {
        if (diags.size() < 24) diags.push_back(s);
    };

    const long row_budget = 2 * (3L << 6) + 1;  // rows widened up to 3*2^6 each way
    for (long i = 0; i < row_budget; ++i) {
        Int m = m_pred + sweep_offset(i);
        Rat y_over_d = fr.f_over_d + Rat(m);
        if (sgn(y_over_d) <= 0) {
            diag("row m=" + m.get_str() + ": nonpositive y");
            continue;
        }
        Rat lambda = q * fr.d_sq * y_over_d / xi;
        if (!(sp.alpha < lambda && lambda < sp.omega)) {
            diag("row m=" + m.get_str() + ": lambda outside the window");
            continue;
        }
        // column window from the volume constraint alpha < q' R'^2 < omega
        Rat x2 = q2d2 * y_over_d;
        Rat num = x2 * x2 + q * q;
        Rat x_lo = num / (q2d2 * sp.omega);
        Rat x_hi = num / (q2d2 * sp.alpha);
        Int base = fr.g + m * fr.a0;
        Int l_min = rat_floor((x_lo - Rat(base)) / q) + 1;
        Int l_max = rat_ceil((x_hi - Rat(base)) / q) - 1;
        if (l_min > l_max) {
            diag("row m=" + m.get_str() + ": empty column window");
            continue;
        }
        // aim at the abscissa matching the row's lambda exactly: away from
        // it the base-plane section drifts onto the neighbouring lattice
        // rows (the margin shrinks like 1/k)
        Rat x_target = num / (q2d2 * lambda);
        Int l_mid = rat_round((x_target - Rat(base)) / q);
        l_mid = std::clamp(l_mid, l_min, l_max);

        const long col_budget = 48;
        for (long j = 0; j < col_budget; ++j) {
            Int l = l_mid + sweep_offset(j);
            if (l < l_min || l > l_max) continue;
            IntVec3 cand = st.w(nu_next - 3) + m * st.w(nu_next - 2) + l * st.w(nu_next - 1);
            if (cand.q <= st.q(nu_next - 1)) continue;
            std::vector<IntVec3> ws = st.vectors();
            ws.push_back(cand);
            ConditionReport rep = check_step_conditions(ws, sch, nu_next, enum_limit, true);
            if (rep.all_ok()) {
                StepRecord rec = make_step_record(ws, sch, nu_next, enum_limit);
                rec.lambda_row = lambda;
                rec.row_m = m;
                rec.col_l = l;
                st.steps.push_back(std::move(rec));
                return;
            }
            diag("candidate m=" + m.get_str() + " l=" + l.get_str() + ": " +
                 (rep.failures.empty() ? "rejected" : rep.failures.front()));
        }
    }

    std::string msg = "existence window exhausted at step " + std::to_string(nu_next) +
                      " (window (" + rat_str(sp.alpha) + ", " + rat_str(sp.omega) + "))";
    for (const std::string& d : diags) msg += "\n  " + d;
    throw WindowExhausted(msg);
}

ConstructionState construct_run(const ParameterSchedule& sch, const Int& enum_limit) {
    ConstructionState st = seed_construction(sch, enum_limit);
    for (int nu = st.max_nu() + 1; nu <= sch.max_nu(); ++nu)
        inductive_step(st, nu, enum_limit);
    return st;
}

}  // namespace dirspec
