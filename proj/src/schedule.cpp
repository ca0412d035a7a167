#include "dirspec/schedule.hpp"

#include <algorithm>

namespace dirspec {

namespace {

const Rat kFourThirds = make_rat(4, 3);

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("schedule invariant violated: " + what);
}

bool window_fits(CaseTag tag, const Rat& alpha, const Rat& omega, const Rat& eps) {
    if (tag == CaseTag::case1) return alpha >= eps && omega <= 1 - eps;
    // case 2: [alpha, omega] inside [1, 2/sqrt(3) - eps], right end squared
    return alpha >= 1 && (omega + eps) * (omega + eps) <= kFourThirds;
}

}  // namespace

const StepParams& ParameterSchedule::at(int nu) const {
    if (nu < 1 || nu > max_nu()) throw ConfigError("schedule has no step " + std::to_string(nu));
    return rows[static_cast<size_t>(nu - 1)];
}

Rat ParameterSchedule::B_minus(int nu) const {
    const StepParams &c = at(nu), &p = at(nu - 1);
    return c.alpha * c.alpha / (p.omega * c.omega);
}

Rat ParameterSchedule::B_plus(int nu) const {
    const StepParams &c = at(nu), &p = at(nu - 1);
    return 5 * c.omega * c.omega / (p.alpha * c.alpha);
}

Rat ParameterSchedule::H_minus(int nu) const {
    const StepParams &c = at(nu), &p = at(nu - 1);
    return p.alpha * c.alpha * c.alpha / (5 * p.omega * c.omega * c.omega);
}

Rat ParameterSchedule::H_plus_factor(int nu) const {
    const StepParams &c = at(nu), &p = at(nu - 1);
    return p.omega * c.omega * c.omega / (p.alpha * c.alpha * c.alpha);
}

Rat ParameterSchedule::H_plus_sq(int nu) const {
    Rat w = H_plus_factor(nu);
    return 5 * w * w;
}

Rat ParameterSchedule::eps_minus(int nu) const {
    const Rat& e = at(nu - 1).eps;
    return e * e;
}

Rat ParameterSchedule::phi(int nu) const {
    for (const auto& [n, v] : phi_table)
        if (n == nu) return v;
    return Rat(nu) * Rat(nu);
}

void ParameterSchedule::validate() const {
    const Rat eps_cap = make_rat(1, 100);
    for (int nu = 1; nu <= max_nu(); ++nu) {
        const StepParams& s = at(nu);
        require(s.nu == nu, "row numbering");
        require(sgn(s.eps) > 0 && s.eps <= eps_cap, "0 < eps_nu <= 1/100");
        if (nu > 1) require(s.eps <= at(nu - 1).eps, "eps_nu non-increasing");
        require(s.omega - s.alpha == s.eps, "omega - alpha = eps_nu");
        require(s.eps <= s.alpha, "eps_nu <= alpha_nu");
        require(s.omega <= 2 * s.alpha, "omega_nu <= 2 alpha_nu");
        require(window_fits(s.case_tag, s.alpha, s.omega, s.eps),
                "window outside its case interval at step " + std::to_string(nu));
        if (nu >= 2) {
            require(B_minus(nu) < B_plus(nu), "B- < B+");
            Rat hm = H_minus(nu);
            require(make_rat(1, 40) <= hm && hm <= make_rat(1, 5), "1/40 <= H- <= 1/5");
            Rat hp_sq = H_plus_sq(nu);
            require(Rat(5) <= hp_sq && hp_sq <= Rat(320), "sqrt5 <= H+ <= 8 sqrt5");
            // (ao): 3 H+ / eps <= k <= H- / (4 eps^2)
            Rat w = H_plus_factor(nu);
            Rat ke = Rat(s.k) * s.eps;
            require(45 * w * w <= ke * ke, "k >= 3 H+ / eps at step " + std::to_string(nu));
            require(4 * Rat(s.k) * s.eps * s.eps <= hm,
                    "k <= H- / (4 eps^2) at step " + std::to_string(nu));
            // consequences used downstream
            require(B_minus(nu) * Rat(s.k) * Rat(s.k) >= Rat(30) / s.eps, "B- k^2 >= 30/eps");
        }
    }
    if (mode == Mode::theorem2 && max_nu() >= 2) {
        for (int nu = 2; nu <= max_nu(); ++nu) {
            Rat bk2 = B_plus(nu) * Rat(at(nu).k) * Rat(at(nu).k);
            require(bk2 <= Rat(60000) / (eps_star * eps_star), "B+ k^2 <= 6e4 / eps*^2");
            require(bk2 < Rat(1000000) / (epsilon * epsilon), "B+ k^2 < 1e6 / eps^2");
        }
    }
}

Int k_growth_rule(const Rat& eps_star) {
    if (sgn(eps_star) <= 0) throw ConfigError("k rule needs eps_star > 0");
    return floor_sqrt(Rat(2880) / (eps_star * eps_star)) + 1;
}

Int k_lower_bound(const Rat& h_plus_factor, const Rat& eps) {
    return ceil_sqrt(45 * h_plus_factor * h_plus_factor / (eps * eps));
}

Int k_upper_bound(const Rat& h_minus, const Rat& eps) {
    return rat_floor(h_minus / (4 * eps * eps));
}

ParameterSchedule make_schedule_theorem2(const Rat& lambda, const Rat& epsilon, int steps) {
    if (steps < 0) throw ConfigError("steps must be nonnegative");
    if (sgn(epsilon) <= 0) throw ConfigError("epsilon must be positive");
    if (epsilon > make_rat(1, 25))
        throw ConfigError("epsilon too large: eps/4 must stay within the eps_nu <= 1/100 cap");
    if (lambda <= epsilon) throw ConfigError("epsilon < lambda violated");
    if (lambda * lambda > kFourThirds) throw ConfigError("lambda above 2/sqrt(3)");

    ParameterSchedule sch;
    sch.mode = Mode::theorem2;
    sch.lambda = lambda;
    sch.epsilon = epsilon;
    sch.eps_star = epsilon / 4;

    // candidate constant windows, lower notch first, case 1 preferred
    struct Candidate {
        Rat alpha;
        CaseTag tag;
    };
    const Rat& es = sch.eps_star;
    Candidate cands[4] = {{lambda - 3 * es, CaseTag::case1},
                          {lambda - 3 * es, CaseTag::case2},
                          {lambda - 2 * es, CaseTag::case1},
                          {lambda - 2 * es, CaseTag::case2}};
    std::optional<Candidate> chosen;
    for (const Candidate& c : cands) {
        if (sgn(c.alpha) <= 0) continue;
        if (c.alpha < es) continue;  // (ae)
        if (window_fits(c.tag, c.alpha, c.alpha + es, es)) {
            chosen = c;
            break;
        }
    }
    if (!chosen)
        throw ConfigError("no constant window fits either case (window straddles 1)");

    // k: growth rule clamped into the admissible range (constant windows, so
    // the range is step-independent)
    Rat alpha = chosen->alpha, omega = chosen->alpha + es;
    Rat h_plus_factor = omega * omega * omega / (alpha * alpha * alpha);
    Rat h_minus = alpha * alpha * alpha / (5 * omega * omega * omega);
    Int k_lo = k_lower_bound(h_plus_factor, es);
    Int k_hi = k_upper_bound(h_minus, es);
    if (k_lo > k_hi)
        throw ConfigError("no admissible k: 3H+/eps <= k <= H-/(4 eps^2) is empty");
    Int k = std::clamp(k_growth_rule(es), k_lo, k_hi);

    for (int nu = 1; nu <= steps; ++nu)
        sch.rows.push_back({nu, es, alpha, omega, k, chosen->tag});
    if (steps > 0) sch.validate();
    return sch;
}

ParameterSchedule make_schedule_theorem1(const Rat& lambda,
                                         const std::vector<std::pair<int, Rat>>& phi_table,
                                         int steps) {
    if (steps < 0) throw ConfigError("steps must be nonnegative");
    if (sgn(lambda) < 0) throw ConfigError("lambda must be nonnegative");
    if (lambda * lambda > kFourThirds) throw ConfigError("lambda above 2/sqrt(3)");

    ParameterSchedule sch;
    sch.mode = Mode::theorem1;
    sch.lambda = lambda;
    sch.epsilon = 0;
    sch.eps_star = 0;
    sch.phi_table = phi_table;

    Rat eps = make_rat(1, 100);
    for (int nu = 1; nu <= steps; ++nu) {
        Rat alpha;
        CaseTag tag;
        if (lambda <= 1) {
            tag = CaseTag::case1;
            // the floor 30*eps keeps the window aspect ratio near 1, which
            // keeps the admissible k-range nonempty at every accuracy
            alpha = std::max(Rat(30 * eps), Rat(lambda - 2 * eps));
            alpha = std::min(alpha, Rat(Rat(1) - 2 * eps));
        } else {
            tag = CaseTag::case2;
            alpha = std::max(Rat(1), Rat(lambda - 2 * eps));
        }
        Rat omega = alpha + eps;
        if (!window_fits(tag, alpha, omega, eps))
            throw ConfigError("window for lambda does not fit its case at step " +
                              std::to_string(nu));
        sch.rows.push_back({nu, eps, alpha, omega, Int(2), tag});
        eps /= 2;
    }

    // choose k_nu after the windows exist (needs the previous row)
    for (int nu = 2; nu <= steps; ++nu) {
        StepParams& s = sch.rows[static_cast<size_t>(nu - 1)];
        Rat target = std::max(sch.phi(nu), sch.phi(nu - 1));
        Int k = k_lower_bound(sch.H_plus_factor(nu), s.eps);
        Int k_phi = ceil_sqrt(std::max(Rat(0), target) / sch.B_minus(nu));
        k = std::max(k, k_phi);
        Int k_hi = k_upper_bound(sch.H_minus(nu), s.eps);
        if (k > k_hi)
            throw ConfigError("growth target phi(" + std::to_string(nu) +
                              ") needs k above H-/(4 eps^2)");
        s.k = k;
    }
    if (steps > 0) sch.rows[0].k = steps > 1 ? sch.rows[1].k : Int(2);
    if (steps > 0) sch.validate();
    return sch;
}

}  // namespace dirspec
