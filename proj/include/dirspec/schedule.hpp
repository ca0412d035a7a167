#pragma once

#include <optional>
#include <vector>

#include "dirspec/conic.hpp"
#include "dirspec/exact.hpp"

// The per-step parameter system: windows (alpha_nu, omega_nu) of width
// eps_nu, the multiplier k_nu, and the derived ratio/radius bounds
//   B-  = alpha_nu^2 / (omega_{nu-1} omega_nu)
//   B+  = 5 omega_nu^2 / (alpha_{nu-1} alpha_nu)
//   H-  = alpha_{nu-1} alpha_nu^2 / (5 omega_{nu-1} omega_nu^2)
//   H+  = sqrt(5) omega_{nu-1} omega_nu^2 / (alpha_{nu-1} alpha_nu^2)
// with k_nu constrained by 3 H+ / eps <= k <= H- / (4 eps^2).
// H+ carries sqrt(5); it is stored via its rational factor so bounds are
// checked on squares.

namespace dirspec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { theorem1, theorem2 };

struct StepParams {
    int nu = 0;
    Rat eps;
    Rat alpha;
    Rat omega;
    Int k;
    CaseTag case_tag = CaseTag::case1;
};

struct ParameterSchedule {
    Mode mode = Mode::theorem2;
    Rat lambda;
    Rat epsilon;   // theorem2 input accuracy
    Rat eps_star;  // theorem2: epsilon / 4
    std::vector<std::pair<int, Rat>> phi_table;  // theorem1 growth targets
    std::vector<StepParams> rows;                // rows[i] is step nu = i+1

    int max_nu() const { return static_cast<int>(rows.size()); }
    const StepParams& at(int nu) const;

    // derived quantities, defined for nu >= 2
    Rat B_minus(int nu) const;
    Rat B_plus(int nu) const;
    Rat H_minus(int nu) const;
    Rat H_plus_factor(int nu) const;  // H+ = sqrt(5) * factor
    Rat H_plus_sq(int nu) const;
    Rat eps_minus(int nu) const;  // eps_{nu-1}^2

    Rat phi(int nu) const;  // theorem1 growth target (1 when absent)

    // Checks every schedule invariant; throws ConfigError naming the
    // violated inequality.
    void validate() const;
};

// Constant windows at lambda - 3eps*, lambda - 2eps* (or one notch higher),
// case chosen by which window fits; k from the clamped floor(24 sqrt5/eps*)+1
// rule.
ParameterSchedule make_schedule_theorem2(const Rat& lambda, const Rat& epsilon, int steps);

// Windows shrinking toward lambda with eps_nu = (1/100) 2^(1-nu) and k_nu
// boosted until B- k^2 >= max(phi(nu-1), phi(nu)).
ParameterSchedule make_schedule_theorem1(const Rat& lambda,
                                         const std::vector<std::pair<int, Rat>>& phi_table,
                                         int steps);

// exact floor(24 sqrt(5) / eps_star) + 1
Int k_growth_rule(const Rat& eps_star);
// smallest integer >= 3 H+ / eps (the sqrt(5) handled by squaring)
Int k_lower_bound(const Rat& h_plus_factor, const Rat& eps);
// largest integer <= H- / (4 eps^2)
Int k_upper_bound(const Rat& h_minus, const Rat& eps);

}  // namespace dirspec
