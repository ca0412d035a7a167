#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dirspec/lattice.hpp"
#include "dirspec/schedule.hpp"

// The inductive construction: seeding, the step search, the per-step
// verifier for the six acceptance conditions, and the theta enclosure.
//
// Conditions, per step nu:
//   1  (w_{nu-2}, w_{nu-1}, w_nu) is a basis of Z^3
//   2  q_nu / q_{nu-1} within [B- k^2, B+ k^2]
//   3  R_nu within [H- R_{nu-1} / k, H+ R_{nu-1} / k]   (checked on squares)
//   4  the extended cylinder around v_nu of height q_nu holds exactly
//      {0, w_{nu-1}, w_nu, w_nu - w_{nu-1}}
//   5  the extended inner cylinder of height q_{nu-1} holds exactly
//      {0, w_{nu-2}, w_{nu-1}}
//   6  q_nu R_nu^2 inside (alpha_nu, omega_nu)
// Seed steps (nu <= 3) are exempt from 2 and 3: no admissible k allows
// ratios small enough for an enumerable base, and the induction only needs
// them from the first constructed step on.

namespace dirspec {

struct SeedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CondStatus { pass, fail, vacuous, seed_exempt };
enum class CertMode { none, enumerated, certified };

std::string to_string(CondStatus s);
std::string to_string(CertMode m);

struct ConditionReport {
    std::array<CondStatus, 6> status{CondStatus::vacuous, CondStatus::vacuous,
                                     CondStatus::vacuous, CondStatus::vacuous,
                                     CondStatus::vacuous, CondStatus::vacuous};
    CertMode c4_mode = CertMode::none;
    CertMode c5_mode = CertMode::none;
    bool mahler_ok = true;  // (q R^2)^2 <= 4/3, the critical-determinant ceiling
    std::vector<std::string> failures;

    bool all_ok() const {
        for (CondStatus s : status)
            if (s == CondStatus::fail) return false;
        return mahler_ok;
    }
};

struct StepRecord {
    int nu = 0;
    IntVec3 w;
    std::optional<Rat> r_sq;         // R_nu^2, nu >= 2
    std::optional<Rat> r_minus_sq;   // (R_nu^-)^2, nu >= 3
    std::optional<Rat> v_over_pi;    // q_nu R_nu^2
    std::optional<Rat> ratio;        // q_nu / q_{nu-1}
    std::optional<Rat> lambda_row;   // constructed steps: the row's lambda
    std::optional<Int> row_m;        // constructed steps: w_{nu-2} row index
    std::optional<Int> col_l;        // constructed steps: w_{nu-1} column index
    ConditionReport cond;
};

struct ThetaEnclosure {
    int nu = 0;
    RatVec2 center;
    Rat radius;
    ThetaBox box;
};

struct ConstructionState {
    ParameterSchedule schedule;
    std::vector<StepRecord> steps;

    int max_nu() const { return static_cast<int>(steps.size()); }
    const IntVec3& w(int nu) const { return steps.at(static_cast<size_t>(nu - 1)).w; }
    const Int& q(int nu) const { return w(nu).q; }
    std::vector<IntVec3> vectors() const;
};

// R_nu = |q_{nu-1} v_nu - p_{nu-1}| and R_nu^- = |q_{nu-2} v_nu - p_{nu-2}|,
// both squared, from the raw history (1-indexed by nu).
Rat r_sq_of(const std::vector<IntVec3>& ws, int nu);
Rat r_minus_sq_of(const std::vector<IntVec3>& ws, int nu);

// Checks the six conditions for step nu against the raw history.
// Conditions 4/5 switch from enumeration to certification above enum_limit.
// With fail_fast the cheap checks run first and the first failure returns
// immediately (candidate filtering); reports stay complete otherwise.
ConditionReport check_step_conditions(const std::vector<IntVec3>& ws,
                                      const ParameterSchedule& sch, int nu,
                                      const Int& enum_limit, bool fail_fast = false);

// Populates a StepRecord (derived values + condition report).
StepRecord make_step_record(const std::vector<IntVec3>& ws, const ParameterSchedule& sch,
                            int nu, const Int& enum_limit);

// Deterministic bounded search for w_1..w_3 satisfying every condition that
// is meaningful at the seed.  Builds min(3, schedule length) steps.
ConstructionState seed_construction(const ParameterSchedule& sch, const Int& enum_limit);

// Extends the state by w_{nu_next} = w_{nu-2} + m w_{nu-1} + l w_nu, with the
// row m and column l searched outward from the predicted window and every
// candidate gated by the exact verifier.
void inductive_step(ConstructionState& st, int nu_next, const Int& enum_limit);

// seed + steps up to the schedule length
ConstructionState construct_run(const ParameterSchedule& sch, const Int& enum_limit);

// Box around v_nu of certified radius eps_nu R_nu / (2 q_nu), outward.
ThetaEnclosure theta_enclosure(const ConstructionState& st, int nu, unsigned extra_bits = 0);

struct VerifyResult {
    std::vector<ConditionReport> reports;  // reports[nu-1]
    std::vector<std::string> problems;     // structural issues
    bool ok() const;
};

// Independent re-verification from a raw vector history.
VerifyResult verify_history(const std::vector<IntVec3>& ws, const ParameterSchedule& sch,
                            const Int& enum_limit);

}  // namespace dirspec
