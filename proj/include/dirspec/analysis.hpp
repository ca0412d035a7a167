#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirspec/engine.hpp"

// Empirical Diophantine analytics over a constructed run: certified
// per-step approximants of q_nu R_nu(theta)^2, ratio statistics, and the
// two one-directional consistency audits.

namespace dirspec {

struct Approximant {
    int nu = 0;
    Rat v_over_pi;            // exact q_nu R_nu^2 from the run
    RatInterval value;        // certified interval for q_nu R_nu(theta)^2
    Rat pivot_radius;         // eps_nu^2 (V_nu/pi) / 30, the a-priori deviation radius
    bool within_pivot_radius; // value inside [V/pi +- pivot_radius]
};

struct DirichletEstimate {
    std::vector<Approximant> approximants;  // nu = 2 .. N
    RatInterval running_sup;
    int steps_used = 0;
};

// Approximants for nu in [2, N] against the given theta box (normally the
// final enclosure of the run).
DirichletEstimate dirichlet_estimate(const ConstructionState& st, int N, const ThetaBox& theta);
// Same, against the run's own final enclosure.
DirichletEstimate dirichlet_estimate(const ConstructionState& st, int N);

struct RatioStats {
    std::vector<std::pair<int, Rat>> ratios;  // (nu, q_nu / q_{nu-1}), nu >= 2
    Rat max_ratio;
    Rat m_estimate;  // max over the tail window
    int tail_start = 4;
};

RatioStats ratio_stats(const ConstructionState& st, int tail_start = 4);

// audit direction of the lower ratio bound: m_lo >= 1 / (36 d_hi^2)
bool proposition3_check(const Rat& d_hi, const Rat& m_lo);

struct BadnessRow {
    Rat gamma;
    bool holds;       // min_p |q theta - p| > gamma / sqrt(q) for all scanned q
    bool decided;     // interval comparisons all separated
    Int first_fail_q; // 0 when none
};

// For each gamma: whether q * psi(q)^2 > gamma^2 held over the whole scan,
// evaluated segment-wise from the oracle output (psi is constant between
// drops, so each segment is checked at its largest q).
std::vector<BadnessRow> badness_report(const std::vector<BestApproxEntry>& oracle,
                                       const Int& T, const std::vector<Rat>& gamma_grid);

// Delimited export: nu q ratio R_sq V_over_pi approx_lo approx_hi
// cond_1..cond_6 cert_mode (tab separated, one row per step).
std::string analysis_table(const ConstructionState& st, const DirichletEstimate& est);

}  // namespace dirspec
