#pragma once

#include "hg/rates.hpp"

#include <string>
#include <vector>

namespace hg {

struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExitCause {
    TauZero,        // the phase can no longer keep the lower class near zero
    L1Exhausted,    // vertex-side points ran out: the process is over
    M1Exhausted,    // edge-side points ran out first (paper-literal mode only)
    DegenerateSkip, // tau_p <= 0 on entry; phase carries no steps
};

const char* to_string(ExitCause c);

struct PhaseOutcome {
    int p = 0;
    StateVec entry;
    StateVec exit;
    ExitCause cause = ExitCause::TauZero;
};

struct OdeTrajectoryRow {
    double x = 0;
    int phase = 0;
    std::vector<double> y; // indexed 0..d
    std::vector<double> z; // indexed 0..k, empty for matching
    double alpha = 0, tau = 0;
};

struct SolveResult {
    RateConfig config;
    double value = 0; // nu_{k,d} or alpha_{k,d}: total elapsed scaled time
    std::vector<PhaseOutcome> phases;
    std::vector<OdeTrajectoryRow> trajectory;
    // worst-case diagnostics along the whole run
    double max_abs_z1 = 0;          // |z_1|; stays ~0 in corrected mode
    double max_conservation_gap = 0; // |l1 - m1|; stays ~0 in corrected mode
    double min_weight = 1, max_weight = 0;
};

// Integrates phase p from `entry` until tau changes sign or l1 (or, in
// paper-literal mode, m1) drops below eps_end. Classical RK4 with step h,
// capped near exhaustion so the relative change per step stays small; events
// are localized by bisection on the step to tolerance eps_evt.
PhaseOutcome integrate_phase(const RateConfig& cfg, int p, const StateVec& entry);

// Chains the phase schedule from the process's initial state and reads the
// constant off as the total elapsed scaled time.
SolveResult solve(const RateConfig& cfg, bool keep_trajectory = false);

} // namespace hg
