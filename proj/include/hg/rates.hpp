#pragma once

#include "hg/kinds.hpp"

#include <stdexcept>
#include <vector>

namespace hg {

struct DegenerateState : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateBlend : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RateConfig {
    int k = 3, d = 3;
    ProcessKind kind = ProcessKind::Matching;
    RateMode mode = RateMode::ConservationCorrected; // independent only
    double step_h = 1e-5;
    double eps_end = 1e-6;   // termination threshold on the l1 moment
    double eps_evt = 1e-10;  // event localization tolerance

    void validate() const {
        if (kind == ProcessKind::Independent && k < 3)
            throw std::invalid_argument("independent process needs uniformity k >= 3");
        if (kind == ProcessKind::Matching && k < 2)
            throw std::invalid_argument("matching process needs uniformity k >= 2");
        if (d < 2) throw std::invalid_argument("regularity d must be >= 2");
        if (step_h <= 0 || eps_end <= 0 || eps_evt <= 0)
            throw std::invalid_argument("solver tolerances must be positive");
    }
};

// Scaled state: y[j] for j = 0..d (y[0] meaningful only for the independent
// process), z[j] for j = 1..k (independent only; empty for matching).
struct StateVec {
    double x = 0;
    std::vector<double> y; // size d+1
    std::vector<double> z; // size k+1 or empty

    static StateVec initial(const RateConfig& cfg);
};

struct Moments {
    double l1 = 0, l2 = 0; // vertex-side: sum j*y_j, sum j(j-1)*y_j
    double m1 = 0, m2 = 0; // edge-side (independent only)
};

Moments moments(const StateVec& s);

// Per-step drift of the scaled vertex class j when the selected degree is r.
double rate_matching(const RateConfig& cfg, int j, int r, const StateVec& s);

// Vertex-class and edge-class drifts for the independent process; g carries
// the mode-dependent class-1 removal term. j ranges over 0..d for f and
// 1..k for g (the same class index on each side).
struct IndependentRates {
    double f = 0, g = 0;
};
IndependentRates rate_independent(const RateConfig& cfg, int j, int r, const StateVec& s);

// alpha_p: creation rate of degree-(d-p-1) vertices during a degree-(d-p) step;
// tau_p: their net consumption rate during a degree-(d-p-1) step.
struct PhaseCoefficients {
    double alpha = 0, tau = 0;
};
PhaseCoefficients phase_coefficients(const RateConfig& cfg, int p, const StateVec& s);

// Convex blend of the two step types active in phase p; clamps negative
// coefficients to zero. Derivative is returned in a StateVec with x = 1.
StateVec blended_derivative(const RateConfig& cfg, int p, const StateVec& s);

// Blend weights actually applied (after clamping); sum to 1.
struct BlendWeights {
    double hi = 0, lo = 0; // weight on degree d-p resp. d-p-1 steps
};
BlendWeights blend_weights(const RateConfig& cfg, int p, const StateVec& s);

int first_phase(const RateConfig& cfg);        // matching: 1, independent: 0
bool final_phase(const RateConfig& cfg, int p); // p == d-1

} // namespace hg
