#include "hg/rates.hpp"

#include <cmath>

namespace hg {

StateVec StateVec::initial(const RateConfig& cfg) {
    StateVec s;
    s.x = 0;
    s.y.assign(cfg.d + 1, 0.0);
    s.y[cfg.d] = 1.0;
    if (cfg.kind == ProcessKind::Independent) {
        s.z.assign(cfg.k + 1, 0.0);
        s.z[cfg.k] = static_cast<double>(cfg.d) / cfg.k;
    }
    return s;
}

Moments moments(const StateVec& s) {
    Moments m;
    for (int j = 1; j < static_cast<int>(s.y.size()); ++j) {
        m.l1 += j * s.y[j];
        m.l2 += static_cast<double>(j) * (j - 1) * s.y[j];
    }
    for (int j = 1; j < static_cast<int>(s.z.size()); ++j) {
        m.m1 += j * s.z[j];
        m.m2 += static_cast<double>(j) * (j - 1) * s.z[j];
    }
    return m;
}

namespace {

double f_matching(const RateConfig& cfg, int j, int r, const StateVec& s, const Moments& m) {
    // loss of the selected vertex, deletions of the matched edge's vertices,
    // and degree decrements from the k-1 remaining points of each dying edge
    const double km1 = cfg.k - 1;
    const double yj = j >= 1 ? s.y[j] : 0.0;
    const double yj1 = j + 1 <= cfg.d ? s.y[j + 1] : 0.0;
    double v = (j == r) ? -1.0 : 0.0;
    v -= km1 * j * yj / m.l1;
    v += (r - 1 + km1 * m.l2 / m.l1) * km1 * ((j + 1) * yj1 - j * yj) / m.l1;
    return v;
}

double f_independent(const RateConfig& cfg, int j, int r, const StateVec& s, const Moments& m) {
    double v = (j == r) ? -1.0 : 0.0;
    if (r == 0) return v; // a degree-0 selection reveals no pairs
    const double yj = j >= 1 ? s.y[j] : 0.0;
    const double yj1 = j + 1 <= cfg.d ? s.y[j + 1] : 0.0;
    const double m1sq = m.m1 * m.m1;
    const double trigger = r * 2.0 * s.z[2]; // expected saturations per step
    v -= trigger * j * yj / m1sq;
    v += trigger * ((j + 1) * yj1 - j * yj) * m.m2 * m.l2 / (m1sq * m1sq);
    return v;
}

double g_independent(const RateConfig& cfg, int j, int r, const StateVec& s, const Moments& m) {
    if (r == 0) return 0.0;
    const double zj = s.z[j];
    const double zj1 = j + 1 <= cfg.k ? s.z[j + 1] : 0.0;
    double v = r * ((j + 1) * zj1 - j * zj) / m.m1;
    v -= r * 2.0 * s.z[2] * j * zj * m.l2 / (m.m1 * m.m1 * m.m1);
    // The class-2 edge that triggers a saturation has its last point paired in
    // the same step; the paper's drift migrates it to class 1 but never removes
    // it. The corrected mode removes it, restoring l1 == m1 and z_1 == 0.
    if (cfg.mode == RateMode::ConservationCorrected && j == 1)
        v -= r * 2.0 * s.z[2] / m.m1;
    return v;
}

Moments checked_moments(const RateConfig& cfg, const StateVec& s) {
    Moments m = moments(s);
    if (cfg.kind == ProcessKind::Matching) {
        if (m.l1 <= 0) throw DegenerateState("l1 <= 0");
    } else {
        if (m.m1 <= 0) throw DegenerateState("m1 <= 0");
    }
    return m;
}

} // namespace

double rate_matching(const RateConfig& cfg, int j, int r, const StateVec& s) {
    Moments m = checked_moments(cfg, s);
    return f_matching(cfg, j, r, s, m);
}

IndependentRates rate_independent(const RateConfig& cfg, int j, int r, const StateVec& s) {
    Moments m = checked_moments(cfg, s);
    IndependentRates out;
    if (j <= cfg.d) out.f = f_independent(cfg, j, r, s, m);
    if (j >= 1 && j <= cfg.k) out.g = g_independent(cfg, j, r, s, m);
    return out;
}

int first_phase(const RateConfig& cfg) {
    return cfg.kind == ProcessKind::Matching ? 1 : 0;
}

bool final_phase(const RateConfig& cfg, int p) {
    return p == cfg.d - 1;
}

PhaseCoefficients phase_coefficients(const RateConfig& cfg, int p, const StateVec& s) {
    Moments m = checked_moments(cfg, s);
    const int lo = cfg.d - p - 1;
    PhaseCoefficients c;
    if (cfg.kind == ProcessKind::Matching) {
        if (lo >= 1) {
            c.alpha = f_matching(cfg, lo, lo + 1, s, m);
            c.tau = -f_matching(cfg, lo, lo, s, m);
        } else {
            // final phase: informational only, the derivative is unblended
            c.alpha = f_matching(cfg, 0, 1, s, m);
            c.tau = 1.0;
        }
    } else {
        c.alpha = f_independent(cfg, lo, lo + 1, s, m);
        c.tau = -f_independent(cfg, lo, lo, s, m); // lo == 0 gives tau == 1
    }
    return c;
}

BlendWeights blend_weights(const RateConfig& cfg, int p, const StateVec& s) {
    if (cfg.kind == ProcessKind::Matching && final_phase(cfg, p))
        return {1.0, 0.0}; // only degree-1 vertices are ever processed
    PhaseCoefficients c = phase_coefficients(cfg, p, s);
    double a = std::max(c.alpha, 0.0);
    double t = std::max(c.tau, 0.0);
    double sum = a + t;
    if (sum <= cfg.eps_evt) throw DegenerateBlend("alpha_p + tau_p vanished");
    return {t / sum, a / sum};
}

StateVec blended_derivative(const RateConfig& cfg, int p, const StateVec& s) {
    Moments m = checked_moments(cfg, s);
    StateVec dv;
    dv.x = 1.0;
    dv.y.assign(s.y.size(), 0.0);
    dv.z.assign(s.z.size(), 0.0);
    const int hi = cfg.d - p, lo = cfg.d - p - 1;
    if (cfg.kind == ProcessKind::Matching) {
        if (final_phase(cfg, p)) {
            for (int j = 1; j <= cfg.d; ++j) dv.y[j] = f_matching(cfg, j, 1, s, m);
            return dv;
        }
        BlendWeights w = blend_weights(cfg, p, s);
        for (int j = 1; j <= cfg.d; ++j)
            dv.y[j] = w.hi * f_matching(cfg, j, hi, s, m) + w.lo * f_matching(cfg, j, lo, s, m);
        return dv;
    }
    BlendWeights w = blend_weights(cfg, p, s);
    for (int j = 0; j <= cfg.d; ++j)
        dv.y[j] = w.hi * f_independent(cfg, j, hi, s, m) + w.lo * f_independent(cfg, j, lo, s, m);
    for (int j = 1; j <= cfg.k; ++j)
        dv.z[j] = w.hi * g_independent(cfg, j, hi, s, m) + w.lo * g_independent(cfg, j, lo, s, m);
    return dv;
}

} // namespace hg
