#include "hg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hg {

const char* to_string(ExitCause c) {
    switch (c) {
        case ExitCause::TauZero: return "tau-zero";
        case ExitCause::L1Exhausted: return "l1-exhausted";
        case ExitCause::M1Exhausted: return "m1-exhausted";
        case ExitCause::DegenerateSkip: return "degenerate-skip";
    }
    return "?";
}

namespace {

enum class Ev { None, L1, M1, Tau, Bad };

bool finite_state(const StateVec& s) {
    for (double v : s.y)
        if (!std::isfinite(v)) return false;
    for (double v : s.z)
        if (!std::isfinite(v)) return false;
    return true;
}

struct Trial {
    StateVec s;
    bool ok = false;
};

// One classical RK4 step; components are clamped at zero afterwards since
// classes may graze zero from above. Degenerate stages mark the trial bad.
Trial rk4_step(const RateConfig& cfg, int p, const StateVec& s, double h) {
    Trial t;
    try {
        StateVec k1 = blended_derivative(cfg, p, s);
        StateVec a = s;
        for (std::size_t i = 0; i < s.y.size(); ++i) a.y[i] = s.y[i] + 0.5 * h * k1.y[i];
        for (std::size_t i = 0; i < s.z.size(); ++i) a.z[i] = s.z[i] + 0.5 * h * k1.z[i];
        StateVec k2 = blended_derivative(cfg, p, a);
        for (std::size_t i = 0; i < s.y.size(); ++i) a.y[i] = s.y[i] + 0.5 * h * k2.y[i];
        for (std::size_t i = 0; i < s.z.size(); ++i) a.z[i] = s.z[i] + 0.5 * h * k2.z[i];
        StateVec k3 = blended_derivative(cfg, p, a);
        for (std::size_t i = 0; i < s.y.size(); ++i) a.y[i] = s.y[i] + h * k3.y[i];
        for (std::size_t i = 0; i < s.z.size(); ++i) a.z[i] = s.z[i] + h * k3.z[i];
        StateVec k4 = blended_derivative(cfg, p, a);
        t.s = s;
        t.s.x = s.x + h;
        for (std::size_t i = 0; i < s.y.size(); ++i)
            t.s.y[i] =
                std::max(s.y[i] + h / 6.0 * (k1.y[i] + 2 * k2.y[i] + 2 * k3.y[i] + k4.y[i]), 0.0);
        for (std::size_t i = 0; i < s.z.size(); ++i)
            t.s.z[i] =
                std::max(s.z[i] + h / 6.0 * (k1.z[i] + 2 * k2.z[i] + 2 * k3.z[i] + k4.z[i]), 0.0);
        t.ok = true;
    } catch (const DegenerateState&) {
    } catch (const DegenerateBlend&) {
    }
    return t;
}

Ev classify(const RateConfig& cfg, int p, double l1_before, const Trial& t) {
    if (!t.ok || !finite_state(t.s)) return Ev::Bad;
    Moments m = moments(t.s);
    if (m.l1 > l1_before + 1e-9) return Ev::Bad; // points are only ever consumed
    if (m.l1 < cfg.eps_end) return Ev::L1;
    if (cfg.kind == ProcessKind::Independent && m.m1 < cfg.eps_end) return Ev::M1;
    if (!final_phase(cfg, p)) { // final phase: tau is 1 (independent) or unused (matching)
        try {
            if (phase_coefficients(cfg, p, t.s).tau < 0) return Ev::Tau;
        } catch (const DegenerateState&) {
            return Ev::Bad;
        }
    }
    return Ev::None;
}

using Observer = std::function<void(const StateVec&)>;

PhaseOutcome integrate_phase_observed(const RateConfig& cfg, int p, const StateVec& entry,
                                      const Observer& observe) {
    PhaseOutcome out;
    out.p = p;
    out.entry = entry;

    bool consult_tau = !final_phase(cfg, p);
    if (moments(entry).l1 >= cfg.eps_end && consult_tau) {
        if (phase_coefficients(cfg, p, entry).tau <= cfg.eps_evt) {
            out.exit = entry;
            out.cause = ExitCause::DegenerateSkip;
            return out;
        }
    }

    StateVec s = entry;
    if (observe) observe(s);
    auto finish = [&](StateVec&& exit_state, ExitCause cause) {
        if (observe) observe(exit_state);
        out.exit = std::move(exit_state);
        out.cause = cause;
        return std::move(out);
    };
    while (true) {
        Moments m = moments(s);
        if (m.l1 < cfg.eps_end) return finish(std::move(s), ExitCause::L1Exhausted);
        if (cfg.kind == ProcessKind::Independent && m.m1 < cfg.eps_end)
            return finish(std::move(s), ExitCause::M1Exhausted);
        // near exhaustion the fixed step would overshoot; keep the relative
        // change per step small so RK4 stays in its accuracy regime
        double heff = std::min(cfg.step_h, 0.05 * m.l1);
        if (cfg.kind == ProcessKind::Independent) heff = std::min(heff, 0.05 * m.m1);
        Trial full = rk4_step(cfg, p, s, heff);
        if (classify(cfg, p, m.l1, full) == Ev::None) {
            s = std::move(full.s);
            if (observe) observe(s);
            continue;
        }
        // localize the first event inside (0, heff] by bisection on the step
        double lo = 0.0, hi = heff;
        StateVec s_lo = s;
        while (hi - lo > cfg.eps_evt) {
            double mid = 0.5 * (lo + hi);
            Trial tr = rk4_step(cfg, p, s, mid);
            if (classify(cfg, p, m.l1, tr) == Ev::None) {
                lo = mid;
                s_lo = std::move(tr.s);
            } else {
                hi = mid;
            }
        }
        Trial at = rk4_step(cfg, p, s, hi);
        switch (classify(cfg, p, m.l1, at)) {
            case Ev::L1: return finish(std::move(at.s), ExitCause::L1Exhausted);
            case Ev::M1: return finish(std::move(at.s), ExitCause::M1Exhausted);
            case Ev::Tau: return finish(std::move(s_lo), ExitCause::TauZero);
            default: break;
        }
        // bad trial at the event edge: accept the safe prefix and retry
        if (lo > 10 * cfg.eps_evt) {
            s = std::move(s_lo);
            if (observe) observe(s);
            continue;
        }
        Moments ml = moments(s_lo);
        if (consult_tau) {
            try {
                if (phase_coefficients(cfg, p, s_lo).tau <= 1e-6)
                    return finish(std::move(s_lo), ExitCause::TauZero);
            } catch (const DegenerateState&) {
            }
        }
        if (ml.l1 <= 4 * cfg.eps_end) return finish(std::move(s_lo), ExitCause::L1Exhausted);
        if (cfg.kind == ProcessKind::Independent && ml.m1 <= 4 * cfg.eps_end)
            return finish(std::move(s_lo), ExitCause::M1Exhausted);
        throw StepFailure("no admissible step in phase " + std::to_string(p) + " at x=" +
                          std::to_string(s_lo.x) + " (l1=" + std::to_string(ml.l1) + ")");
    }
}

} // namespace

PhaseOutcome integrate_phase(const RateConfig& cfg, int p, const StateVec& entry) {
    cfg.validate();
    return integrate_phase_observed(cfg, p, entry, nullptr);
}

SolveResult solve(const RateConfig& cfg, bool keep_trajectory) {
    cfg.validate();
    SolveResult res;
    res.config = cfg;

    StateVec s = StateVec::initial(cfg);
    const double sample_dx = std::max(cfg.step_h, 1e-3);
    for (int p = first_phase(cfg); p <= cfg.d - 1; ++p) {
        double next_sample = s.x;
        Observer observe = [&](const StateVec& st) {
            Moments m = moments(st);
            if (!st.z.empty()) {
                res.max_abs_z1 = std::max(res.max_abs_z1, std::abs(st.z[1]));
                res.max_conservation_gap =
                    std::max(res.max_conservation_gap, std::abs(m.l1 - m.m1));
            }
            bool unblended = cfg.kind == ProcessKind::Matching && final_phase(cfg, p);
            if (m.l1 >= cfg.eps_end && !unblended) {
                try {
                    BlendWeights w = blend_weights(cfg, p, st);
                    res.min_weight = std::min({res.min_weight, w.hi, w.lo});
                    res.max_weight = std::max({res.max_weight, w.hi, w.lo});
                } catch (const DegenerateState&) {
                } catch (const DegenerateBlend&) {
                }
            }
            if (!keep_trajectory || st.x < next_sample) return;
            while (next_sample <= st.x) next_sample += sample_dx;
            OdeTrajectoryRow row;
            row.x = st.x;
            row.phase = p;
            row.y = st.y;
            row.z = st.z;
            try {
                PhaseCoefficients c = phase_coefficients(cfg, p, st);
                row.alpha = c.alpha;
                row.tau = c.tau;
            } catch (const DegenerateState&) {
            }
            res.trajectory.push_back(std::move(row));
        };
        PhaseOutcome outcome = integrate_phase_observed(cfg, p, s, observe);
        s = outcome.exit;
        bool stop = outcome.cause == ExitCause::L1Exhausted ||
                    outcome.cause == ExitCause::M1Exhausted;
        res.phases.push_back(std::move(outcome));
        if (stop) break;
    }
    if (keep_trajectory && (res.trajectory.empty() || res.trajectory.back().x < s.x)) {
        OdeTrajectoryRow row;
        row.x = s.x;
        row.phase = res.phases.empty() ? first_phase(cfg) : res.phases.back().p;
        row.y = s.y;
        row.z = s.z;
        try {
            PhaseCoefficients c = phase_coefficients(cfg, row.phase, s);
            row.alpha = c.alpha;
            row.tau = c.tau;
        } catch (const DegenerateState&) {
        }
        res.trajectory.push_back(std::move(row));
    }
    res.value = s.x;
    return res;
}

} // namespace hg
