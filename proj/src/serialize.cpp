#include "hg/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>

namespace hg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string sim_trajectory_csv(const SimResult& r) {
    std::string out = "x,phase_hint";
    for (int j = 1; j <= r.d; ++j) out += ",y" + std::to_string(j);
    for (int j = 1; j <= r.k; ++j) out += ",z" + std::to_string(j);
    out += ",frac\n";
    for (const auto& row : r.trajectory) {
        out += num(row.x) + "," + std::to_string(row.phase_hint);
        for (int j = 1; j <= r.d; ++j) out += "," + num(row.y[j]);
        for (int j = 1; j <= r.k; ++j) out += "," + num(row.z[j]);
        out += "," + num(row.frac) + "\n";
    }
    return out;
}

nlohmann::json summary_json(const ReplicateSummary& s) {
    return nlohmann::json{{"process", to_string(s.kind)}, {"k", s.k},       {"d", s.d},
                          {"n", s.n},                     {"reps", s.reps}, {"mean", s.mean},
                          {"std", s.stddev},              {"seeds", s.seeds},
                          {"values", s.values}};
}

std::string ode_trajectory_csv(const SolveResult& r) {
    const auto& cfg = r.config;
    const bool matching = cfg.kind == ProcessKind::Matching;
    std::string out = "x,phase";
    for (int j = 0; j <= cfg.d; ++j) out += ",y" + std::to_string(j);
    for (int j = 1; j <= cfg.k; ++j) out += ",z" + std::to_string(j);
    out += ",alpha,tau\n";
    for (const auto& row : r.trajectory) {
        out += num(row.x) + "," + std::to_string(row.phase);
        for (int j = 0; j <= cfg.d; ++j) {
            out += ",";
            if (!(matching && j == 0)) out += num(row.y[j]);
        }
        for (int j = 1; j <= cfg.k; ++j) {
            out += ",";
            if (!matching) out += num(row.z[j]);
        }
        out += "," + num(row.alpha) + "," + num(row.tau) + "\n";
    }
    return out;
}

nlohmann::json solve_json(const SolveResult& r) {
    nlohmann::json phases = nlohmann::json::array();
    for (const auto& ph : r.phases)
        phases.push_back({{"p", ph.p},
                          {"x_start", ph.entry.x},
                          {"x_end", ph.exit.x},
                          {"cause", to_string(ph.cause)}});
    nlohmann::json j{{"process", to_string(r.config.kind)},
                     {"k", r.config.k},
                     {"d", r.config.d},
                     {"value", r.value},
                     {"phases", phases},
                     {"solver",
                      {{"h", r.config.step_h},
                       {"eps_end", r.config.eps_end},
                       {"eps_evt", r.config.eps_evt}}}};
    if (r.config.kind == ProcessKind::Independent)
        j["mode"] = to_string(r.config.mode);
    else
        j["mode"] = nullptr;
    return j;
}

nlohmann::json exact_json(const ExactResult& r, ProcessKind kind) {
    return nlohmann::json{{"kind", to_string(kind)},
                          {"optimum", r.optimum},
                          {"witness", r.witness},
                          {"nodes_explored", r.nodes_explored}};
}

} // namespace hg
