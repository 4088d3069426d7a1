#include "hg/cli.hpp"

#include "hg/hypergraph.hpp"
#include "hg/oracle.hpp"
#include "hg/pairing_sim.hpp"
#include "hg/reference.hpp"
#include "hg/serialize.hpp"
#include "hg/solver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hg {

namespace {

using nlohmann::json;

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
    Range r;
    auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            r.lo = r.hi = std::stoi(s);
        } else {
            r.lo = std::stoi(s.substr(0, colon));
            r.hi = std::stoi(s.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("range must be `lo:hi` or a single integer: " + s);
    }
    if (r.lo > r.hi) throw std::invalid_argument("empty range: " + s);
    return r;
}

ProcessKind parse_process(const std::string& s) {
    if (s == "matching") return ProcessKind::Matching;
    if (s == "independent") return ProcessKind::Independent;
    throw std::invalid_argument("process must be `matching` or `independent`");
}

std::string slurp(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& payload, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
    f << payload;
}

std::string round3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct SolverOpts {
    double step = 1e-5;
    double eps_end = 1e-6;
    bool paper_literal = false;

    RateConfig config(ProcessKind kind, int k, int d) const {
        RateConfig cfg;
        cfg.k = k;
        cfg.d = d;
        cfg.kind = kind;
        cfg.mode = paper_literal ? RateMode::PaperLiteral : RateMode::ConservationCorrected;
        cfg.step_h = step;
        cfg.eps_end = eps_end;
        return cfg;
    }
};

void add_solver_opts(CLI::App* sub, SolverOpts& o) {
    sub->add_option("--step", o.step, "integrator step size")->capture_default_str();
    sub->add_option("--eps-end", o.eps_end, "termination threshold on l1")->capture_default_str();
    sub->add_flag("--paper-literal", o.paper_literal,
                  "independent process: use the uncorrected edge-class drift");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
    CLI::App app{"degree-greedy matching and independent-set processes on d-regular "
                 "k-uniform hypergraphs"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "integrate the phase-blended ODE system");
    std::string sv_process;
    int sv_k = 3, sv_d = 3;
    SolverOpts sv_opts;
    std::string sv_traj;
    solve_cmd->add_option("--process", sv_process)->required();
    solve_cmd->add_option("-k", sv_k, "uniformity")->required();
    solve_cmd->add_option("-d", sv_d, "regularity")->required();
    add_solver_opts(solve_cmd, sv_opts);
    solve_cmd->add_option("--trajectory", sv_traj, "write the trajectory CSV to this path");

    // table
    auto* table_cmd = app.add_subcommand("table", "solve a (k,d) grid");
    std::string tb_process, tb_k = "3:5", tb_d = "2:5", tb_format = "json";
    SolverOpts tb_opts;
    int tb_threads = 0;
    table_cmd->add_option("--process", tb_process)->required();
    table_cmd->add_option("-k", tb_k, "uniformity range lo:hi");
    table_cmd->add_option("-d", tb_d, "regularity range lo:hi");
    add_solver_opts(table_cmd, tb_opts);
    table_cmd->add_option("--format", tb_format)->check(CLI::IsMember({"json", "csv", "md"}));
    table_cmd->add_option("--threads", tb_threads, "0 = all cores");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run the pairing-model process");
    std::string sm_process, sm_traj;
    int sm_k = 3, sm_d = 3, sm_reps = 1, sm_threads = 0;
    std::int64_t sm_n = 1000000, sm_attempts = 10000;
    std::uint64_t sm_seed = 1;
    bool sm_simple = false;
    sim_cmd->add_option("--process", sm_process)->required();
    sim_cmd->add_option("-k", sm_k)->required();
    sim_cmd->add_option("-d", sm_d)->required();
    sim_cmd->add_option("-n", sm_n, "vertex count")->required();
    sim_cmd->add_option("--reps", sm_reps)->capture_default_str();
    sim_cmd->add_option("--seed", sm_seed)->capture_default_str();
    sim_cmd->add_flag("--simple", sm_simple,
                      "run on an explicit simple instance via rejection sampling");
    sim_cmd->add_option("--max-attempts", sm_attempts)->capture_default_str();
    sim_cmd->add_option("--threads", sm_threads, "0 = all cores");
    sim_cmd->add_option("--trajectory", sm_traj, "write the first rep's trajectory CSV");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "cross-validate ODE against simulation");
    std::string cp_process;
    int cp_k = 3, cp_d = 3, cp_reps = 5, cp_threads = 0;
    std::int64_t cp_n = 1000000;
    std::uint64_t cp_seed = 1;
    SolverOpts cp_opts;
    cmp_cmd->add_option("--process", cp_process)->required();
    cmp_cmd->add_option("-k", cp_k)->required();
    cmp_cmd->add_option("-d", cp_d)->required();
    cmp_cmd->add_option("-n", cp_n)->capture_default_str();
    cmp_cmd->add_option("--reps", cp_reps)->capture_default_str();
    cmp_cmd->add_option("--seed", cp_seed)->capture_default_str();
    cmp_cmd->add_option("--step", cp_opts.step)->capture_default_str();
    cmp_cmd->add_option("--eps-end", cp_opts.eps_end)->capture_default_str();
    cmp_cmd->add_option("--threads", cp_threads);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a configuration-model hypergraph");
    int gn_k = 3, gn_d = 2;
    std::int64_t gn_n = 30, gn_attempts = 10000;
    std::uint64_t gn_seed = 1;
    bool gn_simple = false;
    std::string gn_out = "-";
    gen_cmd->add_option("-k", gn_k)->required();
    gen_cmd->add_option("-d", gn_d)->required();
    gen_cmd->add_option("-n", gn_n)->required();
    gen_cmd->add_option("--seed", gn_seed)->capture_default_str();
    gen_cmd->add_flag("--simple", gn_simple, "reject non-simple draws");
    gen_cmd->add_option("--max-attempts", gn_attempts)->capture_default_str();
    gen_cmd->add_option("-o,--out", gn_out, "output path, - for stdout");

    // girth
    auto* girth_cmd = app.add_subcommand("girth", "Berge girth of a hypergraph file");
    std::string gi_file = "-";
    girth_cmd->add_option("file", gi_file, "hypergraph file, - for stdin");

    // dual
    auto* dual_cmd = app.add_subcommand("dual", "dual hypergraph of a hypergraph file");
    std::string du_file = "-", du_out = "-";
    dual_cmd->add_option("file", du_file);
    dual_cmd->add_option("-o,--out", du_out);

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum on a tiny instance");
    std::string or_kind, or_file = "-";
    std::int64_t or_budget = 50'000'000;
    oracle_cmd->add_option("--kind", or_kind)->required()->check(
        CLI::IsMember({"matching", "independent"}));
    oracle_cmd->add_option("file", or_file);
    oracle_cmd->add_option("--budget", or_budget)->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(solve_cmd)) {
            ProcessKind kind = parse_process(sv_process);
            RateConfig cfg = sv_opts.config(kind, sv_k, sv_d);
            SolveResult r = solve(cfg, !sv_traj.empty());
            if (!sv_traj.empty()) emit(ode_trajectory_csv(r), sv_traj, out);
            out << solve_json(r).dump() << "\n";
        } else if (app.got_subcommand(table_cmd)) {
            ProcessKind kind = parse_process(tb_process);
            Range kr = parse_range(tb_k), dr = parse_range(tb_d);
            int nk = kr.hi - kr.lo + 1, nd = dr.hi - dr.lo + 1;
            std::vector<SolveResult> cells(static_cast<std::size_t>(nk) * nd);
            std::vector<std::string> failures(cells.size());
#ifdef _OPENMP
            int nt = tb_threads > 0 ? tb_threads : omp_get_max_threads();
#else
            int nt = 1;
            (void)nt;
#endif
#pragma omp parallel for schedule(dynamic) collapse(2) num_threads(nt)
            for (int ki = 0; ki < nk; ++ki)
                for (int di = 0; di < nd; ++di) {
                    std::size_t idx = static_cast<std::size_t>(ki) * nd + di;
                    try {
                        cells[idx] = solve(tb_opts.config(kind, kr.lo + ki, dr.lo + di));
                    } catch (const std::exception& e) {
                        failures[idx] = e.what();
                    }
                }
            bool any_fail = false;
            json jcells = json::array();
            for (int ki = 0; ki < nk; ++ki)
                for (int di = 0; di < nd; ++di) {
                    std::size_t idx = static_cast<std::size_t>(ki) * nd + di;
                    if (!failures[idx].empty()) {
                        any_fail = true;
                        jcells.push_back({{"k", kr.lo + ki},
                                          {"d", dr.lo + di},
                                          {"error", failures[idx]}});
                        continue;
                    }
                    jcells.push_back({{"k", kr.lo + ki},
                                      {"d", dr.lo + di},
                                      {"value", cells[idx].value},
                                      {"rounded", round3(cells[idx].value)}});
                }
            json full{{"process", to_string(kind)},
                      {"mode", kind == ProcessKind::Independent
                                   ? json(to_string(tb_opts.config(kind, 3, 2).mode))
                                   : json(nullptr)},
                      {"cells", jcells}};
            if (tb_format == "json") {
                out << full.dump() << "\n";
            } else if (tb_format == "csv") {
                out << "k,d,value,rounded\n";
                for (const auto& c : jcells) {
                    out << c["k"].get<int>() << "," << c["d"].get<int>() << ",";
                    if (c.contains("error"))
                        out << ",error\n";
                    else
                        out << json(c["value"]).dump() << "," << c["rounded"].get<std::string>()
                            << "\n";
                }
            } else {
                out << "|     |";
                for (int di = 0; di < nd; ++di) out << " d=" << dr.lo + di << " |";
                out << "\n|-----|";
                for (int di = 0; di < nd; ++di) out << "-----|";
                out << "\n";
                for (int ki = 0; ki < nk; ++ki) {
                    out << "| k=" << kr.lo + ki << " |";
                    for (int di = 0; di < nd; ++di) {
                        const auto& c = jcells[static_cast<std::size_t>(ki) * nd + di];
                        if (c.contains("error"))
                            out << " err |";
                        else
                            out << " " << c["rounded"].get<std::string>() << " |";
                    }
                    out << "\n";
                }
                out << "\n" << full.dump() << "\n";
            }
            if (any_fail) {
                err << "error: one or more cells failed\n";
                return 3;
            }
        } else if (app.got_subcommand(sim_cmd)) {
            ProcessKind kind = parse_process(sm_process);
            if (sm_simple) {
                Hypergraph h = generate_simple(sm_k, sm_d, sm_n, sm_seed, sm_attempts);
                ReplicateSummary s;
                s.kind = kind;
                s.k = sm_k;
                s.d = sm_d;
                s.n = sm_n;
                s.reps = sm_reps;
                for (int i = 0; i < sm_reps; ++i) {
                    std::uint64_t sd = sm_seed + 1 + static_cast<std::uint64_t>(i);
                    s.values.push_back(run_reference(h, kind, sd).fraction);
                    s.seeds.push_back(sd);
                }
                double mean = 0;
                for (double v : s.values) mean += v;
                s.mean = mean / sm_reps;
                double var = 0;
                for (double v : s.values) var += (v - s.mean) * (v - s.mean);
                s.stddev = sm_reps > 1 ? std::sqrt(var / (sm_reps - 1)) : 0.0;
                json j = summary_json(s);
                j["simple"] = true;
                if (!sm_traj.empty())
                    err << "note: --trajectory is only recorded for pairing-model runs\n";
                out << j.dump() << "\n";
            } else {
                bool keep = !sm_traj.empty();
                std::int64_t stride = std::max<std::int64_t>(1, sm_n / 1000);
                ReplicateSummary s = replicate(sm_k, sm_d, sm_n, kind, sm_reps, sm_seed,
                                               sm_threads, keep, stride);
                if (keep) emit(sim_trajectory_csv(s.runs.front()), sm_traj, out);
                out << summary_json(s).dump() << "\n";
            }
        } else if (app.got_subcommand(cmp_cmd)) {
            ProcessKind kind = parse_process(cp_process);
            ReplicateSummary s = replicate(cp_k, cp_d, cp_n, kind, cp_reps, cp_seed, cp_threads);
            json modes = json::array();
            std::string best_mode;
            double best_dev = 0;
            auto run_mode = [&](RateMode mode) {
                SolverOpts o = cp_opts;
                o.paper_literal = mode == RateMode::PaperLiteral;
                RateConfig cfg = o.config(kind, cp_k, cp_d);
                SolveResult r = solve(cfg);
                double dev = std::abs(r.value - s.mean);
                modes.push_back({{"mode", kind == ProcessKind::Independent
                                              ? json(to_string(mode))
                                              : json(nullptr)},
                                 {"value", r.value},
                                 {"final_cause", to_string(r.phases.back().cause)},
                                 {"deviation", dev}});
                if (best_mode.empty() || dev < best_dev) {
                    best_mode = to_string(mode);
                    best_dev = dev;
                }
            };
            run_mode(RateMode::ConservationCorrected);
            if (kind == ProcessKind::Independent) run_mode(RateMode::PaperLiteral);
            json j{{"process", to_string(kind)},
                   {"k", cp_k},
                   {"d", cp_d},
                   {"n", cp_n},
                   {"reps", cp_reps},
                   {"sim", {{"mean", s.mean}, {"std", s.stddev}}},
                   {"ode", modes},
                   {"adjudicated",
                    kind == ProcessKind::Independent ? json(best_mode) : json(nullptr)}};
            out << j.dump() << "\n";
        } else if (app.got_subcommand(gen_cmd)) {
            Hypergraph h = gn_simple ? generate_simple(gn_k, gn_d, gn_n, gn_seed, gn_attempts)
                                     : generate_configuration(gn_k, gn_d, gn_n, gn_seed);
            emit(encode(h), gn_out, out);
        } else if (app.got_subcommand(girth_cmd)) {
            Hypergraph h = decode(slurp(gi_file, in));
            out << girth(h).str() << "\n";
        } else if (app.got_subcommand(dual_cmd)) {
            Hypergraph h = decode(slurp(du_file, in));
            emit(encode(dual(h)), du_out, out);
        } else if (app.got_subcommand(oracle_cmd)) {
            Hypergraph h = decode(slurp(or_file, in));
            ProcessKind kind = parse_process(or_kind);
            ExactResult r = kind == ProcessKind::Matching ? exact_max_matching(h, or_budget)
                                                          : exact_max_independent(h, or_budget);
            out << exact_json(r, kind).dump() << "\n";
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace hg
