#pragma once

#include "hg/hypergraph.hpp"
#include "hg/kinds.hpp"
#include "hg/rng.hpp"

#include <cstdint>
#include <vector>

namespace hg {

// Unpaired-point pool with O(1) uniform draw and O(1) targeted removal.
class SwapPool {
public:
    explicit SwapPool(std::uint32_t n) : items_(n), pos_(n) {
        for (std::uint32_t i = 0; i < n; ++i) items_[i] = pos_[i] = i;
    }
    bool contains(std::uint32_t x) const { return pos_[x] != NPOS; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(items_.size()); }
    std::uint32_t draw(Rng& rng) const { return items_[rng.below(items_.size())]; }
    void remove(std::uint32_t x) {
        std::uint32_t i = pos_[x];
        std::uint32_t last = items_.back();
        items_[i] = last;
        pos_[last] = i;
        items_.pop_back();
        pos_[x] = NPOS;
    }

    static constexpr std::uint32_t NPOS = 0xffffffffu;

private:
    std::vector<std::uint32_t> items_;
    std::vector<std::uint32_t> pos_;
};

enum class VertexStatus : std::uint8_t { Open, Selected, Closed, Exhausted };
enum class EdgeStatus : std::uint8_t { Alive, Matched, Dead };

struct StepReport {
    std::int64_t step = 0;        // 1-based index of the completed step
    std::uint32_t selected = 0;   // vertex chosen at the start of the step
    int degree = 0;               // its unpaired-point count at selection
    int pairings = 0;             // pairs revealed during the step
    int closed = 0;               // independent: vertices closed this step
    int dead_edges = 0;           // edges killed this step
    int removed_vertices = 0;     // matching: vertices of the matched edge
};

struct TrajectoryRow {
    double x = 0;                  // steps per vertex
    int phase_hint = 0;            // d - (current minimum open degree)
    std::vector<double> y;         // y[1..d] scaled open-vertex class counts
    std::vector<double> z;         // z[1..k] scaled alive-edge class counts
    double frac = 0;               // output size / n so far
};

struct SimResult {
    ProcessKind kind = ProcessKind::Matching;
    int k = 0, d = 0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::int64_t output_size = 0;  // |M| or |I|
    double fraction = 0;           // output_size / n
    std::int64_t unmatched = 0;    // matching only: exhausted (never matched) vertices
    std::vector<TrajectoryRow> trajectory;
};

// Lazily revealed uniform pairing between n*d vertex-points and n*d edge-points.
// Vertex v owns points [v*d, (v+1)*d); edge e owns points [e*k, (e+1)*k).
class PairingState {
public:
    PairingState(int k, int d, std::int64_t n, std::uint64_t seed);

    int k() const { return k_; }
    int d() const { return d_; }
    std::int64_t n() const { return n_; }
    std::int64_t m() const { return m_; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t steps_done() const { return step_; }
    std::int64_t output_size() const { return output_; }
    std::int64_t exhausted_count() const { return exhausted_; }
    std::int64_t closed_count() const { return closed_; }
    std::int64_t open_count() const { return open_; }

    VertexStatus vertex_status(std::uint32_t v) const { return vstat_[v]; }
    EdgeStatus edge_status(std::uint32_t e) const { return estat_[e]; }
    int vertex_unpaired(std::uint32_t v) const { return vcnt_[v]; }
    int edge_unpaired(std::uint32_t e) const { return ecnt_[e]; }

    // minimum open degree (positive_only: ignore degree 0); -1 when none
    int min_open_degree(bool positive_only) const;

    std::int64_t open_with_degree(int c) const {
        return static_cast<std::int64_t>(bucket_[c].size());
    }
    std::int64_t alive_with_count(int c) const { return zcls_[c]; }

    // exact integer invariants; throws std::logic_error on violation
    void check_invariants(ProcessKind kind) const;

    // the configuration revealed by a completed run (every point paired);
    // a run that has terminated always has a complete pairing
    Hypergraph revealed_hypergraph() const;

    StepReport step_matching();
    StepReport step_independent();

    friend SimResult run_process(PairingState& st, ProcessKind kind, std::int64_t sample_stride);

private:
    int k_, d_;
    std::int64_t n_, m_;
    std::uint64_t seed_;
    Rng rng_;
    SwapPool vpool_, epool_;
    std::vector<std::uint8_t> vcnt_, ecnt_;
    std::vector<VertexStatus> vstat_;
    std::vector<EdgeStatus> estat_;
    std::vector<std::vector<std::uint32_t>> bucket_; // open vertices by unpaired count
    std::vector<std::uint32_t> bpos_;
    std::vector<std::int64_t> zcls_;                 // alive edges by unpaired count
    std::int64_t alive_not_k_ = 0, alive_at_1_ = 0;
    std::int64_t step_ = 0, output_ = 0, exhausted_ = 0, closed_ = 0, open_ = 0;
    std::vector<std::pair<std::uint8_t, std::uint32_t>> queue_; // within-step FIFO
    std::vector<std::uint32_t> hit_;                             // distinct edges hit by (M1)
    std::vector<std::uint32_t> partner_;                         // edge-point -> vertex-point
    int pairings_ = 0;

    void bucket_remove(std::uint32_t v);
    void bucket_insert(std::uint32_t v);
    void leave_open(std::uint32_t v, VertexStatus st);
    std::uint32_t pair_vertex_point(std::uint32_t p);
    std::uint32_t pair_edge_point(std::uint32_t q);
    void edge_class_change(std::uint32_t e, int delta);
    void edge_leave_alive(std::uint32_t e, EdgeStatus st);
};

PairingState init_pairing_state(int k, int d, std::int64_t n, std::uint64_t seed);

// Runs the chosen process to termination. sample_stride == 0 disables the
// trajectory; otherwise a row is recorded every sample_stride steps
// (spec default: n/1000) plus a final row.
SimResult run_process(PairingState& st, ProcessKind kind, std::int64_t sample_stride);

struct ReplicateSummary {
    ProcessKind kind = ProcessKind::Matching;
    int k = 0, d = 0;
    std::int64_t n = 0;
    int reps = 0;
    double mean = 0, stddev = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> values;
    std::vector<SimResult> runs; // populated only when keep_runs
};

// reps independent runs with seeds base_seed+1..base_seed+reps, merged in rep
// order so the result is identical for any thread count.
ReplicateSummary replicate(int k, int d, std::int64_t n, ProcessKind kind, int reps,
                           std::uint64_t base_seed, int threads = 0, bool keep_runs = false,
                           std::int64_t sample_stride = 0);

} // namespace hg
