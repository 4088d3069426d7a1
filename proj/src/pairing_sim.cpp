#include "hg/pairing_sim.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hg {

PairingState::PairingState(int k, int d, std::int64_t n, std::uint64_t seed)
    : k_(k), d_(d), n_(n), m_(n * d / k), seed_(seed), rng_(seed),
      vpool_(static_cast<std::uint32_t>(n * d)), epool_(static_cast<std::uint32_t>(n * d)),
      vcnt_(n, static_cast<std::uint8_t>(d)), ecnt_(m_, static_cast<std::uint8_t>(k)),
      vstat_(n, VertexStatus::Open), estat_(m_, EdgeStatus::Alive),
      bucket_(d + 1), bpos_(n), zcls_(k + 1, 0), partner_(n * d, SwapPool::NPOS) {
    if (k < 2) throw std::invalid_argument("uniformity k must be >= 2");
    if (d < 1 || d > 250) throw std::invalid_argument("regularity d out of range");
    if (n < 1) throw std::invalid_argument("vertex count n must be >= 1");
    if ((n * d) % k != 0) throw std::invalid_argument("k must divide d*n");
    if (n * d > 0xfffffff0ll) throw std::invalid_argument("n*d exceeds the supported point range");
    bucket_[d].resize(n);
    for (std::int64_t v = 0; v < n; ++v) {
        bucket_[d][v] = static_cast<std::uint32_t>(v);
        bpos_[v] = static_cast<std::uint32_t>(v);
    }
    zcls_[k] = m_;
    open_ = n;
}

PairingState init_pairing_state(int k, int d, std::int64_t n, std::uint64_t seed) {
    return PairingState(k, d, n, seed);
}

void PairingState::bucket_remove(std::uint32_t v) {
    auto& b = bucket_[vcnt_[v]];
    std::uint32_t i = bpos_[v];
    std::uint32_t last = b.back();
    b[i] = last;
    bpos_[last] = i;
    b.pop_back();
}

void PairingState::bucket_insert(std::uint32_t v) {
    auto& b = bucket_[vcnt_[v]];
    b.push_back(v);
    bpos_[v] = static_cast<std::uint32_t>(b.size() - 1);
}

void PairingState::leave_open(std::uint32_t v, VertexStatus st) {
    bucket_remove(v);
    vstat_[v] = st;
    --open_;
    if (st == VertexStatus::Closed) ++closed_;
    if (st == VertexStatus::Exhausted) ++exhausted_;
}

void PairingState::edge_class_change(std::uint32_t e, int delta) {
    int c = ecnt_[e];
    if (estat_[e] == EdgeStatus::Alive) {
        zcls_[c]--;
        zcls_[c + delta]++;
        if (c != k_) --alive_not_k_;
        if (c + delta != k_) ++alive_not_k_;
        if (c == 1) --alive_at_1_;
        if (c + delta == 1) ++alive_at_1_;
    }
    ecnt_[e] = static_cast<std::uint8_t>(c + delta);
}

void PairingState::edge_leave_alive(std::uint32_t e, EdgeStatus st) {
    int c = ecnt_[e];
    zcls_[c]--;
    if (c != k_) --alive_not_k_;
    if (c == 1) --alive_at_1_;
    estat_[e] = st;
}

// pair vertex-point p with a uniform unpaired edge-point; returns the edge hit
std::uint32_t PairingState::pair_vertex_point(std::uint32_t p) {
    std::uint32_t q = epool_.draw(rng_);
    vpool_.remove(p);
    epool_.remove(q);
    partner_[q] = p;
    vcnt_[p / d_]--; // owner is never open here; buckets untouched
    std::uint32_t e = q / k_;
    edge_class_change(e, -1);
    ++pairings_;
    return e;
}

// pair edge-point q with a uniform unpaired vertex-point; returns the vertex hit
std::uint32_t PairingState::pair_edge_point(std::uint32_t q) {
    std::uint32_t p = vpool_.draw(rng_);
    vpool_.remove(p);
    epool_.remove(q);
    partner_[q] = p;
    edge_class_change(q / k_, -1);
    std::uint32_t v = p / d_;
    if (vstat_[v] == VertexStatus::Open) {
        bucket_remove(v);
        vcnt_[v]--;
        bucket_insert(v);
    } else {
        vcnt_[v]--;
    }
    ++pairings_;
    return v;
}

int PairingState::min_open_degree(bool positive_only) const {
    for (int c = positive_only ? 1 : 0; c <= d_; ++c)
        if (!bucket_[c].empty()) return c;
    return -1;
}

Hypergraph PairingState::revealed_hypergraph() const {
    if (epool_.size() != 0)
        throw std::logic_error("pairing incomplete: the run has not terminated");
    std::vector<std::uint32_t> slots(partner_.size());
    for (std::size_t q = 0; q < partner_.size(); ++q)
        slots[q] = partner_[q] / static_cast<std::uint32_t>(d_);
    return Hypergraph(k_, d_, n_, std::move(slots));
}

void PairingState::check_invariants(ProcessKind kind) const {
    if (vpool_.size() != epool_.size())
        throw std::logic_error("unpaired vertex-point total != unpaired edge-point total");
    if (kind == ProcessKind::Matching && alive_not_k_ != 0)
        throw std::logic_error("alive edge without exactly k unpaired points");
    if (kind == ProcessKind::Independent && alive_at_1_ != 0)
        throw std::logic_error("alive edge with exactly 1 unpaired point at step end");
}

namespace {
constexpr std::uint8_t EV_DELETE_VERTEX = 0; // matching (M4)
constexpr std::uint8_t EV_KILL_EDGE = 1;     // matching (M5) / independent (I4)
constexpr std::uint8_t EV_CHECK_EDGE = 2;    // independent (I2)
constexpr std::uint8_t EV_CLOSE_VERTEX = 3;  // independent (I3)
} // namespace

StepReport PairingState::step_matching() {
    int r = min_open_degree(true);
    if (r < 0) throw std::logic_error("no live vertex: matching process has terminated");
    StepReport rep;
    pairings_ = 0;
    rep.step = ++step_;
    rep.degree = r;

    // (M1) select a minimum-positive-degree vertex, pair all its points
    auto& b = bucket_[r];
    std::uint32_t v = b[rng_.below(b.size())];
    rep.selected = v;
    leave_open(v, VertexStatus::Selected);
    hit_.clear();
    for (int t = 0; t < d_; ++t) {
        std::uint32_t p = static_cast<std::uint32_t>(v) * d_ + t;
        if (!vpool_.contains(p)) continue;
        std::uint32_t e = pair_vertex_point(p);
        bool dup = false;
        for (auto h : hit_) dup |= (h == e);
        if (!dup) hit_.push_back(e);
    }

    // (M2) the matched edge, uniform among distinct edges hit
    std::uint32_t ei = hit_[rng_.below(hit_.size())];
    edge_leave_alive(ei, EdgeStatus::Matched);
    ++output_;
    rep.removed_vertices = 1; // v itself

    queue_.clear();
    std::size_t head = 0;
    for (auto e : hit_)
        if (e != ei) queue_.emplace_back(EV_KILL_EDGE, e); // (M5) from (M1)

    // (M3) pair the matched edge's remaining points; hit vertices are deleted
    for (int t = 0; t < k_; ++t) {
        std::uint32_t q = ei * k_ + t;
        if (!epool_.contains(q)) continue;
        std::uint32_t u = pair_edge_point(q);
        if (vstat_[u] == VertexStatus::Open) {
            leave_open(u, VertexStatus::Selected);
            ++rep.removed_vertices;
            queue_.emplace_back(EV_DELETE_VERTEX, u); // (M4)
        }
    }

    // (M4)/(M5) cascade, FIFO in order of discovery
    while (head < queue_.size()) {
        auto [kind, obj] = queue_[head++];
        if (kind == EV_DELETE_VERTEX) {
            for (int t = 0; t < d_; ++t) {
                std::uint32_t p = obj * d_ + t;
                if (!vpool_.contains(p)) continue;
                std::uint32_t e = pair_vertex_point(p);
                if (estat_[e] == EdgeStatus::Alive) queue_.emplace_back(EV_KILL_EDGE, e);
            }
        } else {
            if (estat_[obj] != EdgeStatus::Alive) continue;
            edge_leave_alive(obj, EdgeStatus::Dead);
            ++rep.dead_edges;
            for (int t = 0; t < k_; ++t) {
                std::uint32_t q = obj * k_ + t;
                if (!epool_.contains(q)) continue;
                std::uint32_t u = pair_edge_point(q);
                if (vstat_[u] == VertexStatus::Open && vcnt_[u] == 0)
                    leave_open(u, VertexStatus::Exhausted); // never matchable
            }
        }
    }
    rep.pairings = pairings_;
    return rep;
}

StepReport PairingState::step_independent() {
    int r = min_open_degree(false);
    if (r < 0) throw std::logic_error("no open vertex: independent process has terminated");
    StepReport rep;
    pairings_ = 0;
    rep.step = ++step_;
    rep.degree = r;

    // (I1) select a minimum-degree vertex (degree 0 joins for free), pair its points
    auto& b = bucket_[r];
    std::uint32_t v = b[rng_.below(b.size())];
    rep.selected = v;
    leave_open(v, VertexStatus::Selected);
    ++output_;
    queue_.clear();
    std::size_t head = 0;
    for (int t = 0; t < d_; ++t) {
        std::uint32_t p = static_cast<std::uint32_t>(v) * d_ + t;
        if (!vpool_.contains(p)) continue;
        std::uint32_t e = pair_vertex_point(p);
        if (estat_[e] == EdgeStatus::Alive && ecnt_[e] == 1)
            queue_.emplace_back(EV_CHECK_EDGE, e);
    }

    // (I2)-(I4) cascade, FIFO in order of discovery
    while (head < queue_.size()) {
        auto [kind, obj] = queue_[head++];
        if (kind == EV_CHECK_EDGE) {
            // (I2) edge down to one unpaired point: pair it, closing the partner
            if (estat_[obj] != EdgeStatus::Alive || ecnt_[obj] != 1) continue;
            edge_leave_alive(obj, EdgeStatus::Matched); // saturated: k-1 slots in I
            std::uint32_t q = 0;
            for (int t = 0; t < k_; ++t) {
                q = obj * k_ + t;
                if (epool_.contains(q)) break;
            }
            std::uint32_t w = pair_edge_point(q);
            if (vstat_[w] == VertexStatus::Open) {
                leave_open(w, VertexStatus::Closed);
                ++rep.closed;
                queue_.emplace_back(EV_CLOSE_VERTEX, w);
            }
        } else if (kind == EV_CLOSE_VERTEX) {
            // (I3) pair the closed vertex's remaining points
            for (int t = 0; t < d_; ++t) {
                std::uint32_t p = obj * d_ + t;
                if (!vpool_.contains(p)) continue;
                std::uint32_t e = pair_vertex_point(p);
                if (estat_[e] == EdgeStatus::Alive) {
                    edge_leave_alive(e, EdgeStatus::Dead);
                    ++rep.dead_edges;
                    queue_.emplace_back(EV_KILL_EDGE, e);
                }
            }
        } else {
            // (I4) pair the dead edge's remaining points; vertices lose degree
            for (int t = 0; t < k_; ++t) {
                std::uint32_t q = obj * k_ + t;
                if (!epool_.contains(q)) continue;
                pair_edge_point(q);
            }
        }
    }
    rep.pairings = pairings_;
    return rep;
}

SimResult run_process(PairingState& st, ProcessKind kind, std::int64_t sample_stride) {
    if (st.step_ != 0) throw std::invalid_argument("run_process requires a fresh state");
    SimResult res;
    res.kind = kind;
    res.k = st.k();
    res.d = st.d();
    res.n = st.n();
    res.seed = st.seed();

    auto sample = [&]() {
        TrajectoryRow row;
        row.x = static_cast<double>(st.step_) / st.n();
        int mo = st.min_open_degree(kind == ProcessKind::Matching);
        row.phase_hint = mo < 0 ? st.d() : st.d() - mo;
        row.y.assign(st.d() + 1, 0.0);
        for (int c = 1; c <= st.d(); ++c)
            row.y[c] = static_cast<double>(st.open_with_degree(c)) / st.n();
        row.z.assign(st.k() + 1, 0.0);
        for (int c = 1; c <= st.k(); ++c)
            row.z[c] = static_cast<double>(st.alive_with_count(c)) / st.n();
        row.frac = static_cast<double>(st.output_) / st.n();
        res.trajectory.push_back(std::move(row));
    };

    bool positive_only = kind == ProcessKind::Matching;
    if (sample_stride > 0) sample();
    while (st.min_open_degree(positive_only) >= 0) {
        if (kind == ProcessKind::Matching)
            st.step_matching();
        else
            st.step_independent();
        if (sample_stride > 0 && st.step_ % sample_stride == 0) sample();
    }
    if (sample_stride > 0) sample();

    res.output_size = st.output_;
    res.fraction = static_cast<double>(st.output_) / st.n();
    res.unmatched = kind == ProcessKind::Matching ? st.exhausted_ + st.open_ : 0;
    return res;
}

ReplicateSummary replicate(int k, int d, std::int64_t n, ProcessKind kind, int reps,
                           std::uint64_t base_seed, int threads, bool keep_runs,
                           std::int64_t sample_stride) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    (void)PairingState(k, d, n, 0); // validate parameters before fanning out

    ReplicateSummary s;
    s.kind = kind;
    s.k = k;
    s.d = d;
    s.n = n;
    s.reps = reps;
    s.values.resize(reps);
    s.seeds.resize(reps);
    if (keep_runs) s.runs.resize(reps);

#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#else
    int nt = 1;
    (void)threads;
    (void)nt;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < reps; ++i) {
        std::uint64_t seed = base_seed + 1 + static_cast<std::uint64_t>(i);
        PairingState st(k, d, n, seed);
        SimResult r = run_process(st, kind, keep_runs ? sample_stride : 0);
        s.values[i] = r.fraction;
        s.seeds[i] = seed;
        if (keep_runs) s.runs[i] = std::move(r);
    }

    double mean = 0;
    for (double v : s.values) mean += v;
    mean /= reps;
    double var = 0;
    for (double v : s.values) var += (v - mean) * (v - mean);
    s.mean = mean;
    s.stddev = reps > 1 ? std::sqrt(var / (reps - 1)) : 0.0;
    return s;
}

} // namespace hg
