#include "hg/oracle.hpp"
#include "hg/reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace hg {

namespace {

std::vector<std::uint64_t> edge_masks(const Hypergraph& h) {
    if (h.n() > 64) throw std::invalid_argument("oracle instances must have n <= 64");
    std::vector<std::uint64_t> masks(h.m(), 0);
    for (std::int64_t e = 0; e < h.m(); ++e)
        for (auto v : h.edge(e)) masks[e] |= std::uint64_t{1} << v;
    return masks;
}

struct MatchSearch {
    const std::vector<std::uint64_t>& masks;
    const std::vector<std::uint32_t>& order;
    std::int64_t budget;
    std::int64_t nodes = 0;
    std::int64_t best = 0;
    std::vector<std::uint32_t> chosen, best_set;

    void rec(std::size_t i, std::uint64_t used) {
        if (++nodes > budget) throw BudgetExhausted("matching search budget exhausted");
        if (static_cast<std::int64_t>(chosen.size()) > best) {
            best = static_cast<std::int64_t>(chosen.size());
            best_set = chosen;
        }
        if (i == order.size()) return;
        if (static_cast<std::int64_t>(chosen.size() + (order.size() - i)) <= best)
            return; // even taking everything left cannot beat the incumbent
        std::uint32_t e = order[i];
        if ((masks[e] & used) == 0) {
            chosen.push_back(e);
            rec(i + 1, used | masks[e]);
            chosen.pop_back();
        }
        rec(i + 1, used);
    }
};

struct IndepSearch {
    const Hypergraph& h;
    const std::vector<std::uint64_t>& masks;
    std::vector<std::vector<std::uint32_t>> edges_at; // edges whose max vertex is v
    std::int64_t budget;
    std::int64_t nodes = 0;
    std::int64_t best = -1;
    std::uint64_t cur = 0, best_set = 0;

    // vertices are decided in index order; an edge becomes checkable once its
    // highest vertex is decided
    void rec(std::uint32_t v, std::int64_t size) {
        if (++nodes > budget) throw BudgetExhausted("independent-set search budget exhausted");
        if (v == h.n()) {
            if (size > best) {
                best = size;
                best_set = cur;
            }
            return;
        }
        if (size + (h.n() - v) <= best) return;
        // try including v
        cur |= std::uint64_t{1} << v;
        bool ok = true;
        for (auto e : edges_at[v])
            if ((masks[e] & ~cur) == 0) {
                ok = false;
                break;
            }
        if (ok) rec(v + 1, size + 1);
        cur &= ~(std::uint64_t{1} << v);
        rec(v + 1, size);
    }
};

} // namespace

ExactResult exact_max_matching(const Hypergraph& h, std::int64_t budget) {
    if (budget <= 0) throw std::invalid_argument("budget must be positive");
    auto masks = edge_masks(h);
    std::vector<std::int64_t> conflicts(h.m(), 0);
    for (std::int64_t a = 0; a < h.m(); ++a)
        for (std::int64_t b = 0; b < h.m(); ++b)
            if (a != b && (masks[a] & masks[b])) ++conflicts[a];
    std::vector<std::uint32_t> order(h.m());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return conflicts[a] > conflicts[b]; });

    MatchSearch s{masks, order, budget, 0, 0, {}, {}};
    // greedy incumbent tightens the bound from the start
    std::uint64_t used = 0;
    for (auto e : order)
        if ((masks[e] & used) == 0) {
            s.best_set.push_back(e);
            used |= masks[e];
        }
    s.best = static_cast<std::int64_t>(s.best_set.size());
    s.rec(0, 0);
    ExactResult res;
    res.optimum = s.best;
    res.witness = s.best_set;
    res.nodes_explored = s.nodes;
    return res;
}

ExactResult exact_max_independent(const Hypergraph& h, std::int64_t budget) {
    if (budget <= 0) throw std::invalid_argument("budget must be positive");
    auto masks = edge_masks(h);
    IndepSearch s{h, masks, {}, budget, 0, -1, 0, 0};
    s.edges_at.resize(h.n());
    for (std::int64_t e = 0; e < h.m(); ++e) {
        std::uint32_t hi = 0;
        for (auto v : h.edge(e)) hi = std::max(hi, v);
        s.edges_at[hi].push_back(static_cast<std::uint32_t>(e));
    }
    // greedy incumbent
    std::uint64_t g = 0;
    for (std::int64_t v = 0; v < h.n(); ++v) {
        std::uint64_t trial = g | (std::uint64_t{1} << v);
        bool ok = true;
        for (auto mk : masks)
            if ((mk & ~trial) == 0) {
                ok = false;
                break;
            }
        if (ok) g = trial;
    }
    s.best = std::popcount(g);
    s.best_set = g;
    s.rec(0, 0);
    ExactResult res;
    res.optimum = s.best;
    res.nodes_explored = s.nodes;
    for (std::int64_t v = 0; v < h.n(); ++v)
        if (s.best_set >> v & 1) res.witness.push_back(static_cast<std::uint32_t>(v));
    return res;
}

GreedyMean greedy_mean(const Hypergraph& h, ProcessKind kind, int reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    GreedyMean g;
    g.values.reserve(reps);
    for (int i = 0; i < reps; ++i)
        g.values.push_back(static_cast<double>(
            run_reference(h, kind, seed + 1 + static_cast<std::uint64_t>(i)).output_size));
    for (double v : g.values) g.mean += v;
    g.mean /= reps;
    double var = 0;
    for (double v : g.values) var += (v - g.mean) * (v - g.mean);
    g.stderr_ = reps > 1 ? std::sqrt(var / (reps - 1) / reps) : 0.0;
    return g;
}

} // namespace hg
