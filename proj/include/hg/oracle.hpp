#pragma once

#include "hg/hypergraph.hpp"
#include "hg/kinds.hpp"

#include <cstdint>
#include <vector>

namespace hg {

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExactResult {
    std::int64_t optimum = 0;
    std::vector<std::uint32_t> witness; // edge indices or vertex indices
    std::int64_t nodes_explored = 0;
};

// Exhaustive branch and bound over edge subsets with disjointness pruning.
// Instances must have at most 64 vertices.
ExactResult exact_max_matching(const Hypergraph& h, std::int64_t budget = 50'000'000);

// Exhaustive search over vertex subsets with edge-containment pruning.
ExactResult exact_max_independent(const Hypergraph& h, std::int64_t budget = 50'000'000);

struct GreedyMean {
    double mean = 0;
    double stderr_ = 0;
    std::vector<double> values;
};

// Monte Carlo over the greedy algorithm's internal randomness on a fixed
// instance, via run_reference with seeds seed+1..seed+reps.
GreedyMean greedy_mean(const Hypergraph& h, ProcessKind kind, int reps, std::uint64_t seed);

} // namespace hg
