#pragma once

#include "hg/hypergraph.hpp"
#include "hg/kinds.hpp"
#include "hg/pairing_sim.hpp"

#include <cstdint>

namespace hg {

// Runs the hypergraph-level greedy algorithm directly on an explicit instance
// with vertex-deletion semantics. The returned output is verified: a matching
// is pairwise disjoint, an independent set contains no edge of h.
SimResult run_reference(const Hypergraph& h, ProcessKind kind, std::uint64_t seed);

// The witness sets behind run_reference, for validity tests.
struct ReferenceRun {
    SimResult result;
    std::vector<std::uint32_t> matched_edges; // matching
    std::vector<std::uint32_t> members;       // independent set vertices
};

ReferenceRun run_reference_witness(const Hypergraph& h, ProcessKind kind, std::uint64_t seed);

} // namespace hg
