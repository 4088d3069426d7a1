#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hg {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AttemptsExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// k-uniform d-regular hypergraph as an explicit edge-slot list.
// Edges are ordered multisets: repeated vertices (loops) and coinciding edges
// are representable, since configuration-model draws need not be simple.
class Hypergraph {
public:
    Hypergraph(int k, int d, std::int64_t n, std::vector<std::uint32_t> slots);

    int k() const { return k_; }
    int d() const { return d_; }
    std::int64_t n() const { return n_; }
    std::int64_t m() const { return static_cast<std::int64_t>(slots_.size()) / k_; }
    std::span<const std::uint32_t> edge(std::int64_t i) const {
        return {slots_.data() + i * k_, static_cast<std::size_t>(k_)};
    }
    const std::vector<std::uint32_t>& slots() const { return slots_; }

    bool operator==(const Hypergraph&) const = default;

private:
    int k_, d_;
    std::int64_t n_;
    std::vector<std::uint32_t> slots_; // m*k entries, edge-major
};

// Bipartite incidence view: one node per vertex, one per edge, one link per slot.
struct IncidenceGraph {
    std::int64_t num_vertex_nodes = 0;
    std::int64_t num_edge_nodes = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> links; // (vertex node, edge node)

    bool operator==(const IncidenceGraph&) const = default;
};

// Length of the shortest Berge cycle; empty when the hypergraph is acyclic.
struct Girth {
    std::optional<std::int64_t> value;

    bool acyclic() const { return !value.has_value(); }
    std::string str() const { return value ? std::to_string(*value) : "acyclic"; }
    bool operator==(const Girth&) const = default;
};

Hypergraph generate_configuration(int k, int d, std::int64_t n, std::uint64_t seed);
Hypergraph generate_simple(int k, int d, std::int64_t n, std::uint64_t seed,
                           std::int64_t max_attempts = 10000);

bool is_simple(const Hypergraph& h);

IncidenceGraph incidence_graph(const Hypergraph& h);

// Swap the two sides of the incidence bipartition: vertex j of the dual is
// edge j of h, and dual edge i lists the edges of h containing vertex i,
// ordered by (edge index, slot).
Hypergraph dual(const Hypergraph& h);

Girth girth(const Hypergraph& h);

std::string encode(const Hypergraph& h);
Hypergraph decode(const std::string& text);

} // namespace hg
