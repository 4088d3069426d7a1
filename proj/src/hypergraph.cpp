#include "hg/hypergraph.hpp"
#include "hg/rng.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace hg {

namespace {

void check_gen_params(int k, int d, std::int64_t n) {
    if (k < 2) throw std::invalid_argument("uniformity k must be >= 2");
    if (d < 1) throw std::invalid_argument("regularity d must be >= 1");
    if (n < 1) throw std::invalid_argument("vertex count n must be >= 1");
    if ((n * d) % k != 0) throw std::invalid_argument("k must divide d*n");
    if (n * d > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("n*d exceeds the supported point range");
}

} // namespace

Hypergraph::Hypergraph(int k, int d, std::int64_t n, std::vector<std::uint32_t> slots)
    : k_(k), d_(d), n_(n), slots_(std::move(slots)) {
    // d is the nominal regularity: generated instances are exactly d-regular
    // (asserted in tests), but hand-built fixtures and degenerate duals need
    // not be, so only structural well-formedness is enforced here.
    if (k < 1) throw std::invalid_argument("uniformity k must be >= 1");
    if (d < 0) throw std::invalid_argument("regularity d must be >= 0");
    if (n < 1) throw std::invalid_argument("vertex count n must be >= 1");
    if (slots_.size() % k != 0) throw ConsistencyError("slot count is not a multiple of k");
    for (auto v : slots_)
        if (v >= n_) throw ConsistencyError("vertex index out of range");
}

Hypergraph generate_configuration(int k, int d, std::int64_t n, std::uint64_t seed) {
    check_gen_params(k, d, n);
    const std::int64_t points = n * d;
    // Uniform pairing: random permutation of vertex-points against edge-points
    // in fixed order; vertex-point p belongs to vertex p/d.
    std::vector<std::uint32_t> perm(points);
    std::iota(perm.begin(), perm.end(), 0u);
    Rng rng(seed);
    for (std::int64_t i = points - 1; i > 0; --i) {
        std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
        std::swap(perm[i], perm[j]);
    }
    std::vector<std::uint32_t> slots(points);
    for (std::int64_t i = 0; i < points; ++i) slots[i] = perm[i] / d;
    return Hypergraph(k, d, n, std::move(slots));
}

bool is_simple(const Hypergraph& h) {
    std::vector<std::uint32_t> key(h.k());
    std::unordered_set<std::string> seen;
    seen.reserve(h.m() * 2);
    for (std::int64_t e = 0; e < h.m(); ++e) {
        auto s = h.edge(e);
        key.assign(s.begin(), s.end());
        std::sort(key.begin(), key.end());
        for (int t = 0; t + 1 < h.k(); ++t)
            if (key[t] == key[t + 1]) return false; // loop
        std::string packed(reinterpret_cast<const char*>(key.data()),
                           key.size() * sizeof(std::uint32_t));
        if (!seen.insert(std::move(packed)).second) return false; // multi-edge
    }
    return true;
}

Hypergraph generate_simple(int k, int d, std::int64_t n, std::uint64_t seed,
                           std::int64_t max_attempts) {
    check_gen_params(k, d, n);
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
    for (std::int64_t t = 0; t < max_attempts; ++t) {
        Hypergraph h = generate_configuration(k, d, n, mix_seed(seed, static_cast<std::uint64_t>(t)));
        if (is_simple(h)) return h;
    }
    throw AttemptsExhausted("no simple hypergraph in " + std::to_string(max_attempts) +
                            " attempts for k=" + std::to_string(k) + " d=" + std::to_string(d) +
                            " n=" + std::to_string(n));
}

IncidenceGraph incidence_graph(const Hypergraph& h) {
    IncidenceGraph g;
    g.num_vertex_nodes = h.n();
    g.num_edge_nodes = h.m();
    g.links.reserve(h.slots().size());
    for (std::int64_t e = 0; e < h.m(); ++e)
        for (auto v : h.edge(e))
            g.links.emplace_back(v, static_cast<std::uint32_t>(e));
    // canonical order: the link list is a multiset, so comparisons (e.g. the
    // dual involution) must not depend on per-edge slot order
    std::sort(g.links.begin(), g.links.end());
    return g;
}

Hypergraph dual(const Hypergraph& h) {
    // dual vertex j = edge j of h; dual edge i = edges of h containing vertex i
    if (static_cast<std::int64_t>(h.slots().size()) != h.n() * h.d())
        throw std::invalid_argument("dual requires a d-regular hypergraph");
    std::vector<std::vector<std::uint32_t>> incident(h.n());
    for (std::int64_t e = 0; e < h.m(); ++e)
        for (auto v : h.edge(e))
            incident[v].push_back(static_cast<std::uint32_t>(e));
    std::vector<std::uint32_t> slots;
    slots.reserve(h.slots().size());
    for (std::int64_t v = 0; v < h.n(); ++v) {
        if (static_cast<int>(incident[v].size()) != h.d())
            throw std::invalid_argument("dual requires a d-regular hypergraph");
        for (auto e : incident[v]) // already ordered by (edge, slot)
            slots.push_back(e);
    }
    return Hypergraph(h.d(), h.k(), h.m(), std::move(slots));
}

Girth girth(const Hypergraph& h) {
    // A Berge l-cycle is exactly a 2l-cycle of the incidence multigraph, with a
    // loop (repeated vertex in one edge) appearing as a pair of parallel links.
    const std::int64_t nodes = h.n() + h.m();
    struct Link {
        std::uint32_t a, b;
    };
    std::vector<Link> links;
    links.reserve(h.slots().size());
    std::vector<std::vector<std::uint32_t>> adj(nodes); // link ids
    for (std::int64_t e = 0; e < h.m(); ++e)
        for (auto v : h.edge(e)) {
            auto id = static_cast<std::uint32_t>(links.size());
            links.push_back({v, static_cast<std::uint32_t>(h.n() + e)});
            adj[v].push_back(id);
            adj[h.n() + e].push_back(id);
        }

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(nodes);
    std::vector<std::uint32_t> via(nodes);
    for (std::int64_t s = 0; s < nodes; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<std::uint32_t> q;
        dist[s] = 0;
        via[s] = std::numeric_limits<std::uint32_t>::max();
        q.push(static_cast<std::uint32_t>(s));
        while (!q.empty()) {
            std::uint32_t u = q.front();
            q.pop();
            if (2 * dist[u] >= best) break; // cannot improve from here
            for (auto id : adj[u]) {
                if (id == via[u]) continue; // don't reuse the tree link
                std::uint32_t w = links[id].a == u ? links[id].b : links[id].a;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    via[w] = id;
                    q.push(w);
                } else if (id != via[w]) { // a genuine non-tree link closes a cycle
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<std::int64_t>::max()) return {};
    return Girth{best / 2};
}

std::string encode(const Hypergraph& h) {
    std::string out = std::to_string(h.k()) + " " + std::to_string(h.d()) + " " +
                      std::to_string(h.n()) + " " + std::to_string(h.m()) + "\n";
    for (std::int64_t e = 0; e < h.m(); ++e) {
        auto s = h.edge(e);
        for (int t = 0; t < h.k(); ++t) {
            out += std::to_string(s[t]);
            out += (t + 1 == h.k()) ? '\n' : ' ';
        }
    }
    return out;
}

namespace {

std::vector<std::int64_t> parse_ints(const std::string& line, int lineno) {
    std::vector<std::int64_t> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p != end) {
        while (p != end && *p == ' ') ++p;
        if (p == end) break;
        std::int64_t v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || (next != end && *next != ' '))
            throw ParseError(lineno, "expected a decimal integer");
        out.push_back(v);
        p = next;
    }
    return out;
}

} // namespace

Hypergraph decode(const std::string& text) {
    if (text.empty() || text.back() != '\n')
        throw ParseError(static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1,
                         "missing trailing newline");
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    std::int64_t k = 0, d = 0, n = 0, m = 0, edges_read = 0;
    std::vector<std::uint32_t> slots;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        if (line.find_first_not_of(' ') == std::string::npos) continue;
        auto vals = parse_ints(line, lineno);
        if (!have_header) {
            if (vals.size() != 4) throw ParseError(lineno, "header must be `k d n m`");
            k = vals[0];
            d = vals[1];
            n = vals[2];
            m = vals[3];
            if (k < 1 || d < 0 || n < 1 || m < 0) throw ParseError(lineno, "header values out of range");
            have_header = true;
            slots.reserve(static_cast<std::size_t>(m * k));
            continue;
        }
        if (static_cast<std::int64_t>(vals.size()) != k)
            throw ParseError(lineno, "edge line has " + std::to_string(vals.size()) +
                                         " entries, expected " + std::to_string(k));
        for (auto v : vals) {
            if (v < 0 || v >= n) throw ParseError(lineno, "vertex index out of range");
            slots.push_back(static_cast<std::uint32_t>(v));
        }
        ++edges_read;
    }
    if (!have_header) throw ParseError(lineno + 1, "missing header");
    if (edges_read != m)
        throw ConsistencyError("header declares " + std::to_string(m) + " edges, found " +
                               std::to_string(edges_read));
    if (m * k != n * d)
        throw ConsistencyError("m*k != n*d");
    std::vector<std::int64_t> deg(n, 0);
    for (auto v : slots) ++deg[v];
    for (std::int64_t v = 0; v < n; ++v)
        if (deg[v] != d)
            throw ConsistencyError("vertex " + std::to_string(v) + " has slot degree " +
                                   std::to_string(deg[v]) + ", header declares d=" +
                                   std::to_string(d));
    return Hypergraph(static_cast<int>(k), static_cast<int>(d), n, std::move(slots));
}

} // namespace hg
