#include "hg/reference.hpp"
#include "hg/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace hg {

namespace {

// swap-remove degree buckets over explicit-instance degrees
struct Buckets {
    std::vector<std::vector<std::uint32_t>> b;
    std::vector<std::uint32_t> pos, at;

    Buckets(int d, std::int64_t n) : b(d + 1), pos(n), at(n) {}
    void insert(std::uint32_t v, int c) {
        b[c].push_back(v);
        pos[v] = static_cast<std::uint32_t>(b[c].size() - 1);
        at[v] = static_cast<std::uint32_t>(c);
    }
    void remove(std::uint32_t v) {
        auto& lst = b[at[v]];
        std::uint32_t i = pos[v];
        std::uint32_t last = lst.back();
        lst[i] = last;
        pos[last] = i;
        lst.pop_back();
    }
    void move(std::uint32_t v, int c) {
        remove(v);
        insert(v, c);
    }
    int min_nonempty(int lo) const {
        for (int c = lo; c < static_cast<int>(b.size()); ++c)
            if (!b[c].empty()) return c;
        return -1;
    }
};

// multiplicity-free views: edge -> distinct vertices, vertex -> distinct edges
struct Views {
    std::vector<std::vector<std::uint32_t>> verts_of;
    std::vector<std::vector<std::uint32_t>> edges_of;

    explicit Views(const Hypergraph& h) : verts_of(h.m()), edges_of(h.n()) {
        for (std::int64_t e = 0; e < h.m(); ++e) {
            auto& ve = verts_of[e];
            ve.assign(h.edge(e).begin(), h.edge(e).end());
            std::sort(ve.begin(), ve.end());
            ve.erase(std::unique(ve.begin(), ve.end()), ve.end());
            for (auto v : ve) edges_of[v].push_back(static_cast<std::uint32_t>(e));
        }
    }
};

ReferenceRun run_matching_ref(const Hypergraph& h, std::uint64_t seed) {
    const std::int64_t n = h.n(), m = h.m();
    Views vw(h);
    Rng rng(seed);
    std::vector<std::uint8_t> edge_alive(m, 1);
    std::vector<std::uint8_t> vdel(n, 0);
    std::vector<int> deg(n, 0);
    Buckets bk(h.d(), n);
    for (std::int64_t v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(vw.edges_of[v].size());
        bk.insert(static_cast<std::uint32_t>(v), deg[v]);
    }

    ReferenceRun out;
    std::vector<std::uint32_t> cand, doomed;
    while (true) {
        int c = bk.min_nonempty(1);
        if (c < 0) break;
        auto& lst = bk.b[c];
        std::uint32_t v = lst[rng.below(lst.size())];
        cand.clear();
        for (auto e : vw.edges_of[v])
            if (edge_alive[e]) cand.push_back(e);
        std::uint32_t ei = cand[rng.below(cand.size())];
        out.matched_edges.push_back(ei);
        doomed.clear();
        for (auto u : vw.verts_of[ei]) {
            vdel[u] = 1;
            bk.remove(u);
            for (auto e : vw.edges_of[u])
                if (edge_alive[e]) {
                    edge_alive[e] = 0;
                    doomed.push_back(e);
                }
        }
        for (auto e : doomed)
            for (auto u : vw.verts_of[e])
                if (!vdel[u]) {
                    --deg[u];
                    bk.move(u, deg[u]);
                }
    }

    std::vector<std::uint8_t> used(n, 0);
    for (auto e : out.matched_edges)
        for (auto u : vw.verts_of[e]) {
            if (used[u]) throw std::logic_error("reference matching is not disjoint");
            used[u] = 1;
        }

    out.result.kind = ProcessKind::Matching;
    out.result.k = h.k();
    out.result.d = h.d();
    out.result.n = n;
    out.result.seed = seed;
    out.result.output_size = static_cast<std::int64_t>(out.matched_edges.size());
    out.result.fraction = static_cast<double>(out.result.output_size) / n;
    std::int64_t covered = 0;
    for (std::int64_t v = 0; v < n; ++v) covered += used[v] ? 1 : 0;
    out.result.unmatched = n - covered;
    return out;
}

ReferenceRun run_independent_ref(const Hypergraph& h, std::uint64_t seed) {
    const std::int64_t n = h.n(), m = h.m();
    Views vw(h);
    Rng rng(seed);
    std::vector<std::uint8_t> edge_alive(m, 1);
    std::vector<int> rem(m, 0); // distinct vertices of the edge not yet in I
    std::vector<std::uint8_t> status(n, 0); // 0 open, 1 in I, 2 closed
    std::vector<int> deg(n, 0);
    for (std::int64_t e = 0; e < m; ++e) rem[e] = static_cast<int>(vw.verts_of[e].size());
    Buckets bk(h.d(), n);
    for (std::int64_t v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(vw.edges_of[v].size());
        bk.insert(static_cast<std::uint32_t>(v), deg[v]);
    }

    ReferenceRun out;
    std::int64_t nopen = n;
    std::vector<std::uint32_t> closed_now;
    while (nopen > 0) {
        int c = bk.min_nonempty(0);
        auto& lst = bk.b[c];
        std::uint32_t v = lst[rng.below(lst.size())];
        bk.remove(v);
        status[v] = 1;
        --nopen;
        out.members.push_back(v);
        closed_now.clear();
        for (auto e : vw.edges_of[v]) {
            if (!edge_alive[e]) continue;
            --rem[e]; // v leaves the edge's remaining set
            if (rem[e] == 1) {
                edge_alive[e] = 0; // saturated; its last vertex is closed
                for (auto u : vw.verts_of[e])
                    if (status[u] == 0) {
                        closed_now.push_back(u);
                        break;
                    }
            } else if (rem[e] == 0) {
                edge_alive[e] = 0; // degenerate (loop-only edge)
            }
        }
        for (auto w : closed_now) {
            if (status[w] != 0) continue;
            bk.remove(w);
            status[w] = 2;
            --nopen;
            for (auto e : vw.edges_of[w]) {
                if (!edge_alive[e]) continue;
                edge_alive[e] = 0;
                for (auto u : vw.verts_of[e])
                    if (u != w && status[u] == 0) {
                        --deg[u];
                        bk.move(u, deg[u]);
                    }
            }
        }
    }

    for (std::int64_t e = 0; e < m; ++e) {
        bool all_in = true;
        for (auto u : vw.verts_of[e]) all_in &= (status[u] == 1);
        if (all_in && h.k() > 1)
            throw std::logic_error("reference independent set contains an edge");
    }

    out.result.kind = ProcessKind::Independent;
    out.result.k = h.k();
    out.result.d = h.d();
    out.result.n = n;
    out.result.seed = seed;
    out.result.output_size = static_cast<std::int64_t>(out.members.size());
    out.result.fraction = static_cast<double>(out.result.output_size) / n;
    out.result.unmatched = 0;
    return out;
}

} // namespace

ReferenceRun run_reference_witness(const Hypergraph& h, ProcessKind kind, std::uint64_t seed) {
    return kind == ProcessKind::Matching ? run_matching_ref(h, seed)
                                         : run_independent_ref(h, seed);
}

SimResult run_reference(const Hypergraph& h, ProcessKind kind, std::uint64_t seed) {
    return run_reference_witness(h, kind, seed).result;
}

} // namespace hg
