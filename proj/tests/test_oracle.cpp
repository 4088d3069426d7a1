#include "hg/hypergraph.hpp"
#include "hg/oracle.hpp"
#include "hg/reference.hpp"
#include "hg/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>

using namespace hg;

namespace {

Hypergraph from_edges(int k, int d, std::int64_t n,
                      const std::vector<std::vector<std::uint32_t>>& edges) {
    std::vector<std::uint32_t> slots;
    for (const auto& e : edges) slots.insert(slots.end(), e.begin(), e.end());
    return Hypergraph(k, d, n, std::move(slots));
}

Hypergraph fano() {
    return from_edges(3, 3, 7,
                      {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

// dumb oracles, independent of the branch-and-bound path
std::int64_t dumb_max_matching(const Hypergraph& h) {
    std::vector<std::uint64_t> masks(h.m(), 0);
    for (std::int64_t e = 0; e < h.m(); ++e)
        for (auto v : h.edge(e)) masks[e] |= std::uint64_t{1} << v;
    std::int64_t best = 0;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << h.m()); ++sub) {
        std::uint64_t used = 0;
        bool ok = true;
        int size = 0;
        for (std::int64_t e = 0; e < h.m() && ok; ++e)
            if (sub >> e & 1) {
                if (masks[e] & used) ok = false;
                used |= masks[e];
                ++size;
            }
        if (ok) best = std::max<std::int64_t>(best, size);
    }
    return best;
}

std::int64_t dumb_max_independent(const Hypergraph& h) {
    std::vector<std::uint64_t> masks(h.m(), 0);
    for (std::int64_t e = 0; e < h.m(); ++e)
        for (auto v : h.edge(e)) masks[e] |= std::uint64_t{1} << v;
    std::int64_t best = 0;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << h.n()); ++sub) {
        bool ok = true;
        for (auto mk : masks)
            if ((mk & ~sub) == 0) {
                ok = false;
                break;
            }
        if (ok) best = std::max<std::int64_t>(best, std::popcount(sub));
    }
    return best;
}

} // namespace

TEST_CASE("exact matching basics") {
    CHECK(exact_max_matching(from_edges(3, 1, 3, {{0, 1, 2}})).optimum == 1);
    CHECK(exact_max_matching(from_edges(3, 1, 6, {{0, 1, 2}, {3, 4, 5}})).optimum == 2);
    CHECK(exact_max_matching(fano()).optimum == 1); // any two lines intersect
}

TEST_CASE("exact independent basics") {
    Hypergraph empty(3, 0, 5, {});
    CHECK(exact_max_independent(empty).optimum == 5);
    CHECK(exact_max_independent(from_edges(3, 1, 3, {{0, 1, 2}})).optimum == 2);
    CHECK(exact_max_independent(fano()).optimum == 4);
}

TEST_CASE("witnesses are valid and have the reported size") {
    Hypergraph f = fano();
    ExactResult em = exact_max_matching(f);
    CHECK(static_cast<std::int64_t>(em.witness.size()) == em.optimum);
    ExactResult ei = exact_max_independent(f);
    CHECK(static_cast<std::int64_t>(ei.witness.size()) == ei.optimum);
    for (std::int64_t e = 0; e < f.m(); ++e) {
        bool inside = true;
        for (auto v : f.edge(e))
            inside &= std::find(ei.witness.begin(), ei.witness.end(), v) != ei.witness.end();
        CHECK_FALSE(inside);
    }
}

TEST_CASE("branch and bound agrees with subset enumeration on tiny instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Hypergraph h = generate_configuration(3, 2, 9, seed);
        CHECK(exact_max_matching(h).optimum == dumb_max_matching(h));
        CHECK(exact_max_independent(h).optimum == dumb_max_independent(h));
    }
}

TEST_CASE("exact values are invariant under vertex relabeling") {
    Rng rng(99);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Hypergraph h = generate_configuration(3, 2, 9, seed);
        std::vector<std::uint32_t> perm(h.n());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(i + 1)]);
        std::vector<std::uint32_t> slots;
        for (auto v : h.slots()) slots.push_back(perm[v]);
        Hypergraph hp(h.k(), h.d(), h.n(), std::move(slots));
        CHECK(exact_max_matching(h).optimum == exact_max_matching(hp).optimum);
        CHECK(exact_max_independent(h).optimum == exact_max_independent(hp).optimum);
    }
}

TEST_CASE("budget exhaustion is reported") {
    Hypergraph h = generate_configuration(3, 2, 12, 3);
    CHECK_THROWS_AS(exact_max_matching(h, 2), BudgetExhausted);
    CHECK_THROWS_AS(exact_max_independent(h, 2), BudgetExhausted);
}

TEST_CASE("greedy_mean on forced instances") {
    Hypergraph single = from_edges(3, 1, 3, {{0, 1, 2}});
    GreedyMean g = greedy_mean(single, ProcessKind::Matching, 10, 4);
    CHECK(g.mean == 1.0);
    CHECK(g.stderr_ == 0.0);

    GreedyMean gf = greedy_mean(fano(), ProcessKind::Matching, 25, 4);
    CHECK(gf.mean == 1.0); // every greedy matching on the Fano plane has size 1
    CHECK(gf.stderr_ == 0.0);
}

TEST_CASE("greedy output never exceeds the exact optimum") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Hypergraph h = generate_simple(3, 2, 12, seed, 10000);
        std::int64_t nu = exact_max_matching(h).optimum;
        std::int64_t alpha = exact_max_independent(h).optimum;
        for (int rep = 0; rep < 5; ++rep) {
            CHECK(run_reference(h, ProcessKind::Matching, 100 + rep).output_size <= nu);
            CHECK(run_reference(h, ProcessKind::Independent, 100 + rep).output_size <= alpha);
        }
    }
}

TEST_CASE("independence bound for regular instances") {
    // alpha <= (1 - 1/k) n for k-uniform d-regular instances
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Hypergraph h = generate_configuration(3, 2, 9, seed);
        CHECK(3 * exact_max_independent(h).optimum <= 2 * h.n());
    }
}
