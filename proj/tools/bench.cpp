// Wall-clock comparison of the serial and OpenMP-parallel paths for the two
// fan-out kernels: pairing-model replication and ODE table solves.
#include "hg/pairing_sim.hpp"
#include "hg/solver.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds(void (*fn)(int), int threads) {
    auto t0 = std::chrono::steady_clock::now();
    fn(threads);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench_replicate(int threads) {
    auto s = hg::replicate(4, 3, 200000, hg::ProcessKind::Independent, 8, 1, threads);
    if (s.mean < 0) std::abort();
}

void bench_table(int threads) {
#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#else
    int nt = 1;
    (void)threads;
    (void)nt;
#endif
    double acc = 0;
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(+ : acc) num_threads(nt)
    for (int k = 3; k <= 5; ++k)
        for (int d = 2; d <= 5; ++d) {
            hg::RateConfig cfg;
            cfg.k = k;
            cfg.d = d;
            cfg.kind = hg::ProcessKind::Matching;
            acc += hg::solve(cfg).value;
        }
    if (acc < 0) std::abort();
}

} // namespace

int main() {
#ifdef _OPENMP
    int cores = omp_get_max_threads();
#else
    int cores = 1;
#endif
    std::printf("threads available: %d\n", cores);

    double rep1 = seconds(bench_replicate, 1);
    double repN = seconds(bench_replicate, 0);
    std::printf("replicate  (8 runs, independent k=4 d=3 n=2e5): serial %.3fs  parallel %.3fs  speedup %.2fx\n",
                rep1, repN, rep1 / repN);

    double tab1 = seconds(bench_table, 1);
    double tabN = seconds(bench_table, 0);
    std::printf("ODE table  (12 matching cells, h=1e-5):          serial %.3fs  parallel %.3fs  speedup %.2fx\n",
                tab1, tabN, tab1 / tabN);
    return 0;
}
