// Timing comparison between the OpenMP paths and their serial references.
// Run manually: build/bench/snu_bench [n] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "snu/distributions.hpp"
#include "snu/mdp.hpp"
#include "snu/statistics.hpp"

using namespace snu;

namespace {

template <typename F>
double time_best_of(int rounds, F&& f) {
    double best = 1e300;
    for (int r = 0; r < rounds; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

volatile double sink;

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2'000'000;
    std::size_t reps = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 50'000;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    auto dist = make_distribution("normal");
    auto k = KernelSpec::counterexample();

    auto sample = sample_iid(dist, n, 1);
    double t_par = time_best_of(3, [&] {
        auto s = component_sums(sample, k);
        sink = s.y[0];
    });
    double t_ser = time_best_of(3, [&] {
        auto s = component_sums_serial(sample, k);
        sink = s.y[0];
    });
    std::printf("component_sums      n=%zu: parallel %.3fs, serial %.3fs, speedup %.2fx\n",
                n, t_par, t_ser, t_ser / t_par);

    std::vector<double> grid = {1.5, 2.0, 2.5};
    std::size_t rate_n = 500;
    double t_rate_par = time_best_of(2, [&] {
        auto c = rate_curve(dist, KernelSpec::product(), rate_n, grid, reps, 1);
        sink = c[0].p_hat;
    });
    double t_rate_ser = time_best_of(2, [&] {
        auto c = rate_curve_serial(dist, KernelSpec::product(), rate_n, grid, reps, 1);
        sink = c[0].p_hat;
    });
    std::printf("rate_curve  n=%zu reps=%zu: parallel %.3fs, serial %.3fs, speedup %.2fx\n",
                rate_n, reps, t_rate_par, t_rate_ser, t_rate_ser / t_rate_par);
    return 0;
}
