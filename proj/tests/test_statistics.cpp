#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "snu/distributions.hpp"
#include "snu/statistics.hpp"

using namespace snu;

TEST_CASE("component sums: hand examples") {
    std::vector<double> s1 = {1, -1, 2};
    auto r1 = component_sums(s1, KernelSpec::product());
    CHECK(r1.y[0] == 2.0);
    CHECK(r1.vsq[0] == 6.0);

    std::vector<double> s2 = {1, 1, 1, -1, 1};
    auto r2 = component_sums(s2, KernelSpec::product());
    CHECK(r2.y[0] == 3.0);
    CHECK(r2.vsq[0] == 5.0);

    auto r3 = component_sums(s1, KernelSpec::counterexample());
    CHECK(r3.y[1] == 8.0);    // 1 - 1 + 8
    CHECK(r3.vsq[1] == 66.0); // 1 + 1 + 64
}

TEST_CASE("u_stat examples") {
    std::vector<double> s = {1, -1, 2};
    CHECK(u_stat(s, KernelSpec::product()) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(u_stat_bruteforce(s, KernelSpec::product()) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

    std::vector<double> pair = {1.7, 1.7};
    CHECK(u_stat(pair, KernelSpec::product()) ==
          doctest::Approx(1.7 * 1.7).epsilon(1e-14));
    // n = 2: brute force is h(x1, x2) itself
    std::vector<double> two = {0.3, -2.1};
    CHECK(u_stat_bruteforce(two, KernelSpec::counterexample()) ==
          doctest::Approx(eval_kernel(KernelSpec::counterexample(), 0.3, -2.1))
              .epsilon(1e-14));

    KernelSpec null_kernel{{{0.0, Transform::identity()}}};
    CHECK(u_stat(s, null_kernel) == 0.0);

    CHECK_THROWS_AS(u_stat(std::vector<double>{1.0}, KernelSpec::product()),
                    std::invalid_argument);
}

TEST_CASE("oracle equivalence on random instances") {
    CounterRng rng(1234, 0);
    std::uint64_t draw = 0;
    std::vector<KernelSpec> kernels = {
        KernelSpec::product(),
        KernelSpec::counterexample(),
        {{{0.7, Transform::identity()}, {0.5, Transform::centered_square()}}},
        {{{1.0, Transform::identity()},
          {0.5, Transform::centered_square()},
          {0.25, Transform::cube()},
          {0.1, Transform::square()}}},
    };
    for (int inst = 0; inst < 40; ++inst) {
        std::size_t n = 5 + static_cast<std::size_t>(rng.uniform(draw++) * 195);
        const auto& k = kernels[inst % kernels.size()];
        std::vector<double> sample(n);
        for (auto& x : sample) x = 4.0 * rng.uniform(draw++) - 2.0;
        double fast = u_stat(sample, k);
        double brute = u_stat_bruteforce(sample, k);
        CHECK(std::fabs(fast - brute) <=
              1e-10 * std::max(1.0, std::fabs(brute)));
    }
}

TEST_CASE("w_stat examples") {
    std::vector<double> s = {1, -1, 2};
    auto r = w_stat(s, KernelSpec::product());
    CHECK(r.w == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(r.normalizer == 6.0);
    CHECK(r.argmax == 0);

    // Rademacher sample, counterexample kernel: W = 2 (S^2 - n) / n
    std::vector<double> rad = {1, 1, 1, -1, 1};
    auto r2 = w_stat(rad, KernelSpec::counterexample());
    CHECK(r2.w == doctest::Approx(1.6).epsilon(1e-14));

    std::vector<double> zeros = {0, 0, 0, 0};
    CHECK_THROWS_AS(w_stat(zeros, KernelSpec::product()), ZeroNormalizerError);
}

TEST_CASE("n(n-1) U matches the component expansion") {
    CounterRng rng(55, 0);
    std::vector<double> sample(64);
    for (std::size_t i = 0; i < sample.size(); ++i)
        sample[i] = 2.0 * rng.uniform(i) - 1.0;
    auto k = KernelSpec::counterexample();
    auto r = w_stat(sample, k);
    double lhs = static_cast<double>(sample.size()) *
                 static_cast<double>(sample.size() - 1) * r.u;
    double rhs = 0.0;
    for (std::size_t l = 0; l < k.size(); ++l)
        rhs += k.components[l].lambda *
               (r.sums.y[l] * r.sums.y[l] - r.sums.vsq[l]);
    CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, std::fabs(rhs)));
}

TEST_CASE("permutation invariance of W") {
    auto dist = make_distribution("normal");
    auto sample = sample_iid(dist, 200, 9);
    auto k = KernelSpec::counterexample();
    double w0 = w_stat(sample, k).w;
    // summation order changes, so equality holds only up to rounding
    std::vector<double> rev(sample.rbegin(), sample.rend());
    CHECK(w_stat(rev, k).w == doctest::Approx(w0).epsilon(1e-12));
    std::sort(sample.begin(), sample.end());
    CHECK(w_stat(sample, k).w == doctest::Approx(w0).epsilon(1e-12));
}

TEST_CASE("scale invariance of W for the product kernel") {
    auto dist = make_distribution("normal");
    auto sample = sample_iid(dist, 100, 3);
    double w0 = w_stat(sample, KernelSpec::product()).w;
    for (double c : {2.0, -0.5, 1024.0}) {
        std::vector<double> scaled(sample);
        for (auto& x : scaled) x *= c;
        CHECK(w_stat(scaled, KernelSpec::product()).w == w0);
    }
}

TEST_CASE("counterexample identity: W doubles on +/-1 samples") {
    CounterRng rng(77, 0);
    std::uint64_t draw = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 5 + static_cast<std::size_t>(rng.uniform(draw++) * 495);
        std::vector<double> sample(n);
        for (auto& x : sample) x = rng.uniform(draw++) < 0.5 ? -1.0 : 1.0;
        double wp = w_stat(sample, KernelSpec::product()).w;
        double wr = w_stat(sample, KernelSpec::counterexample()).w;
        CHECK(std::fabs(wr - 2.0 * wp) <= 1e-12 * std::max(1.0, std::fabs(wp)));
    }
}

TEST_CASE("zero-weight duplicate component changes nothing; argmax keeps the smaller index") {
    auto dist = make_distribution("normal");
    auto sample = sample_iid(dist, 150, 21);
    KernelSpec base = KernelSpec::counterexample();
    auto r0 = w_stat(sample, base);
    KernelSpec dup = base;
    dup.components.push_back({0.0, base.components[r0.argmax].g});
    auto r1 = w_stat(sample, dup);
    CHECK(r1.argmax == r0.argmax);
    CHECK(r1.normalizer == r0.normalizer);
    CHECK(r1.w == r0.w);
}

TEST_CASE("parallel component sums match the serial reference bitwise") {
    auto dist = make_distribution("square-tail");
    auto sample = sample_iid(dist, 100'000, 13);
    auto k = KernelSpec::counterexample();
    auto par = component_sums(sample, k);
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto par1 = component_sums(sample, k);
    omp_set_num_threads(saved);
    CHECK(par.y == par1.y);
    CHECK(par.vsq == par1.vsq);
#endif
    auto ser = component_sums_serial(sample, k);
    for (std::size_t l = 0; l < k.size(); ++l) {
        CHECK(par.y[l] == doctest::Approx(ser.y[l]).epsilon(1e-12));
        CHECK(par.vsq[l] == doctest::Approx(ser.vsq[l]).epsilon(1e-12));
    }
}
