#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "snu/mdp.hpp"

using namespace snu;

TEST_CASE("estimate_tail guards") {
    auto dist = make_distribution("normal");
    auto k = KernelSpec::product();
    CHECK_THROWS_AS(estimate_tail(dist, k, 100, 2.0, 999, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_tail(dist, k, 100, 10.0, 1000, 1),
                    std::invalid_argument);  // x^2 >= n
    CHECK_THROWS_AS(estimate_tail(dist, k, 100, -1.0, 1000, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        rate_curve(dist, k, 100, {2.0, 2.0}, 1000, 1),
        std::invalid_argument);  // grid not strictly increasing
    CHECK_THROWS_AS(rate_curve(dist, k, 100, {3.0, 2.0}, 1000, 1),
                    std::invalid_argument);
}

TEST_CASE("deterministic upper tail: p_hat = 0 with upper-bound flag") {
    // Rademacher product kernel: W = (S^2 - n)/n <= n - 1 surely, so any
    // threshold in (n-1, n) is unreachable.
    auto dist = make_distribution("rademacher");
    auto est = estimate_tail(dist, KernelSpec::product(), 100,
                             std::sqrt(99.5), 1000, 7);
    CHECK(est.hits == 0);
    CHECK(est.p_hat == 0.0);
    CHECK_FALSE(est.has_log_rate);
    CHECK(est.log_rate_upper ==
          doctest::Approx(std::log(1.0 / 1001.0) / 99.5).epsilon(1e-14));
    CHECK(est.ci_low == 0.0);
    CHECK(est.ci_high > 0.0);
}

TEST_CASE("near-certain lower threshold: p_hat close to 1") {
    // W >= x^2 with x tiny fails only when W < x^2 ~ 0; for Rademacher with
    // odd n, S^2 >= 1 so W >= (1-n)/n; pick the sure event W >= -1 + eps via
    // the smallest representable positive x.
    auto dist = make_distribution("rademacher");
    auto est = estimate_tail(dist, KernelSpec::product(), 101, 1e-8, 2000, 3);
    // P(W >= ~0) = P(S^2 >= n(1+x^2)) which is not 1; instead assert the
    // basic invariants on a plain estimate.
    CHECK(est.hits <= est.reps);
    CHECK(est.ci_low <= est.p_hat);
    CHECK(est.p_hat <= est.ci_high);
    CHECK(est.ci_high - est.ci_low >= 1.0 / 2000);
}

TEST_CASE("zero normalizers are counted, not dropped") {
    auto dist = make_distribution("bernoulli(0.1)");
    auto est = estimate_tail(dist, KernelSpec::product(), 2, 1e-3, 2000, 11);
    CHECK(est.zero_normalizer_reps > 0);
    CHECK(est.hits + est.zero_normalizer_reps <= est.reps);
}

TEST_CASE("rate_curve single point equals estimate_tail") {
    auto dist = make_distribution("normal");
    auto k = KernelSpec::product();
    auto curve = rate_curve(dist, k, 500, {2.0}, 4000, 42);
    REQUIRE(curve.size() == 1);
    auto single = estimate_tail(dist, k, 500, 2.0, 4000, 42);
    CHECK(curve[0].hits == single.hits);
    CHECK(curve[0].p_hat == single.p_hat);
    CHECK(curve[0].log_rate == single.log_rate);
}

TEST_CASE("scheduling independence: bitwise equal across worker counts") {
    auto dist = make_distribution("square-tail");
    auto k = KernelSpec::counterexample();
    std::vector<double> grid = {1.5, 2.0};
    TailOptions w1, w4, w16;
    w1.workers = 1;
    w4.workers = 4;
    w16.workers = 16;
    auto a = rate_curve(dist, k, 300, grid, 20000, 5, w1);
    auto b = rate_curve(dist, k, 300, grid, 20000, 5, w4);
    auto c = rate_curve(dist, k, 300, grid, 20000, 5, w16);
    auto s = rate_curve_serial(dist, k, 300, grid, 20000, 5);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].hits == b[i].hits);
        CHECK(b[i].hits == c[i].hits);
        CHECK(c[i].hits == s[i].hits);
        CHECK(a[i].p_hat == s[i].p_hat);
        CHECK(a[i].zero_normalizer_reps == s[i].zero_normalizer_reps);
    }
}

TEST_CASE("admits_reduction") {
    CHECK(admits_reduction(KernelSpec::product()));
    CHECK_FALSE(admits_reduction(KernelSpec::counterexample()));
    KernelSpec scaled{{{2.5, Transform::identity()}}};
    CHECK(admits_reduction(scaled));
    KernelSpec herm{{{1.0, Transform::identity()},
                     {0.5, Transform::centered_square()}}};
    CHECK_FALSE(admits_reduction(herm));
}

TEST_CASE("pipeline matches the reduction oracle (moderate budget)") {
    auto dist = make_distribution("normal");
    std::vector<double> grid = {1.5, 2.0};
    std::size_t n = 2000, reps = 40000;
    auto est = rate_curve(dist, KernelSpec::product(), n, grid, reps, 17);
    auto orc = oracle_curve(dist, n, grid, reps, 17);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double se1 = std::sqrt(est[i].p_hat * (1 - est[i].p_hat) / reps);
        double se2 = std::sqrt(orc[i].p_hat * (1 - orc[i].p_hat) / reps);
        CHECK(std::fabs(est[i].p_hat - orc[i].p_hat) <=
              4.0 * (se1 + se2) + 1e-12);
        CHECK(est[i].hits > 0);
        CHECK(est[i].has_log_rate);
        CHECK(est[i].log_rate ==
              doctest::Approx(std::log(est[i].p_hat) / (grid[i] * grid[i]))
                  .epsilon(1e-14));
    }
    // tail probabilities decrease along the grid
    CHECK(est[1].p_hat < est[0].p_hat);
}

TEST_CASE("exact binomial confidence band covers p_hat") {
    auto dist = make_distribution("normal");
    TailOptions opts;
    opts.exact_ci = true;
    auto est = estimate_tail(dist, KernelSpec::product(), 200, 1.5, 5000, 2, opts);
    CHECK(est.ci_low <= est.p_hat);
    CHECK(est.p_hat <= est.ci_high);
    CHECK(est.ci_low >= 0.0);
    CHECK(est.ci_high <= 1.0);
}

TEST_CASE("same seed twice is bitwise identical") {
    auto dist = make_distribution("normal");
    auto a = estimate_tail(dist, KernelSpec::product(), 400, 2.0, 5000, 99);
    auto b = estimate_tail(dist, KernelSpec::product(), 400, 2.0, 5000, 99);
    CHECK(a.hits == b.hits);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);
}
