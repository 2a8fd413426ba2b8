#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "snu/distributions.hpp"
#include "snu/kernels.hpp"

namespace snu {

enum class BoundStatus { Satisfied, Violated, Inconclusive };

struct BoundReport {
    std::string bound_name;
    std::map<std::string, double> parameters;
    double bound_value = 0.0;
    double empirical_p = 0.0;
    double empirical_se = 0.0;  // 0 when the probability is exact
    bool exact_oracle = false;
    BoundStatus status = BoundStatus::Inconclusive;
};

const char* to_string(BoundStatus s);

// P(sum Y_i <= x) <= exp(-(mu_n - x)^2 / (2 B_n^2)) for independent
// nonnegative Y_i, with mu_n = n E Y and B_n^2 = n E Y^2 from exact atom
// moments. Exact oracle for bernoulli (binomial CDF) and point-mass.
// Requires a nonnegative finite-support law and 0 < x < mu_n.
BoundReport lower_tail_bound(const DistributionSpec& dist, std::size_t n,
                             double x);

// Truncated-sum exponential inequality: for any b, v, s > 0,
//   P(|sum (xi_i 1{|xi_i|<=b} - E xi 1{|xi|<=b})| >= t) <= 2 e^{-s}
// with t = v e^v n E xi^2 1{|xi|<=b} / (2b) + s b / v, where xi = g(X).
// Exact binomial oracle for the Rademacher/identity case; MC otherwise, with
// the resolvability guard (bound below 50/reps -> inconclusive).
BoundReport cls_truncated_bound(const DistributionSpec& dist, const Transform& g,
                                std::size_t n, double b, double v, double s,
                                std::size_t reps, std::uint64_t seed);

// Bernstein-type bound for the decoupled degenerate sum over two independent
// samples: P(|sum_{i,j} h(X_i, Y_j)| > x) <= K exp(-min(x/C, (x/B)^{2/3},
// (x/A)^{1/2}) / K) with A = sup|h|, C^2 = n^2 E h^2,
// B^2 = n sup_y E_X h^2(X, y). K is supplied by the caller. Moments come from
// exact atom enumeration, so the kernel must be bounded on the support:
// distributions without finite support are rejected. The report also carries
// an MC estimate of E h^2 as a cross-check.
BoundReport glz_decoupled_bound(const KernelSpec& k, const DistributionSpec& dist,
                                std::size_t n, double K, double x,
                                std::size_t reps, std::uint64_t seed);

}  // namespace snu
