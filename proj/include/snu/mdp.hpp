#pragma once

#include <cstdint>
#include <vector>

#include "snu/distributions.hpp"
#include "snu/kernels.hpp"

namespace snu {

struct TailEstimate {
    std::size_t n = 0;
    double x_n = 0.0;
    std::size_t reps = 0;
    std::size_t hits = 0;
    std::size_t zero_normalizer_reps = 0;  // counted, never silently dropped
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool has_log_rate = false;
    double log_rate = 0.0;        // log(p_hat) / x_n^2, only when hits > 0
    double log_rate_upper = 0.0;  // log((hits+1)/(reps+1)) / x_n^2
    std::uint64_t seed = 0;
};

struct TailOptions {
    int workers = 0;        // 0: OpenMP default
    bool exact_ci = false;  // Clopper-Pearson instead of the normal band
};

// MC estimate of P(W_n >= x_n^2) from `reps` independent samples.
// Deterministic given the seed and independent of the worker count: each
// replication draws from its own counter-based stream and the reduction is
// an integer hit count.
TailEstimate estimate_tail(const DistributionSpec& dist, const KernelSpec& k,
                           std::size_t n, double x_n, std::size_t reps,
                           std::uint64_t seed, const TailOptions& opts = {});

// One TailEstimate per grid point. All thresholds are evaluated against the
// same replications: W is computed once per replication and compared to each
// x^2, so a 4-point grid costs the same sampling budget as a single point.
std::vector<TailEstimate> rate_curve(const DistributionSpec& dist,
                                     const KernelSpec& k, std::size_t n,
                                     const std::vector<double>& x_grid,
                                     std::size_t reps, std::uint64_t seed,
                                     const TailOptions& opts = {});

// Single-threaded reference with the identical stream layout; used by tests
// and the benchmark.
std::vector<TailEstimate> rate_curve_serial(const DistributionSpec& dist,
                                            const KernelSpec& k, std::size_t n,
                                            const std::vector<double>& x_grid,
                                            std::size_t reps,
                                            std::uint64_t seed);

// True when W_n reduces algebraically to (S_n/V_n)^2 - 1, i.e. the kernel is
// a single identity component.
bool admits_reduction(const KernelSpec& k);

// Reduction oracle: direct simulation of P(|S_n|/V_n >= sqrt(1 + x^2)) on
// salted streams, bypassing the kernel/statistic pipeline entirely.
std::vector<TailEstimate> oracle_curve(const DistributionSpec& dist,
                                       std::size_t n,
                                       const std::vector<double>& x_grid,
                                       std::size_t reps, std::uint64_t seed,
                                       const TailOptions& opts = {});

}  // namespace snu
