#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "snu/kernels.hpp"

namespace snu {

struct ZeroNormalizerError : std::runtime_error {
    ZeroNormalizerError()
        : std::runtime_error("all kernel components vanish on the sample "
                             "(zero self-normalizer)") {}
};

struct ComponentSums {
    std::vector<double> y;    // Y_l = sum_i g_l(X_i)
    std::vector<double> vsq;  // V^2_l = sum_i g_l(X_i)^2
};

// Blocked pairwise accumulation, OpenMP over fixed-size blocks; values are
// independent of the thread count because blocks are combined in index order.
ComponentSums component_sums(std::span<const double> sample, const KernelSpec& k);

// Straight-line Kahan reference.
ComponentSums component_sums_serial(std::span<const double> sample,
                                    const KernelSpec& k);

// U_n = sum_l lambda_l (Y_l^2 - V^2_l) / (n(n-1)) via the expansion.
double u_stat(std::span<const double> sample, const KernelSpec& k);

// Direct O(n^2 m) double sum over i != j; the test oracle for u_stat.
double u_stat_bruteforce(std::span<const double> sample, const KernelSpec& k);

struct StatisticResult {
    ComponentSums sums;
    double u;
    double normalizer;   // max_l lambda_l V^2_l
    std::size_t argmax;  // smallest index attaining the max
    double w;            // n(n-1) U / normalizer
};

// Throws ZeroNormalizerError when max_l lambda_l V^2_l = 0.
StatisticResult w_stat(std::span<const double> sample, const KernelSpec& k);

// W and normalizer from precomputed sums, for incremental (prefix) paths.
StatisticResult w_from_sums(const ComponentSums& sums, const KernelSpec& k,
                            std::size_t n);

}  // namespace snu
