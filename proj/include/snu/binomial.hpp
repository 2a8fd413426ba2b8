#pragma once

#include <cstddef>

namespace snu {

// log C(n, k)
double log_binomial_coeff(std::size_t n, std::size_t k);

// P(Bin(n, p) <= k), summed in log space.
double binomial_cdf(std::size_t k, std::size_t n, double p);

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
// proportion at level 1 - alpha.
struct BinomialInterval {
    double low;
    double high;
};
BinomialInterval clopper_pearson(std::size_t hits, std::size_t trials,
                                 double alpha = 0.05);

}  // namespace snu
