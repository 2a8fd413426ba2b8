#include "snu/binomial.hpp"

#include <cmath>
#include <stdexcept>

namespace snu {
namespace {

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -INFINITY) return a;
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

double log_binomial_coeff(std::size_t n, std::size_t k) {
    if (k > n) return -INFINITY;
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_cdf(std::size_t k, std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binomial_cdf: p must lie in [0,1]");
    if (k >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    double acc = -INFINITY;
    for (std::size_t i = 0; i <= k; ++i) {
        double term = log_binomial_coeff(n, i) + static_cast<double>(i) * lp +
                      static_cast<double>(n - i) * lq;
        acc = log_add(acc, term);
    }
    double v = std::exp(acc);
    return v > 1.0 ? 1.0 : v;
}

BinomialInterval clopper_pearson(std::size_t hits, std::size_t trials,
                                 double alpha) {
    if (trials == 0) throw std::invalid_argument("clopper_pearson: zero trials");
    if (hits > trials) throw std::invalid_argument("clopper_pearson: hits > trials");
    BinomialInterval out{0.0, 1.0};
    const double half = alpha / 2.0;
    if (hits > 0) {
        // largest p with P(Bin >= hits) <= half, i.e. 1 - CDF(hits-1) = half
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (1.0 - binomial_cdf(hits - 1, trials, mid) < half ? lo : hi) = mid;
        }
        out.low = 0.5 * (lo + hi);
    }
    if (hits < trials) {
        // smallest p with P(Bin <= hits) <= half
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (binomial_cdf(hits, trials, mid) > half ? lo : hi) = mid;
        }
        out.high = 0.5 * (lo + hi);
    }
    return out;
}

}  // namespace snu
