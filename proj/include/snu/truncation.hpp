#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "snu/distributions.hpp"
#include "snu/kernels.hpp"

namespace snu {

// Shared handle on L(x) = E g(X)^2 1{|g(X)| <= x}: analytic when registered,
// otherwise a monotone empirical step function built from one fixed sample.
class LEvaluator {
public:
    LEvaluator(const DistributionSpec& dist, const Transform& g,
               std::size_t budget = 1'000'000, std::uint64_t seed = 0x51ab5eedull);

    double operator()(double x) const;
    bool analytic() const { return analytic_; }
    // Continuous at every point of the solver bracket; false for atomic laws,
    // where the defining identity n L(z) = x^2 z^2 holds only asymptotically.
    bool continuous() const { return continuous_; }

private:
    DistributionSpec dist_;
    Transform g_;
    bool analytic_;
    bool continuous_;
    std::shared_ptr<EmpiricalL> empirical_;
};

// b = inf { x >= 1 : L(x) > 0 }, doubling bracket + bisection to absolute
// tolerance 1e-9. Throws if L vanishes on the whole probed range.
double compute_b(const LEvaluator& L);
double compute_b(const DistributionSpec& dist, const Transform& g);

// z = inf { s >= b+1 : L(s)/s^2 <= x_n^2/n }. Doubling bracket, bisection to
// relative tolerance 1e-9, then fixed-point polish on z = sqrt(n L(z))/x_n;
// for locally constant L this lands on the closed form exactly.
double compute_z(const LEvaluator& L, std::size_t n, double x_n);
double compute_z(const DistributionSpec& dist, const Transform& g,
                 std::size_t n, double x_n);

struct TruncationRow {
    std::size_t component;
    double b;
    double z;
    double l_at_z;
    double residual;       // |n L(z) - x_n^2 z^2| / (x_n^2 z^2)
    bool identity_checked; // false for atomic L, where the identity is
                           // asserted only asymptotically
};

std::vector<TruncationRow> truncation_table(const DistributionSpec& dist,
                                            const KernelSpec& k, std::size_t n,
                                            double x_n);

}  // namespace snu
