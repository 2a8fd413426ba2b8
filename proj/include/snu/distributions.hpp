#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "snu/rng.hpp"
#include "snu/transforms.hpp"

namespace snu {

enum class DistKind { Rademacher, Normal, SquareTail, Bernoulli, PointMass };

// A sampleable law. Built-ins:
//   rademacher : +/-1 equiprobable
//   normal     : standard normal
//   square-tail: symmetric density 1/|x|^3 on |x| >= 1, so
//                 E X^2 1{|X|<=x} = 2 ln x (infinite variance, slowly
//                 varying truncated second moment)
//   bernoulli  : {0,1} with P(1) = p (nonnegative, for the lower-tail audit)
//   point-mass : constant v
struct DistributionSpec {
    DistKind kind;
    std::string name;
    std::map<std::string, double> params;

    bool symmetric() const {
        return kind == DistKind::Rademacher || kind == DistKind::Normal ||
               kind == DistKind::SquareTail;
    }
    bool finite_support() const {
        return kind == DistKind::Rademacher || kind == DistKind::Bernoulli ||
               kind == DistKind::PointMass;
    }
    // Atoms as (value, probability); only for finite-support laws.
    std::vector<std::pair<double, double>> atoms() const;

    std::string support_description() const;
};

/// Accepts "bernoulli(0.5)" / "point-mass(1)" shorthand for the parameter map.
// Throws std::invalid_argument on unknown name or bad parameters.
DistributionSpec make_distribution(const std::string& name,
                                   const std::map<std::string, double>& params = {});

// Variate i of the stream (seed, stream). Pure in (spec, seed, stream, i).
double draw_variate(const DistributionSpec& dist, const CounterRng& rng,
                    std::uint64_t i);

std::vector<double> sample_iid(const DistributionSpec& dist, std::size_t n,
                               std::uint64_t seed, std::uint64_t stream = 0);

struct MomentValue {
    double value = 0.0;
    double std_error = 0.0;  // 0 for analytic values
    bool empirical = false;
};

bool has_analytic_L(const DistributionSpec& dist, const Transform& g);

// L(x) = E g(X)^2 1{|g(X)| <= x} for registered (dist, g) pairs.
double analytic_L(const DistributionSpec& dist, const Transform& g, double x);

// Analytic branch when registered, otherwise plug-in average over `budget`
// samples with reported standard error. Throws on x <= 0 or zero budget.
MomentValue truncated_second_moment(const DistributionSpec& dist,
                                    const Transform& g, double x,
                                    std::size_t budget = 1'000'000,
                                    std::uint64_t seed = 0x51ab5eedull);

// Empirical L over one fixed sample: sorted |g| values with prefix sums, so
// L-hat is an exactly monotone step function of x. Used as the fallback
// inside the truncation solver.
class EmpiricalL {
public:
    EmpiricalL(const DistributionSpec& dist, const Transform& g,
               std::size_t budget, std::uint64_t seed);

    MomentValue at(double x) const;
    std::size_t budget() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> sorted_abs_;   // |g(X_i)| ascending
    std::vector<double> prefix_sq_;    // running sums of g^2 in that order
    std::vector<double> prefix_quad_;  // running sums of g^4
};

struct SlowVariationRow {
    double x;
    double l_at_x;
    double l_at_2x;
    double ratio;  // L(2x)/L(x)
};

struct SlowVariationDiagnostic {
    std::vector<SlowVariationRow> rows;
    bool slowly_varying;  // ratios approach 1 at the grid's upper end
};

SlowVariationDiagnostic slow_variation_diagnostic(
    const DistributionSpec& dist, const Transform& g,
    const std::vector<double>& x_grid, double tol = 0.05,
    std::size_t budget = 1'000'000, std::uint64_t seed = 0x51ab5eedull);

}  // namespace snu
