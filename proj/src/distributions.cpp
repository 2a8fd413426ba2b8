#include "snu/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace snu {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double require_param(const std::map<std::string, double>& params,
                     const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("missing distribution parameter: " + key);
    return it->second;
}

}  // namespace

std::vector<std::pair<double, double>> DistributionSpec::atoms() const {
    switch (kind) {
        case DistKind::Rademacher:
            return {{-1.0, 0.5}, {1.0, 0.5}};
        case DistKind::Bernoulli: {
            double p = params.at("p");
            return {{0.0, 1.0 - p}, {1.0, p}};
        }
        case DistKind::PointMass:
            return {{params.at("value"), 1.0}};
        default:
            throw std::logic_error("atoms() on continuous distribution " + name);
    }
}

std::string DistributionSpec::support_description() const {
    switch (kind) {
        case DistKind::Rademacher: return "{-1, +1}";
        case DistKind::Normal: return "R";
        case DistKind::SquareTail: return "|x| >= 1";
        case DistKind::Bernoulli: return "{0, 1}";
        case DistKind::PointMass: return "point";
    }
    return "?";
}

DistributionSpec make_distribution(const std::string& spec,
                                   const std::map<std::string, double>& params) {
    // accept "bernoulli(0.5)" / "point-mass(1)" as shorthand for the
    // parameter map form
    std::string name = spec;
    std::map<std::string, double> merged = params;
    if (auto open = spec.find('('); open != std::string::npos) {
        if (spec.back() != ')')
            throw std::invalid_argument("malformed distribution name: " + spec);
        name = spec.substr(0, open);
        std::string arg = spec.substr(open + 1, spec.size() - open - 2);
        double value;
        try {
            std::size_t pos = 0;
            value = std::stod(arg, &pos);
            if (pos != arg.size()) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed distribution argument: " + spec);
        }
        merged[name == "bernoulli" ? "p" : "value"] = value;
    }
    DistributionSpec d;
    d.name = name;
    d.params = merged;
    if (name == "rademacher") {
        d.kind = DistKind::Rademacher;
    } else if (name == "normal") {
        d.kind = DistKind::Normal;
    } else if (name == "square-tail" || name == "squaretail") {
        d.kind = DistKind::SquareTail;
        d.name = "square-tail";
    } else if (name == "bernoulli") {
        d.kind = DistKind::Bernoulli;
        double p = require_param(merged, "p");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("bernoulli p must lie in [0,1]");
    } else if (name == "point-mass") {
        d.kind = DistKind::PointMass;
        require_param(merged, "value");
    } else {
        throw std::invalid_argument("unknown distribution: " + name);
    }
    return d;
}

double draw_variate(const DistributionSpec& dist, const CounterRng& rng,
                    std::uint64_t i) {
    switch (dist.kind) {
        case DistKind::Rademacher:
            return (rng.bits(i) >> 63) ? 1.0 : -1.0;
        case DistKind::Normal:
            return inverse_normal_cdf(rng.uniform(i));
        case DistKind::SquareTail: {
            // P(|X| <= t) = 1 - t^-2, so |X| = u^{-1/2} with u uniform.
            std::uint64_t b = rng.bits(i);
            double u = (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53;
            double mag = 1.0 / std::sqrt(u);
            return (b & 1u) ? mag : -mag;
        }
        case DistKind::Bernoulli:
            return rng.uniform(i) < dist.params.at("p") ? 1.0 : 0.0;
        case DistKind::PointMass:
            return dist.params.at("value");
    }
    return 0.0;
}

std::vector<double> sample_iid(const DistributionSpec& dist, std::size_t n,
                               std::uint64_t seed, std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("sample_iid: n must be >= 1");
    CounterRng rng(seed, stream);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = draw_variate(dist, rng, i);
    return out;
}

bool has_analytic_L(const DistributionSpec& dist, const Transform& g) {
    if (dist.finite_support()) return true;
    if (g.kind() != Transform::Kind::Identity) return false;
    return dist.kind == DistKind::Normal || dist.kind == DistKind::SquareTail;
}

double analytic_L(const DistributionSpec& dist, const Transform& g, double x) {
    if (x <= 0.0) throw std::invalid_argument("truncation level must be positive");
    if (dist.finite_support()) {
        double acc = 0.0;
        for (auto [a, p] : dist.atoms()) {
            double v = g(a);
            if (std::fabs(v) <= x) acc += p * v * v;
        }
        return acc;
    }
    if (g.kind() != Transform::Kind::Identity)
        throw std::invalid_argument("no analytic L for (" + dist.name + ", " +
                                    g.name() + ")");
    switch (dist.kind) {
        case DistKind::Normal:
            // E Z^2 1{|Z|<=x} = erf(x/sqrt(2)) - 2 x phi(x)
            return std::erf(x * 0.70710678118654752440) - 2.0 * x * normal_pdf(x);
        case DistKind::SquareTail:
            return x < 1.0 ? 0.0 : 2.0 * std::log(x);
        default:
            throw std::logic_error("unreachable");
    }
}

EmpiricalL::EmpiricalL(const DistributionSpec& dist, const Transform& g,
                       std::size_t budget, std::uint64_t seed)
    : n_(budget) {
    if (budget == 0)
        throw std::invalid_argument("empirical L requires a nonzero sample budget");
    CounterRng rng(seed, 0);
    sorted_abs_.resize(budget);
    for (std::size_t i = 0; i < budget; ++i)
        sorted_abs_[i] = std::fabs(g(draw_variate(dist, rng, i)));
    std::sort(sorted_abs_.begin(), sorted_abs_.end());
    prefix_sq_.resize(budget);
    prefix_quad_.resize(budget);
    double s2 = 0.0, s4 = 0.0, c2 = 0.0, c4 = 0.0;
    for (std::size_t i = 0; i < budget; ++i) {
        double v2 = sorted_abs_[i] * sorted_abs_[i];
        double y = v2 - c2, t = s2 + y;
        c2 = (t - s2) - y;
        s2 = t;
        double v4 = v2 * v2;
        double y4 = v4 - c4, t4 = s4 + y4;
        c4 = (t4 - s4) - y4;
        s4 = t4;
        prefix_sq_[i] = s2;
        prefix_quad_[i] = s4;
    }
}

MomentValue EmpiricalL::at(double x) const {
    if (x <= 0.0) throw std::invalid_argument("truncation level must be positive");
    auto it = std::upper_bound(sorted_abs_.begin(), sorted_abs_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - sorted_abs_.begin());
    MomentValue m;
    m.empirical = true;
    if (k == 0) return m;
    double n = static_cast<double>(n_);
    m.value = prefix_sq_[k - 1] / n;
    double second = prefix_quad_[k - 1] / n;
    double var = std::max(0.0, second - m.value * m.value);
    m.std_error = std::sqrt(var / n);
    return m;
}

MomentValue truncated_second_moment(const DistributionSpec& dist,
                                    const Transform& g, double x,
                                    std::size_t budget, std::uint64_t seed) {
    if (x <= 0.0) throw std::invalid_argument("truncation level must be positive");
    if (has_analytic_L(dist, g)) return {analytic_L(dist, g, x), 0.0, false};
    if (budget == 0)
        throw std::invalid_argument("empirical L requires a nonzero sample budget");
    CounterRng rng(seed, 0);
    double s = 0.0, s2 = 0.0, c = 0.0;
    for (std::size_t i = 0; i < budget; ++i) {
        double v = g(draw_variate(dist, rng, i));
        double term = (std::fabs(v) <= x) ? v * v : 0.0;
        double y = term - c, t = s + y;
        c = (t - s) - y;
        s = t;
        s2 += term * term;
    }
    double n = static_cast<double>(budget);
    MomentValue m;
    m.empirical = true;
    m.value = s / n;
    double var = std::max(0.0, s2 / n - m.value * m.value);
    m.std_error = std::sqrt(var / n);
    return m;
}

SlowVariationDiagnostic slow_variation_diagnostic(
    const DistributionSpec& dist, const Transform& g,
    const std::vector<double>& x_grid, double tol, std::size_t budget,
    std::uint64_t seed) {
    if (x_grid.empty())
        throw std::invalid_argument("slow_variation_diagnostic: empty grid");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (x_grid[i] <= 0.0)
            throw std::invalid_argument("grid points must be positive");
        if (i > 0 && x_grid[i] <= x_grid[i - 1])
            throw std::invalid_argument("grid must be strictly increasing");
    }
    SlowVariationDiagnostic diag;
    bool analytic = has_analytic_L(dist, g);
    std::optional<EmpiricalL> emp;
    if (!analytic) emp.emplace(dist, g, budget, seed);
    auto L = [&](double x) {
        return analytic ? analytic_L(dist, g, x) : emp->at(x).value;
    };
    for (double x : x_grid) {
        SlowVariationRow row;
        row.x = x;
        row.l_at_x = L(x);
        row.l_at_2x = L(2.0 * x);
        row.ratio = row.l_at_x > 0.0
                        ? row.l_at_2x / row.l_at_x
                        : std::numeric_limits<double>::quiet_NaN();
        diag.rows.push_back(row);
    }
    double last = diag.rows.back().ratio;
    diag.slowly_varying = std::isfinite(last) && std::fabs(last - 1.0) <= tol;
    return diag;
}

}  // namespace snu
