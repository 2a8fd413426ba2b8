#include "snu/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "snu/summation.hpp"
#include "snu/truncation.hpp"

namespace snu {

KernelSpec make_kernel(const std::vector<std::pair<double, std::string>>& comps) {
    if (comps.empty()) throw std::invalid_argument("kernel needs at least one component");
    KernelSpec k;
    for (const auto& [lambda, name] : comps) {
        if (lambda < 0.0)
            throw std::invalid_argument("kernel eigenvalues must be nonnegative");
        k.components.push_back({lambda, Transform::from_name(name)});
    }
    return k;
}

double eval_kernel(const KernelSpec& k, double x, double y) {
    double acc = 0.0;
    for (const auto& c : k.components) acc += c.lambda * c.g(x) * c.g(y);
    return acc;
}

std::vector<DegeneracyVerdict> check_degeneracy(const KernelSpec& k,
                                                const DistributionSpec& dist,
                                                std::size_t budget,
                                                std::uint64_t seed) {
    if (budget < 1000)
        throw std::invalid_argument("check_degeneracy: budget must be >= 1000");
    std::vector<DegeneracyVerdict> verdicts;
    for (std::size_t l = 0; l < k.size(); ++l) {
        const Transform& g = k.components[l].g;
        DegeneracyVerdict v{l, 0.0, 0.0, false, false};
        if (dist.finite_support()) {
            double mean = 0.0, scale = 0.0;
            for (auto [a, p] : dist.atoms()) {
                mean += p * g(a);
                scale += p * std::fabs(g(a));
            }
            v.estimate = mean;
            v.analytic = true;
            v.pass = std::fabs(mean) <= 1e-12 * std::max(1.0, scale);
        } else if (dist.symmetric() && g.parity() == Parity::Odd) {
            v.analytic = true;
            v.pass = true;
        } else {
            CounterRng rng(seed, l);
            KahanSum s;
            double s2 = 0.0;
            for (std::size_t i = 0; i < budget; ++i) {
                double gv = g(draw_variate(dist, rng, i));
                s.add(gv);
                s2 += gv * gv;
            }
            double n = static_cast<double>(budget);
            v.estimate = s.value() / n;
            double var = std::max(0.0, s2 / n - v.estimate * v.estimate);
            v.std_error = std::sqrt(var / n);
            v.pass = std::fabs(v.estimate) <= 4.0 * v.std_error;
        }
        verdicts.push_back(v);
    }
    return verdicts;
}

OrthogonalityReport check_orthogonality_a2(const KernelSpec& k,
                                           const DistributionSpec& dist,
                                           std::size_t n, double x_n,
                                           std::size_t budget,
                                           std::uint64_t seed) {
    const std::size_t m = k.size();
    std::vector<double> z(m), l_at_z(m);
    for (std::size_t l = 0; l < m; ++l) {
        LEvaluator L(dist, k.components[l].g);
        z[l] = compute_z(L, n, x_n);
        l_at_z[l] = L(z[l]);
        if (!(l_at_z[l] > 0.0))
            throw std::runtime_error("check_orthogonality_a2: component " +
                                     std::to_string(l) +
                                     " has L(z) = 0 (degenerate)");
    }

    OrthogonalityReport report;
    report.pass = true;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const Transform& ga = k.components[a].g;
            const Transform& gb = k.components[b].g;
            double norm = std::sqrt(l_at_z[a] * l_at_z[b]);
            OrthogonalityEntry e{a, b, 0.0, 0.0, false, false};
            if (dist.finite_support()) {
                double mean = 0.0;
                for (auto [atom, p] : dist.atoms()) {
                    double va = ga(atom), vb = gb(atom);
                    if (std::fabs(va) <= z[a] && std::fabs(vb) <= z[b])
                        mean += p * va * vb;
                }
                e.correlation = mean / norm;
                e.analytic = true;
                e.pass = std::fabs(e.correlation) <= 1e-12;
            } else if (dist.symmetric() && ((ga.parity() == Parity::Odd &&
                                             gb.parity() == Parity::Even) ||
                                            (ga.parity() == Parity::Even &&
                                             gb.parity() == Parity::Odd))) {
                // odd-times-even integrand under a symmetric law
                e.analytic = true;
                e.pass = true;
            } else {
                CounterRng rng(seed, a * m + b);
                KahanSum s;
                double s2 = 0.0;
                for (std::size_t i = 0; i < budget; ++i) {
                    double x = draw_variate(dist, rng, i);
                    double va = ga(x), vb = gb(x);
                    double prod = (std::fabs(va) <= z[a] && std::fabs(vb) <= z[b])
                                      ? va * vb
                                      : 0.0;
                    s.add(prod);
                    s2 += prod * prod;
                }
                double nn = static_cast<double>(budget);
                double mean = s.value() / nn;
                double var = std::max(0.0, s2 / nn - mean * mean);
                e.correlation = mean / norm;
                e.std_error = std::sqrt(var / nn) / norm;
                e.pass = std::fabs(e.correlation) <= 4.0 * e.std_error;
            }
            report.pass = report.pass && e.pass;
            report.entries.push_back(e);
        }
    }
    return report;
}

DominanceReport check_dominance_a1prime(const KernelSpec& k,
                                        const std::vector<double>& probe_grid) {
    if (probe_grid.empty())
        throw std::invalid_argument("check_dominance_a1prime: empty probe grid");
    const std::size_t m = k.size();
    DominanceReport report;
    report.c.assign(m, 0.0);
    bool any_valid = false;
    for (double x : probe_grid) {
        double denom = 0.0;
        for (const auto& c : k.components) {
            double gv = c.g(x);
            denom += c.lambda * gv * gv;
        }
        if (denom == 0.0) continue;  // common zero, skipped
        any_valid = true;
        for (std::size_t l = 0; l < m; ++l) {
            double gv = k.components[l].g(x);
            double ratio = k.components[l].lambda * gv * gv / denom;
            if (ratio > report.c[l]) report.c[l] = ratio;
        }
    }
    if (!any_valid)
        throw std::runtime_error(
            "check_dominance_a1prime: all probe points are common zeros");
    report.c_sum = 0.0;
    for (double c : report.c) report.c_sum += c;
    return report;
}

}  // namespace snu
