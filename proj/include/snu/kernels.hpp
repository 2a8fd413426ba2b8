#pragma once

#include <cstdint>
#include <vector>

#include "snu/distributions.hpp"
#include "snu/transforms.hpp"

namespace snu {

struct KernelComponent {
    double lambda;
    Transform g;
};

// Degenerate kernel in spectral form: h(x,y) = sum_l lambda_l g_l(x) g_l(y).
struct KernelSpec {
    std::vector<KernelComponent> components;

    std::size_t size() const { return components.size(); }

    static KernelSpec product() {  // h(x,y) = x y
        return {{{1.0, Transform::identity()}}};
    }
    // g1(x) = x, g2(x) = x^3, lambda1 = lambda2 = 1; the Rademacher
    // counterexample kernel.
    static KernelSpec counterexample() {
        return {{{1.0, Transform::identity()}, {1.0, Transform::cube()}}};
    }
};

KernelSpec make_kernel(const std::vector<std::pair<double, std::string>>& comps);

double eval_kernel(const KernelSpec& k, double x, double y);

struct DegeneracyVerdict {
    std::size_t component;
    double estimate;  // E g_l(X)
    double std_error;
    bool analytic;  // exact value (symmetry or atom enumeration)
    bool pass;
};

// Per-component check that E g_l(X) = 0. Analytic shortcut for odd g under
// symmetric laws and for finite-support laws; otherwise MC with `budget`
// samples and a 4-SE test.
std::vector<DegeneracyVerdict> check_degeneracy(const KernelSpec& k,
                                                const DistributionSpec& dist,
                                                std::size_t budget,
                                                std::uint64_t seed = 0xd3e9ull);

struct OrthogonalityEntry {
    std::size_t l, k;
    double correlation;  // E[gbar_l gbar_k] / sqrt(L_l(z_l) L_k(z_k))
    double std_error;
    bool analytic;
    bool pass;
};

struct OrthogonalityReport {
    std::vector<OrthogonalityEntry> entries;  // off-diagonal pairs l < k
    bool pass;                                // all entries within 4 SE of 0
};

// Condition (a2): normalized truncated cross-correlations at the truncation
// levels z_{n,l}. Throws if some component has L_l(z_{n,l}) = 0.
OrthogonalityReport check_orthogonality_a2(const KernelSpec& k,
                                           const DistributionSpec& dist,
                                           std::size_t n, double x_n,
                                           std::size_t budget,
                                           std::uint64_t seed = 0xa2ull);

struct DominanceReport {
    std::vector<double> c;  // per-component sup over the grid
    double c_sum;
};

// Condition (a1') surrogate: c_l = max over the probe grid of
// lambda_l g_l(x)^2 / sum_nu lambda_nu g_nu(x)^2. Points where the
// denominator vanishes are skipped; throws if every point does.
DominanceReport check_dominance_a1prime(const KernelSpec& k,
                                        const std::vector<double>& probe_grid);

}  // namespace snu
