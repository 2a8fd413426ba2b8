#include "snu/truncation.hpp"

#include <cmath>
#include <stdexcept>

namespace snu {

LEvaluator::LEvaluator(const DistributionSpec& dist, const Transform& g,
                       std::size_t budget, std::uint64_t seed)
    : dist_(dist), g_(g), analytic_(has_analytic_L(dist, g)) {
    continuous_ = !dist.finite_support() && analytic_;
    if (!analytic_) empirical_ = std::make_shared<EmpiricalL>(dist, g, budget, seed);
}

double LEvaluator::operator()(double x) const {
    return analytic_ ? analytic_L(dist_, g_, x) : empirical_->at(x).value;
}

double compute_b(const LEvaluator& L) {
    constexpr double kTol = 1e-9;
    if (L(1.0) > 0.0) return 1.0;
    double lo = 1.0, hi = 2.0;
    int doublings = 0;
    while (L(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 200)
            throw std::runtime_error(
                "compute_b: L vanishes on the probed range (degenerate component)");
    }
    while (hi - lo > kTol) {
        double mid = 0.5 * (lo + hi);
        (L(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double compute_b(const DistributionSpec& dist, const Transform& g) {
    return compute_b(LEvaluator(dist, g));
}

double compute_z(const LEvaluator& L, std::size_t n, double x_n) {
    if (n < 2) throw std::invalid_argument("compute_z: n must be >= 2");
    if (!(x_n > 0.0)) throw std::invalid_argument("compute_z: x_n must be positive");
    if (!(x_n * x_n < static_cast<double>(n)))
        throw std::invalid_argument("compute_z: requires x_n^2 < n");

    const double target = x_n * x_n / static_cast<double>(n);
    auto ok = [&](double s) { return L(s) / (s * s) <= target; };

    const double b = compute_b(L);
    const double s0 = b + 1.0;
    if (ok(s0)) return s0;  // lower endpoint binds

    double lo = s0, hi = 2.0 * s0;
    int doublings = 0;
    while (!ok(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 200)
            throw std::runtime_error("compute_z: bracket did not converge");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    double z = hi;  // satisfying endpoint of the bracket

    // Fixed-point polish on z = sqrt(n L(z)) / x_n. Exact in one step when L
    // is locally constant; converges to the root of n L(z) = x_n^2 z^2 when L
    // is continuous there.
    double polished = z;
    for (int it = 0; it < 64; ++it) {
        double lz = L(polished);
        double next = std::sqrt(static_cast<double>(n) * lz) / x_n;
        if (next < s0) next = s0;
        if (std::fabs(next - polished) <= 1e-15 * polished) {
            polished = next;
            break;
        }
        polished = next;
    }
    if (polished >= s0 && L(polished) / (polished * polished) <= target * (1.0 + 1e-12) &&
        std::fabs(polished - z) <= std::max(1e-6 * z, hi - lo + 1e-9 * z))
        return polished;
    return z;
}

double compute_z(const DistributionSpec& dist, const Transform& g,
                 std::size_t n, double x_n) {
    return compute_z(LEvaluator(dist, g), n, x_n);
}

std::vector<TruncationRow> truncation_table(const DistributionSpec& dist,
                                            const KernelSpec& k, std::size_t n,
                                            double x_n) {
    std::vector<TruncationRow> rows;
    rows.reserve(k.size());
    for (std::size_t l = 0; l < k.size(); ++l) {
        LEvaluator L(dist, k.components[l].g);
        TruncationRow row;
        row.component = l;
        row.b = compute_b(L);
        row.z = compute_z(L, n, x_n);
        row.l_at_z = L(row.z);
        double rhs = x_n * x_n * row.z * row.z;
        row.residual = std::fabs(static_cast<double>(n) * row.l_at_z - rhs) / rhs;
        row.identity_checked = L.continuous();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace snu
