#include "snu/lil.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "snu/statistics.hpp"
#include "snu/summation.hpp"

namespace snu {

std::vector<std::size_t> geometric_checkpoints(std::size_t n_max, double theta,
                                               std::size_t min_n) {
    std::vector<std::size_t> cps;
    double v = theta;
    for (int j = 1; j < 100000; ++j, v *= theta) {
        auto n = static_cast<std::size_t>(std::llround(v));
        if (n > n_max) break;
        if (n < min_n) continue;
        if (cps.empty() || n > cps.back()) cps.push_back(n);
    }
    return cps;
}

PathRecord simulate_path(const DistributionSpec& dist, const KernelSpec& k,
                         std::size_t n_max, double theta, std::uint64_t seed) {
    if (n_max < 16) throw std::invalid_argument("simulate_path: n_max must be >= 16");
    if (!(theta > 1.0 && theta <= 2.0))
        throw std::invalid_argument("simulate_path: theta must lie in (1, 2]");

    bool any_positive = false;
    for (const auto& c : k.components) any_positive |= c.lambda > 0.0;
    if (!any_positive)
        throw std::invalid_argument(
            "simulate_path: null kernel (all eigenvalues zero) can never "
            "produce a positive normalizer");

    PathRecord rec;
    rec.theta = theta;
    rec.seed = seed;
    rec.checkpoints = geometric_checkpoints(n_max, theta);
    if (rec.checkpoints.empty())
        throw std::invalid_argument("simulate_path: no checkpoints below n_max");

    const std::size_t m = k.size();
    std::vector<KahanSum> y(m), vsq(m);
    CounterRng rng(seed, 0);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::size_t i = 0;
    double run_max = -std::numeric_limits<double>::infinity();
    for (std::size_t cp : rec.checkpoints) {
        for (; i < cp; ++i) {
            double xv = draw_variate(dist, rng, i);
            for (std::size_t l = 0; l < m; ++l) {
                double g = k.components[l].g(xv);
                y[l].add(g);
                vsq[l].add(g * g);
            }
        }
        ComponentSums sums;
        sums.y.resize(m);
        sums.vsq.resize(m);
        for (std::size_t l = 0; l < m; ++l) {
            sums.y[l] = y[l].value();
            sums.vsq[l] = vsq[l].value();
        }
        double llog = std::log(std::log(static_cast<double>(cp)));
        try {
            StatisticResult r = w_from_sums(sums, k, cp);
            rec.w.push_back(r.w);
            rec.ratio.push_back(r.w / llog);
            rec.gap.push_back(false);
            if (rec.ratio.back() > run_max) run_max = rec.ratio.back();
        } catch (const ZeroNormalizerError&) {
            rec.w.push_back(nan);
            rec.ratio.push_back(nan);
            rec.gap.push_back(true);
        }
        rec.running_max.push_back(run_max);
    }
    return rec;
}

PairedPathTable counterexample_report(std::size_t n_max, double theta,
                                      const std::vector<std::uint64_t>& seeds) {
    PairedPathTable table;
    auto cps = geometric_checkpoints(n_max, theta);
    if (cps.empty()) {
        table.empty_notice = true;
        return table;
    }
    const auto dist = make_distribution("rademacher");
    const auto product = KernelSpec::product();
    const auto cube_pair = KernelSpec::counterexample();
    for (std::uint64_t seed : seeds) {
        PathRecord a = simulate_path(dist, product, n_max, theta, seed);
        PathRecord b = simulate_path(dist, cube_pair, n_max, theta, seed);
        for (std::size_t j = 0; j < a.checkpoints.size(); ++j) {
            PairedPathRow row;
            row.seed = seed;
            row.n = a.checkpoints[j];
            row.w_product = a.w[j];
            row.w_counterexample = b.w[j];
            row.ratio = a.w[j] != 0.0
                            ? b.w[j] / a.w[j]
                            : std::numeric_limits<double>::quiet_NaN();
            table.rows.push_back(row);
        }
    }
    return table;
}

}  // namespace snu
