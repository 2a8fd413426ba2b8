#include "snu/mdp.hpp"

#include <cmath>
#include <stdexcept>

#include "snu/binomial.hpp"
#include "snu/summation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snu {
namespace {

constexpr std::uint64_t kOracleSalt = 0x6F7261636C65ull;

void validate_grid(std::size_t n, const std::vector<double>& x_grid,
                   std::size_t reps) {
    if (reps < 1000)
        throw std::invalid_argument("tail estimation requires reps >= 1000");
    if (x_grid.empty()) throw std::invalid_argument("empty x grid");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0.0))
            throw std::invalid_argument("x_n must be positive");
        if (!(x_grid[i] * x_grid[i] < static_cast<double>(n)))
            throw std::invalid_argument("requires x_n^2 < n");
        if (i > 0 && x_grid[i] <= x_grid[i - 1])
            throw std::invalid_argument("x grid must be strictly increasing");
    }
}

TailEstimate finalize(std::size_t n, double x, std::size_t reps,
                      std::size_t hits, std::size_t zero_norm,
                      std::uint64_t seed, const TailOptions& opts) {
    TailEstimate e;
    e.n = n;
    e.x_n = x;
    e.reps = reps;
    e.hits = hits;
    e.zero_normalizer_reps = zero_norm;
    e.seed = seed;
    const double r = static_cast<double>(reps);
    e.p_hat = static_cast<double>(hits) / r;
    if (opts.exact_ci) {
        auto ci = clopper_pearson(hits, reps);
        e.ci_low = ci.low;
        e.ci_high = ci.high;
    } else {
        double se = std::sqrt(e.p_hat * (1.0 - e.p_hat) / r);
        double half = std::max(1.959963984540054 * se, 1.0 / r);  // width floor
        e.ci_low = std::max(0.0, e.p_hat - half);
        e.ci_high = std::min(1.0, e.p_hat + half);
    }
    const double xsq = x * x;
    e.has_log_rate = hits > 0;
    if (e.has_log_rate) e.log_rate = std::log(e.p_hat) / xsq;
    e.log_rate_upper =
        std::log((static_cast<double>(hits) + 1.0) / (r + 1.0)) / xsq;
    return e;
}

// W_n for replication `rep`; returns false on zero normalizer.
bool replicate_w(const DistributionSpec& dist, const KernelSpec& k,
                 std::size_t n, std::uint64_t seed, std::size_t rep,
                 double& w_out) {
    CounterRng rng(seed, rep);
    const std::size_t m = k.size();
    KahanSum y[8];
    KahanSum vsq[8];
    std::vector<KahanSum> ybig, vbig;
    KahanSum* yp = y;
    KahanSum* vp = vsq;
    if (m > 8) {
        ybig.resize(m);
        vbig.resize(m);
        yp = ybig.data();
        vp = vbig.data();
    }
    for (std::size_t i = 0; i < n; ++i) {
        double xv = draw_variate(dist, rng, i);
        for (std::size_t l = 0; l < m; ++l) {
            double g = k.components[l].g(xv);
            yp[l].add(g);
            vp[l].add(g * g);
        }
    }
    double numer = 0.0, norm = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        double lam = k.components[l].lambda;
        double yv = yp[l].value(), vv = vp[l].value();
        numer += lam * (yv * yv - vv);
        double cand = lam * vv;
        if (cand > norm) norm = cand;
    }
    if (!(norm > 0.0)) return false;
    w_out = numer / norm;
    return true;
}

std::vector<TailEstimate> curve_impl(const DistributionSpec& dist,
                                     const KernelSpec& k, std::size_t n,
                                     const std::vector<double>& x_grid,
                                     std::size_t reps, std::uint64_t seed,
                                     const TailOptions& opts, bool parallel) {
    validate_grid(n, x_grid, reps);
    const std::size_t ngrid = x_grid.size();
    std::vector<long long> hits(ngrid, 0);
    long long zero_norm = 0;
    long long* hp = hits.data();

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
#endif
    if (!parallel) nthreads = 1;

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+: hp[:ngrid]) reduction(+: zero_norm)
    for (std::ptrdiff_t rep = 0; rep < static_cast<std::ptrdiff_t>(reps); ++rep) {
        double w;
        if (!replicate_w(dist, k, n, seed, static_cast<std::size_t>(rep), w)) {
            ++zero_norm;
            continue;
        }
        for (std::size_t j = 0; j < ngrid; ++j)
            if (w >= x_grid[j] * x_grid[j]) ++hp[j];
    }

    std::vector<TailEstimate> out;
    out.reserve(ngrid);
    for (std::size_t j = 0; j < ngrid; ++j)
        out.push_back(finalize(n, x_grid[j], reps,
                               static_cast<std::size_t>(hits[j]),
                               static_cast<std::size_t>(zero_norm), seed, opts));
    return out;
}

}  // namespace

TailEstimate estimate_tail(const DistributionSpec& dist, const KernelSpec& k,
                           std::size_t n, double x_n, std::size_t reps,
                           std::uint64_t seed, const TailOptions& opts) {
    return curve_impl(dist, k, n, {x_n}, reps, seed, opts, true).front();
}

std::vector<TailEstimate> rate_curve(const DistributionSpec& dist,
                                     const KernelSpec& k, std::size_t n,
                                     const std::vector<double>& x_grid,
                                     std::size_t reps, std::uint64_t seed,
                                     const TailOptions& opts) {
    return curve_impl(dist, k, n, x_grid, reps, seed, opts, true);
}

std::vector<TailEstimate> rate_curve_serial(const DistributionSpec& dist,
                                            const KernelSpec& k, std::size_t n,
                                            const std::vector<double>& x_grid,
                                            std::size_t reps,
                                            std::uint64_t seed) {
    return curve_impl(dist, k, n, x_grid, reps, seed, TailOptions{}, false);
}

bool admits_reduction(const KernelSpec& k) {
    return k.size() == 1 && k.components[0].lambda > 0.0 &&
           k.components[0].g.kind() == Transform::Kind::Identity;
}

std::vector<TailEstimate> oracle_curve(const DistributionSpec& dist,
                                       std::size_t n,
                                       const std::vector<double>& x_grid,
                                       std::size_t reps, std::uint64_t seed,
                                       const TailOptions& opts) {
    validate_grid(n, x_grid, reps);
    const std::size_t ngrid = x_grid.size();
    std::vector<long long> hits(ngrid, 0);
    long long zero_norm = 0;
    long long* hp = hits.data();

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
#endif

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+: hp[:ngrid]) reduction(+: zero_norm)
    for (std::ptrdiff_t rep = 0; rep < static_cast<std::ptrdiff_t>(reps); ++rep) {
        CounterRng rng(seed ^ kOracleSalt, static_cast<std::uint64_t>(rep));
        KahanSum s, v2;
        for (std::size_t i = 0; i < n; ++i) {
            double xv = draw_variate(dist, rng, i);
            s.add(xv);
            v2.add(xv * xv);
        }
        double vv = v2.value();
        if (!(vv > 0.0)) {
            ++zero_norm;
            continue;
        }
        double ssq = s.value() * s.value();
        for (std::size_t j = 0; j < ngrid; ++j)
            if (ssq >= (1.0 + x_grid[j] * x_grid[j]) * vv) ++hp[j];
    }

    std::vector<TailEstimate> out;
    out.reserve(ngrid);
    for (std::size_t j = 0; j < ngrid; ++j)
        out.push_back(finalize(n, x_grid[j], reps,
                               static_cast<std::size_t>(hits[j]),
                               static_cast<std::size_t>(zero_norm), seed, opts));
    return out;
}

}  // namespace snu
