#include "snu/statistics.hpp"

#include <cmath>

#include "snu/summation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snu {
namespace {

constexpr std::size_t kBlock = 4096;

void block_sums(std::span<const double> sample, const KernelSpec& k,
                std::size_t lo, std::size_t hi, double* y, double* vsq) {
    const std::size_t m = k.size();
    for (std::size_t l = 0; l < m; ++l) {
        const Transform& g = k.components[l].g;
        KahanSum sy, sv;
        for (std::size_t i = lo; i < hi; ++i) {
            double v = g(sample[i]);
            sy.add(v);
            sv.add(v * v);
        }
        y[l] = sy.value();
        vsq[l] = sv.value();
    }
}

}  // namespace

ComponentSums component_sums(std::span<const double> sample, const KernelSpec& k) {
    if (sample.size() < 2)
        throw std::invalid_argument("component_sums: sample length must be >= 2");
    const std::size_t m = k.size();
    const std::size_t nblocks = (sample.size() + kBlock - 1) / kBlock;
    std::vector<double> by(nblocks * m), bv(nblocks * m);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        std::size_t hi = std::min(lo + kBlock, sample.size());
        block_sums(sample, k, lo, hi, &by[b * m], &bv[b * m]);
    }

    ComponentSums out;
    out.y.assign(m, 0.0);
    out.vsq.assign(m, 0.0);
    // index-ordered combine keeps the result thread-count independent
    for (std::size_t l = 0; l < m; ++l) {
        KahanSum sy, sv;
        for (std::size_t b = 0; b < nblocks; ++b) {
            sy.add(by[b * m + l]);
            sv.add(bv[b * m + l]);
        }
        out.y[l] = sy.value();
        out.vsq[l] = sv.value();
    }
    return out;
}

ComponentSums component_sums_serial(std::span<const double> sample,
                                    const KernelSpec& k) {
    if (sample.size() < 2)
        throw std::invalid_argument("component_sums: sample length must be >= 2");
    const std::size_t m = k.size();
    ComponentSums out;
    out.y.assign(m, 0.0);
    out.vsq.assign(m, 0.0);
    for (std::size_t l = 0; l < m; ++l) {
        KahanSum sy, sv;
        const Transform& g = k.components[l].g;
        for (double x : sample) {
            double v = g(x);
            sy.add(v);
            sv.add(v * v);
        }
        out.y[l] = sy.value();
        out.vsq[l] = sv.value();
    }
    return out;
}

namespace {

double u_from_sums(const ComponentSums& sums, const KernelSpec& k, std::size_t n) {
    KahanSum acc;
    for (std::size_t l = 0; l < k.size(); ++l)
        acc.add(k.components[l].lambda * (sums.y[l] * sums.y[l] - sums.vsq[l]));
    return acc.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace

double u_stat(std::span<const double> sample, const KernelSpec& k) {
    if (sample.size() < 2)
        throw std::invalid_argument("u_stat: sample length must be >= 2");
    return u_from_sums(component_sums(sample, k), k, sample.size());
}

double u_stat_bruteforce(std::span<const double> sample, const KernelSpec& k) {
    const std::size_t n = sample.size();
    if (n < 2)
        throw std::invalid_argument("u_stat_bruteforce: sample length must be >= 2");
    KahanSum acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) acc.add(eval_kernel(k, sample[i], sample[j]));
    return acc.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

StatisticResult w_from_sums(const ComponentSums& sums, const KernelSpec& k,
                            std::size_t n) {
    StatisticResult r;
    r.sums = sums;
    r.u = u_from_sums(sums, k, n);
    r.normalizer = 0.0;
    r.argmax = 0;
    for (std::size_t l = 0; l < k.size(); ++l) {
        double cand = k.components[l].lambda * sums.vsq[l];
        if (cand > r.normalizer) {  // strict: ties keep the smallest index
            r.normalizer = cand;
            r.argmax = l;
        }
    }
    if (!(r.normalizer > 0.0)) throw ZeroNormalizerError();
    r.w = static_cast<double>(n) * static_cast<double>(n - 1) * r.u / r.normalizer;
    return r;
}

StatisticResult w_stat(std::span<const double> sample, const KernelSpec& k) {
    if (sample.size() < 2)
        throw std::invalid_argument("w_stat: sample length must be >= 2");
    return w_from_sums(component_sums(sample, k), k, sample.size());
}

}  // namespace snu
