#include "snu/inequality.hpp"

#include <cmath>
#include <stdexcept>

#include "snu/binomial.hpp"
#include "snu/summation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snu {
namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr double kMinResolvableHits = 50.0;

BoundStatus verdict(double p, double se, bool exact, double bound,
                    std::size_t reps) {
    if (!exact && bound < kMinResolvableHits / static_cast<double>(reps))
        return BoundStatus::Inconclusive;
    double ucl = exact ? p : p + kZ95 * se;
    return ucl <= bound ? BoundStatus::Satisfied : BoundStatus::Violated;
}

}  // namespace

const char* to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::Satisfied: return "satisfied";
        case BoundStatus::Violated: return "violated";
        case BoundStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

BoundReport lower_tail_bound(const DistributionSpec& dist, std::size_t n,
                             double x) {
    if (!dist.finite_support())
        throw std::invalid_argument(
            "lower_tail_bound: needs a finite-support nonnegative law");
    double ey = 0.0, ey2 = 0.0;
    for (auto [a, p] : dist.atoms()) {
        if (a < 0.0)
            throw std::invalid_argument("lower_tail_bound: law must be nonnegative");
        ey += p * a;
        ey2 += p * a * a;
    }
    const double mu_n = static_cast<double>(n) * ey;
    const double b_sq = static_cast<double>(n) * ey2;
    if (!(x > 0.0 && x < mu_n))
        throw std::invalid_argument("lower_tail_bound: requires 0 < x < mu_n");

    BoundReport rep;
    rep.bound_name = "lower-tail";
    rep.parameters = {{"n", static_cast<double>(n)},
                      {"x", x},
                      {"mu_n", mu_n},
                      {"B_n_sq", b_sq}};
    rep.bound_value = std::exp(-(mu_n - x) * (mu_n - x) / (2.0 * b_sq));
    rep.exact_oracle = true;
    if (dist.kind == DistKind::Bernoulli) {
        double p = dist.params.at("p");
        auto kf = static_cast<long long>(std::floor(x));
        rep.empirical_p =
            kf < 0 ? 0.0 : binomial_cdf(static_cast<std::size_t>(kf), n, p);
    } else {  // point mass
        double v = dist.params.at("value");
        rep.empirical_p = static_cast<double>(n) * v <= x ? 1.0 : 0.0;
    }
    rep.status = verdict(rep.empirical_p, 0.0, true, rep.bound_value, 1);
    return rep;
}

BoundReport cls_truncated_bound(const DistributionSpec& dist, const Transform& g,
                                std::size_t n, double b, double v, double s,
                                std::size_t reps, std::uint64_t seed) {
    if (!(b > 0.0 && v > 0.0 && s > 0.0))
        throw std::invalid_argument("cls_truncated_bound: b, v, s must be positive");

    // E xi 1{|xi|<=b} and E xi^2 1{|xi|<=b}
    double mu1, mu2;
    bool analytic_moments = true;
    if (dist.finite_support()) {
        mu1 = mu2 = 0.0;
        for (auto [a, p] : dist.atoms()) {
            double xi = g(a);
            if (std::fabs(xi) <= b) {
                mu1 += p * xi;
                mu2 += p * xi * xi;
            }
        }
    } else if (dist.symmetric() && g.parity() == Parity::Odd &&
               has_analytic_L(dist, g)) {
        mu1 = 0.0;
        mu2 = analytic_L(dist, g, b);
    } else {
        analytic_moments = false;
        auto m2 = truncated_second_moment(dist, g, b);
        mu2 = m2.value;
        CounterRng rng(seed ^ 0x715ull, 0);
        KahanSum acc;
        const std::size_t budget = 1'000'000;
        for (std::size_t i = 0; i < budget; ++i) {
            double xi = g(draw_variate(dist, rng, i));
            if (std::fabs(xi) <= b) acc.add(xi);
        }
        mu1 = acc.value() / static_cast<double>(budget);
    }

    const double t = v * std::exp(v) * static_cast<double>(n) * mu2 / (2.0 * b) +
                     s * b / v;
    BoundReport rep;
    rep.bound_name = "cls-truncated";
    rep.parameters = {{"n", static_cast<double>(n)}, {"b", b},     {"v", v},
                      {"s", s},                      {"t", t},     {"mu1", mu1},
                      {"mu2", mu2},                  {"analytic_moments",
                                                      analytic_moments ? 1.0 : 0.0}};
    rep.bound_value = 2.0 * std::exp(-s);

    const bool rademacher_identity = dist.kind == DistKind::Rademacher &&
                                     g.kind() == Transform::Kind::Identity;
    if (rademacher_identity) {
        rep.exact_oracle = true;
        if (b < 1.0) {
            rep.empirical_p = 0.0;  // truncation removes all mass, sum is 0 a.s.
        } else if (t > static_cast<double>(n)) {
            rep.empirical_p = 0.0;  // threshold above the max of the sum
        } else {
            // sum = 2 Bin(n, 1/2) - n; P(|sum| >= t)
            double hi = (static_cast<double>(n) + t) / 2.0;
            double lo = (static_cast<double>(n) - t) / 2.0;
            auto k_hi = static_cast<std::size_t>(std::ceil(hi));
            double upper = k_hi == 0
                               ? 1.0
                               : 1.0 - binomial_cdf(k_hi - 1, n, 0.5);
            double lower = lo < 0.0
                               ? 0.0
                               : binomial_cdf(
                                     static_cast<std::size_t>(std::floor(lo)), n,
                                     0.5);
            rep.empirical_p = std::min(1.0, upper + lower);
        }
        rep.status = verdict(rep.empirical_p, 0.0, true, rep.bound_value, 1);
        return rep;
    }

    if (reps == 0)
        throw std::invalid_argument("cls_truncated_bound: needs reps > 0 without "
                                    "an exact oracle");
    long long hits = 0;
#pragma omp parallel for schedule(static) reduction(+: hits)
    for (std::ptrdiff_t rep_i = 0; rep_i < static_cast<std::ptrdiff_t>(reps);
         ++rep_i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(rep_i));
        KahanSum acc;
        for (std::size_t i = 0; i < n; ++i) {
            double xi = g(draw_variate(dist, rng, i));
            if (std::fabs(xi) <= b) acc.add(xi - mu1);
            else acc.add(-mu1);
        }
        if (std::fabs(acc.value()) >= t) ++hits;
    }
    double r = static_cast<double>(reps);
    rep.empirical_p = static_cast<double>(hits) / r;
    rep.empirical_se = std::sqrt(rep.empirical_p * (1.0 - rep.empirical_p) / r);
    rep.status =
        verdict(rep.empirical_p, rep.empirical_se, false, rep.bound_value, reps);
    return rep;
}

BoundReport glz_decoupled_bound(const KernelSpec& k, const DistributionSpec& dist,
                                std::size_t n, double K, double x,
                                std::size_t reps, std::uint64_t seed) {
    if (!(K > 0.0)) throw std::invalid_argument("glz_decoupled_bound: K must be positive");
    if (x < 0.0) throw std::invalid_argument("glz_decoupled_bound: x must be >= 0");
    if (!dist.finite_support())
        throw std::invalid_argument(
            "glz_decoupled_bound: kernel is unbounded on an infinite support; "
            "pre-truncate the transforms or use a finite-support law");

    const auto atoms = dist.atoms();
    double a_sup = 0.0, eh2 = 0.0;
    double b_inner_max = 0.0;
    for (auto [ay, py] : atoms) {
        double inner = 0.0;  // E_X h^2(X, ay)
        for (auto [ax, px] : atoms) {
            double h = eval_kernel(k, ax, ay);
            a_sup = std::max(a_sup, std::fabs(h));
            eh2 += px * py * h * h;
            inner += px * h * h;
        }
        b_inner_max = std::max(b_inner_max, inner);
    }
    const double nn = static_cast<double>(n);
    const double c_val = nn * std::sqrt(eh2);        // C = sqrt(n^2 E h^2)
    const double b_val = std::sqrt(nn * b_inner_max);

    double expo = 0.0;
    if (x > 0.0) {
        expo = x / c_val;
        expo = std::min(expo, std::pow(x / b_val, 2.0 / 3.0));
        expo = std::min(expo, std::sqrt(x / a_sup));
    }
    BoundReport rep;
    rep.bound_name = "glz-decoupled";
    rep.parameters = {{"n", nn},       {"K", K},           {"x", x},
                      {"A", a_sup},    {"B_sq", b_val * b_val},
                      {"C_sq", c_val * c_val}, {"Eh2", eh2}};
    rep.bound_value = K * std::exp(-expo / K);

    if (reps == 0)
        throw std::invalid_argument("glz_decoupled_bound: needs reps > 0");
    const std::size_t m = k.size();
    long long hits = 0;
    KahanSum eh2_mc_sum;
    double eh2_mc_sq = 0.0;
#pragma omp parallel for schedule(static) reduction(+: hits)
    for (std::ptrdiff_t rep_i = 0; rep_i < static_cast<std::ptrdiff_t>(reps);
         ++rep_i) {
        CounterRng rx(seed, 2 * static_cast<std::uint64_t>(rep_i));
        CounterRng ry(seed, 2 * static_cast<std::uint64_t>(rep_i) + 1);
        double sum = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
            const Transform& g = k.components[l].g;
            KahanSum sx, sy;
            for (std::size_t i = 0; i < n; ++i) {
                sx.add(g(draw_variate(dist, rx, i)));
                sy.add(g(draw_variate(dist, ry, i)));
            }
            sum += k.components[l].lambda * sx.value() * sy.value();
        }
        if (std::fabs(sum) > x) ++hits;
    }
    // independent MC cross-check of E h^2
    {
        CounterRng rng(seed ^ 0x9777ull, 0);
        const std::size_t budget = 100'000;
        for (std::size_t i = 0; i < budget; ++i) {
            double hx = draw_variate(dist, rng, 2 * i);
            double hy = draw_variate(dist, rng, 2 * i + 1);
            double h = eval_kernel(k, hx, hy);
            eh2_mc_sum.add(h * h);
            eh2_mc_sq += h * h * h * h;
        }
        double bud = static_cast<double>(budget);
        double mean = eh2_mc_sum.value() / bud;
        double var = std::max(0.0, eh2_mc_sq / bud - mean * mean);
        rep.parameters["Eh2_mc"] = mean;
        rep.parameters["Eh2_mc_se"] = std::sqrt(var / bud);
    }
    double r = static_cast<double>(reps);
    rep.empirical_p = static_cast<double>(hits) / r;
    rep.empirical_se = std::sqrt(rep.empirical_p * (1.0 - rep.empirical_p) / r);
    rep.status =
        verdict(rep.empirical_p, rep.empirical_se, false, rep.bound_value, reps);
    return rep;
}

}  // namespace snu
