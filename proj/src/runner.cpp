#include "snu/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "snu/distributions.hpp"
#include "snu/inequality.hpp"
#include "snu/kernels.hpp"
#include "snu/lil.hpp"
#include "snu/mdp.hpp"
#include "snu/truncation.hpp"

namespace snu {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

DistributionSpec dist_of(const DistributionBlock& b) {
    return make_distribution(b.name, b.params);
}

KernelSpec kernel_of(const std::vector<KernelEntry>& entries) {
    std::vector<std::pair<double, std::string>> comps;
    for (const auto& e : entries) comps.emplace_back(e.lambda, e.transform);
    return make_kernel(comps);
}

std::string iso_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

class ArtifactWriter {
public:
    explicit ArtifactWriter(const std::string& dir) : dir_(dir) {
        fs::create_directories(dir_);
    }

    std::ofstream open(const std::string& filename) {
        fs::path p = fs::path(dir_) / filename;
        paths_.push_back(p.string());
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        return out;
    }

    void write_summary(const std::string& filename, json summary) {
        auto out = open(filename);
        out << summary.dump(2) << "\n";
    }

    void discard_all() {
        for (const auto& p : paths_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

    std::vector<std::string> paths() const { return paths_; }

private:
    std::string dir_;
    std::vector<std::string> paths_;
};

json base_summary(const ExperimentConfig& c) {
    json j;
    j["config"] = json::parse(serialize_config(c));
    j["timestamp"] = iso_timestamp();
    return j;
}

void run_rate(const ExperimentConfig& c, ArtifactWriter& w,
              const std::string& prefix) {
    auto dist = dist_of(c.distribution);
    auto k = kernel_of(c.kernel);
    TailOptions opts;
    opts.workers = c.workers;
    opts.exact_ci = c.exact_ci;
    auto curve = rate_curve(dist, k, c.n, c.x_grid, c.reps, c.seed, opts);
    const bool with_oracle = admits_reduction(k);
    std::vector<TailEstimate> oracle;
    if (with_oracle)
        oracle = oracle_curve(dist, c.n, c.x_grid, c.reps, c.seed, opts);

    auto csv = w.open(prefix + "_rate.csv");
    csv << "x_n,reps,hits,p_hat,ci_low,ci_high,log_rate,log_rate_upper";
    if (with_oracle) csv << ",oracle_p";
    csv << "\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& e = curve[i];
        csv << fmt(e.x_n) << ',' << e.reps << ',' << e.hits << ','
            << fmt(e.p_hat) << ',' << fmt(e.ci_low) << ',' << fmt(e.ci_high)
            << ',' << (e.has_log_rate ? fmt(e.log_rate) : std::string())
            << ',' << fmt(e.log_rate_upper);
        if (with_oracle) csv << ',' << fmt(oracle[i].p_hat);
        csv << "\n";
    }

    json summary = base_summary(c);
    json points = json::array();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& e = curve[i];
        json p{{"x_n", e.x_n},
               {"hits", e.hits},
               {"p_hat", e.p_hat},
               {"ci_low", e.ci_low},
               {"ci_high", e.ci_high},
               {"zero_normalizer_reps", e.zero_normalizer_reps},
               {"log_rate_upper", e.log_rate_upper}};
        if (e.has_log_rate) p["log_rate"] = e.log_rate;
        if (with_oracle) p["oracle_p"] = oracle[i].p_hat;
        points.push_back(p);
    }
    summary["points"] = points;
    w.write_summary(prefix + "_rate.json", summary);
}

void run_lil(const ExperimentConfig& c, ArtifactWriter& w,
             const std::string& prefix) {
    auto dist = dist_of(c.distribution);
    auto k = kernel_of(c.kernel);
    std::vector<double> path_max;
    for (std::uint64_t seed : c.seeds) {
        PathRecord rec = simulate_path(dist, k, c.n_max, c.theta, seed);
        auto csv = w.open(prefix + "_lil_seed" + std::to_string(seed) + ".csv");
        csv << "checkpoint,n,W,ratio,running_max\n";
        for (std::size_t j = 0; j < rec.checkpoints.size(); ++j) {
            csv << j << ',' << rec.checkpoints[j] << ','
                << (rec.gap[j] ? std::string() : fmt(rec.w[j])) << ','
                << (rec.gap[j] ? std::string() : fmt(rec.ratio[j])) << ','
                << fmt(rec.running_max[j]) << "\n";
        }
        path_max.push_back(rec.running_max.back());
    }
    json summary = base_summary(c);
    std::vector<double> sorted = path_max;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        double pos = q * static_cast<double>(sorted.size() - 1);
        auto lo = static_cast<std::size_t>(pos);
        auto hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    summary["path_max"] = path_max;
    summary["path_max_median"] = quantile(0.5);
    summary["path_max_q10"] = quantile(0.1);
    summary["path_max_q90"] = quantile(0.9);
    w.write_summary(prefix + "_lil.json", summary);
}

void run_zcalc(const ExperimentConfig& c, ArtifactWriter& w,
               const std::string& prefix) {
    auto dist = dist_of(c.distribution);
    auto k = kernel_of(c.kernel);
    auto table = truncation_table(dist, k, c.n, c.x_n);
    auto csv = w.open(prefix + "_zcalc.csv");
    csv << "component,b,z,L_at_z,residual\n";
    for (const auto& row : table) {
        csv << row.component << ',' << fmt(row.b) << ',' << fmt(row.z) << ','
            << fmt(row.l_at_z) << ',' << fmt(row.residual) << "\n";
    }
    json summary = base_summary(c);
    json rows = json::array();
    for (const auto& row : table)
        rows.push_back(json{{"component", row.component},
                            {"b", row.b},
                            {"z", row.z},
                            {"L_at_z", row.l_at_z},
                            {"residual", row.residual},
                            {"identity_checked", row.identity_checked}});
    summary["rows"] = rows;
    w.write_summary(prefix + "_zcalc.json", summary);
}

void run_audit(const ExperimentConfig& c, ArtifactWriter& w,
               const std::string& prefix) {
    std::vector<BoundReport> reports;
    for (const auto& a : c.audits) {
        auto dist = dist_of(a.distribution);
        if (a.bound == "lower-tail") {
            reports.push_back(lower_tail_bound(dist, a.n, a.x));
        } else if (a.bound == "cls-truncated") {
            reports.push_back(cls_truncated_bound(dist,
                                                  Transform::from_name(a.transform),
                                                  a.n, a.b, a.v, a.s, a.reps,
                                                  c.seed));
        } else {
            reports.push_back(glz_decoupled_bound(kernel_of(a.kernel), dist, a.n,
                                                  a.K, a.x, a.reps, c.seed));
        }
    }
    auto csv = w.open(prefix + "_audit.csv");
    csv << "bound_name,parameters,bound_value,empirical_p,empirical_se,exact,"
           "status\n";
    for (const auto& r : reports) {
        csv << r.bound_name << ',';
        bool first = true;
        for (const auto& [key, val] : r.parameters) {
            if (!first) csv << ';';
            csv << key << '=' << fmt(val);
            first = false;
        }
        csv << ',' << fmt(r.bound_value) << ',' << fmt(r.empirical_p) << ','
            << fmt(r.empirical_se) << ',' << (r.exact_oracle ? 1 : 0) << ','
            << to_string(r.status) << "\n";
    }
    json summary = base_summary(c);
    json rows = json::array();
    for (const auto& r : reports)
        rows.push_back(json{{"bound_name", r.bound_name},
                            {"parameters", r.parameters},
                            {"bound_value", r.bound_value},
                            {"empirical_p", r.empirical_p},
                            {"empirical_se", r.empirical_se},
                            {"exact", r.exact_oracle},
                            {"status", to_string(r.status)}});
    summary["reports"] = rows;
    w.write_summary(prefix + "_audit.json", summary);
}

void run_kernel_check(const ExperimentConfig& c, ArtifactWriter& w,
                      const std::string& prefix) {
    auto dist = dist_of(c.distribution);
    auto k = kernel_of(c.kernel);
    auto degeneracy = check_degeneracy(k, dist, c.budget, c.seed);
    auto orth = check_orthogonality_a2(k, dist, c.n, c.x_n, c.budget, c.seed);
    std::vector<double> probe = c.probe_grid;
    if (probe.empty()) {
        if (dist.finite_support()) {
            for (auto [a, p] : dist.atoms()) probe.push_back(a);
        } else {
            for (double x = -5.0; x <= 5.0 + 1e-12; x += 0.01) probe.push_back(x);
        }
    }
    auto dominance = check_dominance_a1prime(k, probe);

    auto csv = w.open(prefix + "_kernel_check.csv");
    csv << "check,l,k,value,std_error,pass\n";
    for (const auto& v : degeneracy)
        csv << "degeneracy," << v.component << ",," << fmt(v.estimate) << ','
            << fmt(v.std_error) << ',' << (v.pass ? 1 : 0) << "\n";
    for (const auto& e : orth.entries)
        csv << "a2," << e.l << ',' << e.k << ',' << fmt(e.correlation) << ','
            << fmt(e.std_error) << ',' << (e.pass ? 1 : 0) << "\n";
    for (std::size_t l = 0; l < dominance.c.size(); ++l)
        csv << "a1prime," << l << ",," << fmt(dominance.c[l]) << ",,\n";

    bool degeneracy_pass = true;
    for (const auto& v : degeneracy) degeneracy_pass = degeneracy_pass && v.pass;
    json summary = base_summary(c);
    summary["degeneracy_pass"] = degeneracy_pass;
    summary["a2_pass"] = orth.pass;
    summary["a1prime_c_sum"] = dominance.c_sum;
    w.write_summary(prefix + "_kernel_check.json", summary);
}

}  // namespace

std::string resolve_output_dir(const ExperimentConfig& config) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv("SNU_OUT_DIR"); env && *env) return env;
    return ".";
}

RunResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const std::string prefix =
        config.output_prefix.empty() ? config.subcommand : config.output_prefix;
    ArtifactWriter writer(resolve_output_dir(config));
    try {
        if (config.subcommand == "rate") run_rate(config, writer, prefix);
        else if (config.subcommand == "lil") run_lil(config, writer, prefix);
        else if (config.subcommand == "zcalc") run_zcalc(config, writer, prefix);
        else if (config.subcommand == "audit") run_audit(config, writer, prefix);
        else run_kernel_check(config, writer, prefix);
    } catch (...) {
        writer.discard_all();
        throw;
    }
    return {writer.paths()};
}

}  // namespace snu
