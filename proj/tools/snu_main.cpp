#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snu/config.hpp"
#include "snu/runner.hpp"

namespace {

struct Overrides {
    std::string config_path;
    long long n = -1;
    long long n_max = -1;
    long long reps = -1;
    long long budget = -1;
    long long seed = -1;
    int workers = -1;
    double theta = -1.0;
    double x_n = -1.0;
    std::vector<double> x_grid;
    std::vector<unsigned long long> seeds;
    std::string out_dir;
    std::string prefix;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("-c,--config", o.config_path, "JSON config file")
        ->required();
    cmd->add_option("--n", o.n, "override sample size n");
    cmd->add_option("--n-max", o.n_max, "override n_max");
    cmd->add_option("--reps", o.reps, "override replication count");
    cmd->add_option("--budget", o.budget, "override MC budget");
    cmd->add_option("--seed", o.seed, "override seed");
    cmd->add_option("--workers", o.workers, "override worker count");
    cmd->add_option("--theta", o.theta, "override checkpoint ratio theta");
    cmd->add_option("--x", o.x_grid, "override x grid");
    cmd->add_option("--x-n", o.x_n, "override x_n");
    cmd->add_option("--seeds", o.seeds, "override seed list");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--prefix", o.prefix, "artifact filename prefix");
}

snu::ExperimentConfig resolve(const Overrides& o, const std::string& subcommand) {
    snu::ExperimentConfig c = snu::load_config(o.config_path);
    c.subcommand = subcommand;
    if (o.n >= 0) c.n = static_cast<std::size_t>(o.n);
    if (o.n_max >= 0) c.n_max = static_cast<std::size_t>(o.n_max);
    if (o.reps >= 0) c.reps = static_cast<std::size_t>(o.reps);
    if (o.budget >= 0) c.budget = static_cast<std::size_t>(o.budget);
    if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
    if (o.workers >= 0) c.workers = o.workers;
    if (o.theta > 0.0) c.theta = o.theta;
    if (o.x_n > 0.0) c.x_n = o.x_n;
    if (!o.x_grid.empty()) c.x_grid = o.x_grid;
    if (!o.seeds.empty())
        c.seeds.assign(o.seeds.begin(), o.seeds.end());
    if (!o.out_dir.empty()) c.output_dir = o.out_dir;
    if (!o.prefix.empty()) c.output_prefix = o.prefix;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-normalized degenerate U-statistic experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> subcommands = {"rate", "lil", "zcalc", "audit",
                                                  "kernel-check"};
    std::vector<Overrides> overrides(subcommands.size());
    for (std::size_t i = 0; i < subcommands.size(); ++i)
        add_common(app.add_subcommand(subcommands[i]), overrides[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < subcommands.size(); ++i) {
        if (!app.get_subcommand(subcommands[i])->parsed()) continue;
        try {
            snu::ExperimentConfig config = resolve(overrides[i], subcommands[i]);
            snu::RunResult result = snu::run_experiment(config);
            for (const auto& path : result.artifacts)
                std::printf("wrote %s\n", path.c_str());
            return 0;
        } catch (const snu::ValidationError& e) {
            std::fprintf(stderr, "validation error: %s\n", e.what());
            return 2;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "runtime error: %s\n", e.what());
            return 3;
        }
    }
    return 2;
}
