#include "snu/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snu/distributions.hpp"
#include "snu/kernels.hpp"

namespace snu {

using nlohmann::json;

namespace {

json dist_to_json(const DistributionBlock& d) {
    return json{{"name", d.name}, {"params", d.params}};
}

DistributionBlock dist_from_json(const json& j) {
    DistributionBlock d;
    d.name = j.at("name").get<std::string>();
    if (j.contains("params"))
        d.params = j.at("params").get<std::map<std::string, double>>();
    return d;
}

json kernel_to_json(const std::vector<KernelEntry>& k) {
    json arr = json::array();
    for (const auto& e : k)
        arr.push_back(json{{"lambda", e.lambda}, {"transform", e.transform}});
    return arr;
}

std::vector<KernelEntry> kernel_from_json(const json& j) {
    std::vector<KernelEntry> k;
    for (const auto& e : j) {
        KernelEntry entry;
        entry.lambda = e.at("lambda").get<double>();
        entry.transform = e.at("transform").get<std::string>();
        k.push_back(entry);
    }
    return k;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["distribution"] = dist_to_json(c.distribution);
    j["kernel"] = kernel_to_json(c.kernel);
    j["n"] = c.n;
    j["n_max"] = c.n_max;
    j["x_grid"] = c.x_grid;
    j["x_n"] = c.x_n;
    j["theta"] = c.theta;
    j["reps"] = c.reps;
    j["budget"] = c.budget;
    j["seed"] = c.seed;
    j["seeds"] = c.seeds;
    j["workers"] = c.workers;
    j["exact_ci"] = c.exact_ci;
    j["probe_grid"] = c.probe_grid;
    j["output_dir"] = c.output_dir;
    j["output_prefix"] = c.output_prefix;
    json audits = json::array();
    for (const auto& a : c.audits) {
        json ja;
        ja["bound"] = a.bound;
        ja["distribution"] = dist_to_json(a.distribution);
        ja["transform"] = a.transform;
        ja["kernel"] = kernel_to_json(a.kernel);
        ja["n"] = a.n;
        ja["x"] = a.x;
        ja["b"] = a.b;
        ja["v"] = a.v;
        ja["s"] = a.s;
        ja["K"] = a.K;
        ja["reps"] = a.reps;
        audits.push_back(ja);
    }
    j["audits"] = audits;
    return j.dump(2);
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    try {
        if (j.contains("subcommand")) c.subcommand = j["subcommand"].get<std::string>();
        if (j.contains("distribution")) c.distribution = dist_from_json(j["distribution"]);
        if (j.contains("kernel")) c.kernel = kernel_from_json(j["kernel"]);
        if (j.contains("n")) c.n = j["n"].get<std::size_t>();
        if (j.contains("n_max")) c.n_max = j["n_max"].get<std::size_t>();
        if (j.contains("x_grid")) c.x_grid = j["x_grid"].get<std::vector<double>>();
        if (j.contains("x_n")) c.x_n = j["x_n"].get<double>();
        if (j.contains("theta")) c.theta = j["theta"].get<double>();
        if (j.contains("reps")) c.reps = j["reps"].get<std::size_t>();
        if (j.contains("budget")) c.budget = j["budget"].get<std::size_t>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        if (j.contains("workers")) c.workers = j["workers"].get<int>();
        if (j.contains("exact_ci")) c.exact_ci = j["exact_ci"].get<bool>();
        if (j.contains("probe_grid"))
            c.probe_grid = j["probe_grid"].get<std::vector<double>>();
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
        if (j.contains("output_prefix"))
            c.output_prefix = j["output_prefix"].get<std::string>();
        if (j.contains("audits")) {
            for (const auto& ja : j["audits"]) {
                AuditBlock a;
                a.bound = ja.at("bound").get<std::string>();
                if (ja.contains("distribution"))
                    a.distribution = dist_from_json(ja["distribution"]);
                if (ja.contains("transform"))
                    a.transform = ja["transform"].get<std::string>();
                if (ja.contains("kernel")) a.kernel = kernel_from_json(ja["kernel"]);
                if (ja.contains("n")) a.n = ja["n"].get<std::size_t>();
                if (ja.contains("x")) a.x = ja["x"].get<double>();
                if (ja.contains("b")) a.b = ja["b"].get<double>();
                if (ja.contains("v")) a.v = ja["v"].get<double>();
                if (ja.contains("s")) a.s = ja["s"].get<double>();
                if (ja.contains("K")) a.K = ja["K"].get<double>();
                if (ja.contains("reps")) a.reps = ja["reps"].get<std::size_t>();
                c.audits.push_back(a);
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config field error: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

void require(bool cond, const std::string& field, const std::string& msg) {
    if (!cond) throw ValidationError(field + ": " + msg);
}

void check_distribution(const DistributionBlock& d, const std::string& field) {
    try {
        make_distribution(d.name, d.params);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(field + ": " + e.what());
    }
}

void check_kernel(const std::vector<KernelEntry>& k, const std::string& field) {
    require(!k.empty(), field, "kernel needs at least one component");
    for (const auto& e : k) {
        require(e.lambda >= 0.0, field, "eigenvalues must be nonnegative");
        try {
            Transform::from_name(e.transform);
        } catch (const std::invalid_argument& ex) {
            throw ValidationError(field + ": " + ex.what());
        }
    }
}

void check_x_grid(const std::vector<double>& grid, std::size_t n,
                  const std::string& field) {
    require(!grid.empty(), field, "x grid must be nonempty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] > 0.0, field, "x_n must be positive");
        require(grid[i] * grid[i] < static_cast<double>(n), field,
                "requires x_n^2 < n");
        if (i > 0)
            require(grid[i] > grid[i - 1], field, "x grid must be strictly increasing");
    }
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
    const std::string& sc = c.subcommand;
    require(sc == "rate" || sc == "lil" || sc == "zcalc" || sc == "audit" ||
                sc == "kernel-check",
            "subcommand", "must be one of rate, lil, zcalc, audit, kernel-check");

    if (sc == "rate") {
        check_distribution(c.distribution, "distribution");
        check_kernel(c.kernel, "kernel");
        require(c.n >= 2, "n", "must be >= 2");
        check_x_grid(c.x_grid, c.n, "x_grid");
        require(c.reps >= 1000, "reps", "must be >= 1000");
    } else if (sc == "lil") {
        check_distribution(c.distribution, "distribution");
        check_kernel(c.kernel, "kernel");
        require(c.n_max >= 16, "n_max", "must be >= 16");
        require(c.theta > 1.0 && c.theta <= 2.0, "theta", "must lie in (1, 2]");
        require(!c.seeds.empty(), "seeds", "must list at least one seed");
    } else if (sc == "zcalc") {
        check_distribution(c.distribution, "distribution");
        check_kernel(c.kernel, "kernel");
        require(c.n >= 2, "n", "must be >= 2");
        require(c.x_n > 0.0, "x_n", "must be positive");
        require(c.x_n * c.x_n < static_cast<double>(c.n), "x_n",
                "requires x_n^2 < n");
    } else if (sc == "kernel-check") {
        check_distribution(c.distribution, "distribution");
        check_kernel(c.kernel, "kernel");
        require(c.n >= 2, "n", "must be >= 2");
        require(c.x_n > 0.0, "x_n", "must be positive");
        require(c.x_n * c.x_n < static_cast<double>(c.n), "x_n",
                "requires x_n^2 < n");
        require(c.budget >= 1000, "budget", "must be >= 1000");
    } else if (sc == "audit") {
        require(!c.audits.empty(), "audits", "must list at least one bound block");
        for (std::size_t i = 0; i < c.audits.size(); ++i) {
            const auto& a = c.audits[i];
            const std::string field = "audits[" + std::to_string(i) + "]";
            require(a.bound == "lower-tail" || a.bound == "cls-truncated" ||
                        a.bound == "glz-decoupled",
                    field, "unknown bound name: " + a.bound);
            check_distribution(a.distribution, field + ".distribution");
            require(a.n >= 1, field + ".n", "must be >= 1");
            if (a.bound == "cls-truncated")
                require(a.b > 0.0 && a.v > 0.0 && a.s > 0.0, field,
                        "b, v, s must be positive");
            if (a.bound == "glz-decoupled") {
                check_kernel(a.kernel, field + ".kernel");
                require(a.K > 0.0, field + ".K", "must be positive");
                require(a.reps > 0, field + ".reps", "must be positive");
            }
        }
    }
    require(c.workers >= 0, "workers", "must be >= 0");
}

}  // namespace snu
