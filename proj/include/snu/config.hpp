#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace snu {

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DistributionBlock {
    std::string name;
    std::map<std::string, double> params;

    bool operator==(const DistributionBlock&) const = default;
};

struct KernelEntry {
    double lambda = 1.0;
    std::string transform = "identity";

    bool operator==(const KernelEntry&) const = default;
};

struct AuditBlock {
    std::string bound;  // lower-tail | cls-truncated | glz-decoupled
    DistributionBlock distribution;
    std::string transform = "identity";
    std::vector<KernelEntry> kernel;  // glz only
    std::size_t n = 0;
    double x = 0.0;
    double b = 0.0, v = 0.0, s = 0.0;  // cls only
    double K = 10.0;                   // glz only
    std::size_t reps = 0;

    bool operator==(const AuditBlock&) const = default;
};

struct ExperimentConfig {
    std::string subcommand;  // rate | lil | zcalc | audit | kernel-check
    DistributionBlock distribution;
    std::vector<KernelEntry> kernel;
    std::size_t n = 0;
    std::size_t n_max = 0;
    std::vector<double> x_grid;
    double x_n = 0.0;
    double theta = 1.2;
    std::size_t reps = 0;
    std::size_t budget = 1'000'000;  // MC budget for kernel-check
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> seeds;
    int workers = 0;
    bool exact_ci = false;
    std::vector<double> probe_grid;  // kernel-check a1' grid; empty = default
    std::vector<AuditBlock> audits;
    std::string output_dir;  // empty: $SNU_OUT_DIR or "."
    std::string output_prefix;

    bool operator==(const ExperimentConfig&) const = default;
};

// JSON round trip: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& c);
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Field-level validation against the owning module's preconditions. Throws
// ValidationError before any sampling starts.
void validate_config(const ExperimentConfig& c);

}  // namespace snu
