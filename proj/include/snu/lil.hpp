#pragma once

#include <cstdint>
#include <vector>

#include "snu/distributions.hpp"
#include "snu/kernels.hpp"

namespace snu {

// One simulated trajectory of W_n / log log n along geometric checkpoints
// n_j = round(theta^j), restricted to n_j >= 16 (so log log n > 0).
struct PathRecord {
    std::vector<std::size_t> checkpoints;
    std::vector<double> w;            // W at each checkpoint (NaN on a gap)
    std::vector<double> ratio;        // W / log log n
    std::vector<double> running_max;  // prefix max of ratio, gaps skipped
    std::vector<bool> gap;            // zero normalizer at this checkpoint
    double theta = 0.0;
    std::uint64_t seed = 0;
};

std::vector<std::size_t> geometric_checkpoints(std::size_t n_max, double theta,
                                               std::size_t min_n = 16);

// One i.i.d. stream extended incrementally; component sums are updated, never
// recomputed, so the whole path costs O(n_max * m). A zero normalizer at a
// checkpoint is recorded as a gap and the path continues.
PathRecord simulate_path(const DistributionSpec& dist, const KernelSpec& k,
                         std::size_t n_max, double theta, std::uint64_t seed);

// The same Rademacher stream evaluated under both the product kernel and the
// counterexample kernel {(1,x),(1,x^3)}.
struct PairedPathRow {
    std::uint64_t seed;
    std::size_t n;
    double w_product;
    double w_counterexample;
    double ratio;  // w_counterexample / w_product, NaN when w_product = 0
};

struct PairedPathTable {
    std::vector<PairedPathRow> rows;
    bool empty_notice = false;  // n_max below the first usable checkpoint
};

PairedPathTable counterexample_report(std::size_t n_max, double theta,
                                      const std::vector<std::uint64_t>& seeds);

}  // namespace snu
