#pragma once

#include <string>
#include <vector>

#include "snu/config.hpp"

namespace snu {

struct RunResult {
    std::vector<std::string> artifacts;  // files written, CSV then JSON
};

// Validates, dispatches to the experiment modules, writes the CSV/JSON
// artifacts. Partial outputs are removed when a run fails. The CSV bytes are
// determined by (config, seed) alone; the JSON summary additionally carries a
// timestamp.
RunResult run_experiment(const ExperimentConfig& config);

// Output directory resolution: config.output_dir, else $SNU_OUT_DIR, else ".".
std::string resolve_output_dir(const ExperimentConfig& config);

}  // namespace snu
