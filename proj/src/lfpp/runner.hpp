#pragma once
#include <string>

#include "lfpp/experiments.hpp"

namespace lfpp {

// End-to-end command dispatch: runs one named experiment with the given
// config and writes config.json, CSV shards, aggregate.json, figure TSVs and
// manifest.json into out_dir. Commands: sample, distance, exponent, scaling,
// kpz, thick, ball-topology, tightness, holder. Unknown names raise a
// configuration error.
void run_command(const std::string& command, const experiment_config& cfg,
                 const std::string& out_dir);

}  // namespace lfpp
