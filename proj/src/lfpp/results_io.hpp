#pragma once
#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfpp/experiments.hpp"

namespace lfpp {

inline constexpr const char* kToolVersion = "1.0.0";

// Config documents are JSON with exactly the experiment_config fields;
// unknown keys are rejected by name, missing keys take defaults.
experiment_config parse_config(const std::string& text);
experiment_config load_config(const std::string& path);

// Canonical form: every field serialized, keys sorted, compact separators.
// Hash-stable under key reordering of the source document.
std::string canonical_config(const experiment_config& cfg);
std::string config_hash(const experiment_config& cfg);
std::string sha256_hex(const std::string& data);

// Results directory: config.json + CSV shards + aggregate.json + plot TSVs,
// each embedding the config hash, plus a manifest. Everything except the
// manifest (wall-clock timestamps) is byte-deterministic for a given config.
struct results_writer {
  std::string dir;
  std::string hash;
  std::string command;
  std::string started;
  std::vector<std::string> outputs;  // file names in write order
};

results_writer open_results_dir(const std::string& dir, const experiment_config& cfg,
                                const std::string& command);
void write_csv(results_writer& w, const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_tsv(results_writer& w, const std::string& name,
               const std::vector<std::array<double, 3>>& xyerr);
void write_aggregate(results_writer& w, nlohmann::json payload);
void write_manifest(results_writer& w);

// Reads a CSV shard back, rejecting shards whose embedded hash differs.
std::vector<std::vector<double>> read_csv_shard(const std::string& path,
                                                const std::string& expected_hash);

nlohmann::json fit_to_json(const scaling_fit& f);

}  // namespace lfpp
