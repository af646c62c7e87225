#include "lfpp/results_io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lfpp/errors.hpp"

namespace lfpp {

namespace {

using nlohmann::json;

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), errc::io, "cannot open for writing: " + path);
  out << text;
  require(out.good(), errc::io, "write failed: " + path);
}

json config_to_json(const experiment_config& c) {
  return json{{"A_list", c.A_list},
              {"L", c.L},
              {"alpha", c.alpha},
              {"eps_ratio", c.eps_ratio},
              {"holder_margin", c.holder_margin},
              {"holder_pairs", c.holder_pairs},
              {"kpz_s_max", c.kpz_s_max},
              {"level_max", c.level_max},
              {"level_min", c.level_min},
              {"master_seed", c.master_seed},
              {"n", c.n},
              {"octaves", c.octaves},
              {"quantile", c.quantile},
              {"r_max", c.r_max},
              {"r_min", c.r_min},
              {"refinements", c.refinements},
              {"replicas", c.replicas},
              {"threads", c.threads},
              {"tight_k1", c.tight_k1},
              {"tight_k2", c.tight_k2},
              {"tight_r", c.tight_r},
              {"window_fraction", c.window_fraction},
              {"xi", c.xi},
              {"zeta", c.zeta}};
}

template <class T>
void take(const json& j, const char* key, T& slot) {
  if (!j.contains(key)) return;
  try {
    slot = j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(errc::config, std::string("config: key '") + key + "' has the wrong type");
  }
}

void check(bool ok, const char* key, const char* what) {
  require(ok, errc::config, std::string("config: ") + key + " " + what);
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

experiment_config parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::config, std::string("config: parse error: ") + e.what());
  }
  require(j.is_object(), errc::config, "config: document must be a JSON object");

  static const char* known[] = {
      "A_list",     "L",          "alpha",     "eps_ratio",  "holder_margin", "holder_pairs",
      "kpz_s_max",  "level_max",  "level_min", "master_seed", "n",            "octaves",
      "quantile",   "r_max",      "r_min",     "refinements", "replicas",     "threads",
      "tight_k1",   "tight_k2",   "tight_r",   "window_fraction", "xi",       "zeta"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    require(ok, errc::config, "config: unknown key '" + it.key() + "'");
  }

  experiment_config c;
  take(j, "xi", c.xi);
  take(j, "n", c.n);
  take(j, "L", c.L);
  take(j, "eps_ratio", c.eps_ratio);
  take(j, "replicas", c.replicas);
  take(j, "master_seed", c.master_seed);
  take(j, "window_fraction", c.window_fraction);
  take(j, "threads", c.threads);
  take(j, "octaves", c.octaves);
  take(j, "alpha", c.alpha);
  take(j, "zeta", c.zeta);
  take(j, "r_min", c.r_min);
  take(j, "r_max", c.r_max);
  take(j, "level_min", c.level_min);
  take(j, "level_max", c.level_max);
  take(j, "kpz_s_max", c.kpz_s_max);
  take(j, "quantile", c.quantile);
  take(j, "refinements", c.refinements);
  take(j, "tight_r", c.tight_r);
  take(j, "tight_k1", c.tight_k1);
  take(j, "tight_k2", c.tight_k2);
  take(j, "A_list", c.A_list);
  take(j, "holder_margin", c.holder_margin);
  take(j, "holder_pairs", c.holder_pairs);

  check(c.xi > 0.0, "xi", "must be positive");
  check(is_pow2(c.n) && c.n >= 64 && c.n <= 4096, "n", "must be a power of two in [64, 4096]");
  check(c.L >= 2.0, "L", "must be at least 2");
  check(c.eps_ratio >= 2 && c.eps_ratio <= 64, "eps_ratio", "must sit in [2, 64]");
  check(c.replicas >= 1, "replicas", "must be positive");
  check(c.window_fraction > 0.0 && c.window_fraction < 1.0, "window_fraction",
        "must sit in (0,1)");
  check(c.threads >= 0, "threads", "must be nonnegative (0 = auto)");
  check(c.octaves >= 0 && c.octaves <= 8, "octaves", "must sit in [0, 8]");
  check(std::isfinite(c.alpha), "alpha", "must be finite");
  check(c.zeta > 0.0, "zeta", "must be positive");
  check(c.r_min >= 0.0, "r_min", "must be nonnegative (0 = default)");
  check(c.r_max > 0.0 && c.r_max < 1.0, "r_max", "must sit in (0,1)");
  check(c.level_min >= 0 && c.level_max <= 12 && c.level_max >= c.level_min + 3, "level_min",
        "..level_max must span at least 4 levels within [0,12]");
  check(c.kpz_s_max > 0.0, "kpz_s_max", "must be positive");
  check(c.quantile > 0.0 && c.quantile < 1.0, "quantile", "must sit in (0,1)");
  check(c.refinements >= 1 && c.refinements <= 4, "refinements", "must sit in [1, 4]");
  check(c.tight_r > 0.0 && c.tight_r <= 1.0, "tight_r", "must sit in (0,1]");
  check(c.tight_k1 > 0.0 && c.tight_k1 < c.tight_k2 && c.tight_k2 < 0.5, "tight_k1",
        "and tight_k2 must satisfy 0 < k1 < k2 < 0.5");
  check(!c.A_list.empty(), "A_list", "must be nonempty");
  for (double a : c.A_list) check(a >= 1.0, "A_list", "entries must be at least 1");
  check(c.holder_margin >= 0.0, "holder_margin", "must be nonnegative");
  check(c.holder_pairs >= 1, "holder_pairs", "must be positive");
  return c;
}

experiment_config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io, "cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const experiment_config& cfg) {
  return config_to_json(cfg).dump();  // object keys are stored sorted
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) == 1,
          errc::internal, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string config_hash(const experiment_config& cfg) {
  return sha256_hex(canonical_config(cfg));
}

results_writer open_results_dir(const std::string& dir, const experiment_config& cfg,
                                const std::string& command) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, errc::io, "cannot create results directory: " + dir);
  results_writer w;
  w.dir = dir;
  w.hash = config_hash(cfg);
  w.command = command;
  w.started = iso_now();
  json cj = config_to_json(cfg);
  cj["config_hash"] = w.hash;
  write_text(dir + "/config.json", cj.dump(2) + "\n");
  w.outputs.push_back("config.json");
  return w;
}

void write_csv(results_writer& w, const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string text = "# config_hash=" + w.hash + "\n";
  for (size_t k = 0; k < header.size(); ++k)
    text += (k ? "," : "") + header[k];
  text += "\n";
  for (const auto& row : rows) {
    require(row.size() == header.size(), errc::internal, "csv row width mismatch");
    for (size_t k = 0; k < row.size(); ++k) text += (k ? "," : "") + format_double(row[k]);
    text += "\n";
  }
  write_text(w.dir + "/" + name, text);
  w.outputs.push_back(name);
}

void write_tsv(results_writer& w, const std::string& name,
               const std::vector<std::array<double, 3>>& xyerr) {
  std::string text = "# config_hash=" + w.hash + "\nx\ty\tyerr\n";
  for (const auto& row : xyerr)
    text += format_double(row[0]) + "\t" + format_double(row[1]) + "\t" + format_double(row[2]) +
            "\n";
  write_text(w.dir + "/" + name, text);
  w.outputs.push_back(name);
}

void write_aggregate(results_writer& w, nlohmann::json payload) {
  payload["config_hash"] = w.hash;
  payload["tool_version"] = kToolVersion;
  payload["command"] = w.command;
  write_text(w.dir + "/aggregate.json", payload.dump(2) + "\n");
  w.outputs.push_back("aggregate.json");
}

void write_manifest(results_writer& w) {
  json m{{"config_hash", w.hash},
         {"tool_version", kToolVersion},
         {"command", w.command},
         {"started", w.started},
         {"finished", iso_now()},
         {"outputs", w.outputs}};
  write_text(w.dir + "/manifest.json", m.dump(2) + "\n");
}

std::vector<std::vector<double>> read_csv_shard(const std::string& path,
                                                const std::string& expected_hash) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io, "cannot open shard: " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::io, "empty shard: " + path);
  const std::string prefix = "# config_hash=";
  require(line.rfind(prefix, 0) == 0, errc::io, "shard missing config_hash header: " + path);
  std::string hash = line.substr(prefix.size());
  require(hash == expected_hash, errc::io,
          "shard belongs to a different config (hash mismatch): " + path);
  require(static_cast<bool>(std::getline(in, line)), errc::io, "shard missing header: " + path);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.c_str();
    char* end = nullptr;
    while (*p) {
      row.push_back(std::strtod(p, &end));
      require(end != p, errc::io, "shard has a malformed number: " + path);
      p = end;
      if (*p == ',') ++p;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json fit_to_json(const scaling_fit& f) {
  return json{{"slope", f.slope},     {"intercept", f.intercept},
              {"stderr_slope", f.stderr_slope}, {"r2", f.r2},
              {"x", f.xs},            {"y", f.ys}};
}

}  // namespace lfpp
