// Command-line front end. Talks to the library exclusively through the C API
// so the CLI doubles as a smoke test of the public ABI.
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lfpp/lfpp.h"

namespace {

struct run_options {
  std::string config;
  std::string out = "results";
  uint64_t seed = 0;
  bool has_seed = false;
  int threads = -1;  // -1: keep config value (or LFPP_THREADS)
  int replicas = -1;
};

int status_to_exit(lfpp_status s) {
  if (s == LFPP_OK) return 0;
  std::fprintf(stderr, "error: %s\n", lfpp_last_error());
  return s == LFPP_ERR_CONFIG ? 2 : 1;
}

int run_experiment(const std::string& command, const run_options& o) {
  int threads = o.threads;
  if (threads < 0) {
    if (const char* env = std::getenv("LFPP_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 0) {
        std::fprintf(stderr, "error: LFPP_THREADS must be a nonnegative integer\n");
        return 2;
      }
      threads = static_cast<int>(v);
    }
  }
  lfpp_status s = lfpp_run(command.c_str(), o.config.empty() ? nullptr : o.config.c_str(),
                           o.out.c_str(), o.has_seed ? 1 : 0, o.seed, threads, o.replicas);
  return status_to_exit(s);
}

int run_convert(const char* which, double value) {
  double c = 0.0, Q = 0.0, gamma = 0.0;
  int has_gamma = 0;
  lfpp_status s = lfpp_convert_params(which, value, &c, &Q, &has_gamma, &gamma);
  if (s != LFPP_OK) return status_to_exit(s);
  std::printf("{\n");
  std::printf("  \"note\": \"convention: Q = sqrt((25 - c)/6); for c <= 1, gamma in (0,2] solves Q = 2/gamma + gamma/2\",\n");
  std::printf("  \"c\": %.17g,\n", c);
  std::printf("  \"Q\": %.17g,\n", Q);
  if (has_gamma)
    std::printf("  \"gamma\": %.17g\n", gamma);
  else
    std::printf("  \"gamma\": null\n");
  std::printf("}\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouville first-passage percolation laboratory"};
  app.set_version_flag("--version", lfpp_version());
  app.require_subcommand(1);

  struct command_desc {
    const char* name;
    const char* help;
  };
  const std::vector<command_desc> experiments = {
      {"sample", "sample one field replica and save it with summary statistics"},
      {"distance", "center-to-window-boundary distances across replicas"},
      {"exponent", "crossing-distance scaling ladder and the exponent estimate"},
      {"scaling", "per-scale normalizing constants from the exponent ladder"},
      {"kpz", "quantum dimension of a reference segment via the KPZ sum statistic"},
      {"thick", "thick-point sets and their box dimensions"},
      {"ball-topology", "complement component counts of metric balls under refinement"},
      {"tightness", "normalized set-to-set distances and an upper-tail profile"},
      {"holder", "pointwise distance-exponent bound check over landmark pairs"},
  };

  run_options opts;
  std::vector<std::pair<CLI::App*, std::string>> subs;
  CLI::Option* seed_opt = nullptr;
  for (const auto& cd : experiments) {
    CLI::App* sub = app.add_subcommand(cd.name, cd.help);
    sub->add_option("--config", opts.config, "JSON config file (defaults when omitted)");
    sub->add_option("--out", opts.out, "output directory")->capture_default_str();
    CLI::Option* so = sub->add_option("--seed", opts.seed, "override master_seed");
    sub->add_option("--threads", opts.threads, "worker threads, 0 = auto (env LFPP_THREADS)");
    sub->add_option("--replicas", opts.replicas, "override replica count");
    subs.emplace_back(sub, cd.name);
    if (!seed_opt) seed_opt = so;
    sub->callback([&opts, sub]() {
      opts.has_seed = sub->count("--seed") > 0;
      if (sub->count("--threads") == 0) opts.threads = -1;
      if (sub->count("--replicas") == 0) opts.replicas = -1;
    });
  }

  double conv_c = 0.0, conv_Q = 0.0, conv_gamma = 0.0;
  CLI::App* conv = app.add_subcommand(
      "convert-params", "convert between central charge c, background charge Q, and coupling gamma");
  CLI::Option* oc = conv->add_option("--c", conv_c, "matter central charge (< 25)");
  CLI::Option* oQ = conv->add_option("--Q", conv_Q, "background charge (> 0)");
  CLI::Option* og = conv->add_option("--gamma", conv_gamma, "coupling in (0, 2]");
  oc->excludes(oQ)->excludes(og);
  oQ->excludes(og);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (conv->parsed()) {
    if (oc->count()) return run_convert("c", conv_c);
    if (oQ->count()) return run_convert("Q", conv_Q);
    if (og->count()) return run_convert("gamma", conv_gamma);
    std::fprintf(stderr, "error: convert-params needs one of --c, --Q, --gamma\n");
    return 2;
  }
  for (const auto& [sub, name] : subs)
    if (sub->parsed()) return run_experiment(name, opts);
  return 2;
}
