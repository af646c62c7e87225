#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "lfpp/errors.hpp"
#include "lfpp/params.hpp"
#include "lfpp/results_io.hpp"

using namespace lfpp;
namespace fs = std::filesystem;

namespace {

template <class F>
errc code_of(F&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  return errc::ok;
}

template <class F>
std::string message_of(F&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const char* stem) {
  fs::path dir = fs::temp_directory_path() / stem;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_config: missing keys take defaults, present keys override") {
  experiment_config def;
  experiment_config c = parse_config("{}");
  CHECK(c.xi == def.xi);
  CHECK(c.n == def.n);
  CHECK(c.L == def.L);
  CHECK(c.replicas == def.replicas);
  CHECK(c.master_seed == def.master_seed);
  CHECK(c.octaves == def.octaves);
  CHECK(c.A_list == def.A_list);
  CHECK(c.holder_pairs == def.holder_pairs);

  experiment_config d = parse_config(R"({"xi": 0.35, "n": 1024, "master_seed": 99,
                                         "A_list": [1.0, 3.0], "threads": 0})");
  CHECK(d.xi == 0.35);
  CHECK(d.n == 1024);
  CHECK(d.master_seed == 99);
  CHECK(d.A_list == std::vector<double>{1.0, 3.0});
  CHECK(d.threads == 0);
  CHECK(d.L == def.L);  // untouched fields keep defaults
}

TEST_CASE("parse_config rejects malformed documents and names the offending key") {
  CHECK(code_of([] { parse_config("{"); }) == errc::config);
  CHECK(code_of([] { parse_config("[1, 2]"); }) == errc::config);
  CHECK(message_of([] { parse_config(R"({"xii": 1})"); }).find("unknown key 'xii'") !=
        std::string::npos);
  CHECK(message_of([] { parse_config(R"({"n": "big"})"); }).find("wrong type") !=
        std::string::npos);
  CHECK(message_of([] { parse_config(R"({"replicas": 0})"); }).find("replicas") !=
        std::string::npos);
  CHECK(message_of([] { parse_config(R"({"xi": -0.5})"); }).find("xi") != std::string::npos);
  CHECK(message_of([] { parse_config(R"({"n": 100})"); }).find("power of two") !=
        std::string::npos);
  CHECK(code_of([] { parse_config(R"({"n": 8192})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"level_min": 3, "level_max": 5})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"A_list": [0.5]})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"A_list": []})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"tight_k1": 0.45, "tight_k2": 0.4})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"window_fraction": 1.0})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"refinements": 5})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"eps_ratio": 1})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"r_max": 1.5})"); }) == errc::config);
  CHECK(code_of([] { parse_config(R"({"zeta": 0.0})"); }) == errc::config);
}

TEST_CASE("canonical_config: sorted keys, compact form, reorder-stable hash") {
  experiment_config a = parse_config(R"({"xi": 0.7, "n": 256, "replicas": 4})");
  experiment_config b = parse_config(R"({"replicas": 4, "n": 256, "xi": 0.7})");
  CHECK(canonical_config(a) == canonical_config(b));
  CHECK(config_hash(a) == config_hash(b));

  experiment_config c = parse_config(R"({"xi": 0.7, "n": 256, "replicas": 5})");
  CHECK(config_hash(a) != config_hash(c));

  std::string canon = canonical_config(a);
  CHECK(canon.find(' ') == std::string::npos);
  CHECK(canon.find("\"A_list\"") < canon.find("\"L\""));
  CHECK(canon.find("\"L\"") < canon.find("\"alpha\""));
  CHECK(canon.find("\"xi\"") < canon.find("\"zeta\""));
  CHECK(canon.find("\"zeta\"") != std::string::npos);
  // the hash is the SHA-256 of the canonical form
  CHECK(config_hash(a) == sha256_hex(canon));
  CHECK(config_hash(a).size() == 64);
}

TEST_CASE("sha256_hex matches published vectors") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("results directory: config snapshot, hashed shards, round trip") {
  experiment_config cfg = parse_config(R"({"xi": 0.55, "n": 128, "replicas": 2})");
  fs::path dir = fresh_dir("lfpp_io_results");

  results_writer w = open_results_dir(dir.string(), cfg, "exponent");
  CHECK(w.hash == config_hash(cfg));
  CHECK(w.outputs == std::vector<std::string>{"config.json"});
  REQUIRE(fs::exists(dir / "config.json"));
  nlohmann::json cj = nlohmann::json::parse(slurp((dir / "config.json").string()));
  CHECK(cj.at("config_hash").get<std::string>() == w.hash);
  CHECK(cj.at("n").get<int>() == 128);
  CHECK(cj.at("xi").get<double>() == 0.55);

  std::vector<std::vector<double>> rows = {{0.0, 1.5}, {1.0, 0.062499999999999986}};
  write_csv(w, "samples.csv", {"step", "value"}, rows);
  std::string text = slurp((dir / "samples.csv").string());
  CHECK(text.rfind("# config_hash=" + w.hash + "\nstep,value\n", 0) == 0);
  CHECK(read_csv_shard((dir / "samples.csv").string(), w.hash) == rows);  // %.17g is lossless

  write_tsv(w, "profile.tsv", {{0.5, 1.25, 0.1}});
  std::string tsv = slurp((dir / "profile.tsv").string());
  CHECK(tsv.find("# config_hash=") == 0);
  CHECK(tsv.find("x\ty\tyerr\n") != std::string::npos);

  write_aggregate(w, nlohmann::json{{"Q_hat", 2.5}});
  nlohmann::json agg = nlohmann::json::parse(slurp((dir / "aggregate.json").string()));
  CHECK(agg.at("Q_hat").get<double>() == 2.5);
  CHECK(agg.at("config_hash").get<std::string>() == w.hash);
  CHECK(agg.at("tool_version").get<std::string>() == std::string(kToolVersion));
  CHECK(agg.at("command").get<std::string>() == "exponent");

  write_manifest(w);
  nlohmann::json man = nlohmann::json::parse(slurp((dir / "manifest.json").string()));
  CHECK(man.at("outputs").get<std::vector<std::string>>() == w.outputs);
  CHECK(man.at("started").get<std::string>().size() == 20);
  CHECK(man.at("config_hash").get<std::string>() == w.hash);
  CHECK(w.outputs == std::vector<std::string>{"config.json", "samples.csv", "profile.tsv",
                                              "aggregate.json"});

  // same config into a second directory: deterministic bytes, manifest aside
  fs::path dir2 = fresh_dir("lfpp_io_results2");
  results_writer w2 = open_results_dir(dir2.string(), cfg, "exponent");
  write_csv(w2, "samples.csv", {"step", "value"}, rows);
  CHECK(slurp((dir2 / "config.json").string()) == slurp((dir / "config.json").string()));
  CHECK(slurp((dir2 / "samples.csv").string()) == slurp((dir / "samples.csv").string()));

  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("read_csv_shard rejects foreign, headerless, and malformed shards") {
  experiment_config cfg = parse_config("{}");
  fs::path dir = fresh_dir("lfpp_io_shards");
  results_writer w = open_results_dir(dir.string(), cfg, "t");
  write_csv(w, "ok.csv", {"a"}, {{1.0}});

  CHECK(code_of([&] { read_csv_shard((dir / "ok.csv").string(), "deadbeef"); }) == errc::io);
  CHECK(code_of([&] { read_csv_shard((dir / "missing.csv").string(), w.hash); }) == errc::io);

  {
    std::ofstream out(dir / "bare.csv", std::ios::binary);
    out << "a,b\n1,2\n";
  }
  CHECK(code_of([&] { read_csv_shard((dir / "bare.csv").string(), w.hash); }) == errc::io);

  {
    std::ofstream out(dir / "mangled.csv", std::ios::binary);
    out << "# config_hash=" << w.hash << "\na,b\n1.5,abc\n";
  }
  CHECK(code_of([&] { read_csv_shard((dir / "mangled.csv").string(), w.hash); }) == errc::io);

  CHECK(code_of([&] { write_csv(w, "bad.csv", {"a", "b"}, {{1.0}}); }) == errc::internal);
  fs::remove_all(dir);
}

TEST_CASE("load_config: missing file is an io error, round trip works") {
  CHECK(code_of([] { load_config("/nonexistent/lfpp.json"); }) == errc::io);
  fs::path dir = fresh_dir("lfpp_io_cfg");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "c.json", std::ios::binary);
    out << R"({"xi": 0.45, "n": 256})";
  }
  experiment_config c = load_config((dir / "c.json").string());
  CHECK(c.xi == 0.45);
  CHECK(c.n == 256);
  fs::remove_all(dir);
}

TEST_CASE("fit_to_json carries the regression and its inputs") {
  scaling_fit f = least_squares({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  nlohmann::json j = fit_to_json(f);
  CHECK(j.at("slope").get<double>() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(j.at("intercept").get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(j.at("r2").get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(j.at("stderr_slope").get<double>() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(j.at("x").get<std::vector<double>>() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(j.at("y").get<std::vector<double>>().size() == 4);
}

TEST_CASE("parameter conventions: c <-> Q <-> gamma") {
  param_triple p0 = params_from_c(0.0);
  CHECK(p0.Q == doctest::Approx(std::sqrt(25.0 / 6.0)).epsilon(1e-15));
  CHECK(p0.has_gamma);  // Q > 2: real coupling exists
  CHECK(p0.gamma > 0.0);
  CHECK(p0.gamma <= 2.0);
  CHECK(std::abs(2.0 / p0.gamma + 0.5 * p0.gamma - p0.Q) <= 1e-12);

  param_triple p1 = params_from_c(1.0);  // Q = 2 exactly, gamma = 2
  CHECK(p1.Q == 2.0);
  CHECK(p1.has_gamma);
  CHECK(p1.gamma == doctest::Approx(2.0).epsilon(1e-12));

  param_triple mid = params_from_c(10.0);  // Q = sqrt(2.5) < 2: complex coupling
  CHECK(mid.Q == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  CHECK_FALSE(mid.has_gamma);
  CHECK(mid.gamma == 0.0);

  for (double g : {0.2, 0.5, 1.0, 1.5, 2.0}) {
    param_triple p = params_from_gamma(g);
    CHECK(p.gamma == doctest::Approx(g).epsilon(1e-12));
    CHECK(p.Q == 2.0 / g + 0.5 * g);
    CHECK(p.c == doctest::Approx(25.0 - 6.0 * p.Q * p.Q).epsilon(1e-12));
    // c -> gamma closes the loop
    param_triple back = params_from_c(p.c);
    CHECK(back.gamma == doctest::Approx(g).epsilon(1e-9));
  }

  param_triple q = params_from_Q(3.0);
  CHECK(q.c == 25.0 - 54.0);
  CHECK(q.has_gamma);

  CHECK(code_of([] { params_from_c(25.0); }) == errc::domain);
  CHECK(code_of([] { params_from_c(30.0); }) == errc::domain);
  CHECK(code_of([] { params_from_Q(0.0); }) == errc::domain);
  CHECK(code_of([] { params_from_Q(-2.0); }) == errc::domain);
  CHECK(code_of([] { params_from_gamma(0.0); }) == errc::domain);
  CHECK(code_of([] { params_from_gamma(2.5); }) == errc::domain);
  CHECK(code_of([] { params_from_gamma(-1.0); }) == errc::domain);
}
