//  Copyright 2026 The polarlat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polarlat/json_io.hpp"

using namespace polarlat;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  Json stdout_json;
  std::string stdout_text;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "polarlat_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const Json& config) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << config.dump(2);
  return path;
}

RunResult run_cli(const std::string& args) {
  const fs::path out_file = scratch_dir() / "stdout.txt";
  const std::string cmd =
      std::string(POLARLAT_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  result.stdout_text = buf.str();
  try {
    result.stdout_json = Json::parse(result.stdout_text);
  } catch (...) {
  }
  return result;
}

Json bec_config(unsigned levels) {
  return Json{{"lattice", {{"type", "divisor"}, {"modulus", 2}}},
              {"source", {{"kind", "stationary"}, {"dist", {{"1", 0.5}, {"2", 0.5}}}}},
              {"transform", {{"levels", levels}, {"window", 1}}},
              {"classify", {{"delta", 1e-3}}}};
}

}  // namespace

TEST_CASE("transform writes the table and summary") {
  const fs::path cfg = write_config("bec3.json", bec_config(3));
  const fs::path out = scratch_dir() / "bec3_out";
  const RunResult r =
      run_cli("transform --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.stdout_json.is_object());
  CHECK(r.stdout_json.at("entropies").size() == 8);
  CHECK(r.stdout_json.contains("config_digest"));
  CHECK(r.stdout_json.contains("seed"));
  CHECK(r.stdout_json.contains("mu_hat"));
  CHECK(r.stdout_json.contains("unresolved"));

  std::ifstream csv(out.string() + ".csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,i,element,epsilon");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 8 * 2);

  // The emitted summary re-parses and matches stdout.
  std::ifstream js(out.string() + ".json");
  REQUIRE(js.good());
  const Json reparsed = Json::parse(js);
  CHECK(reparsed == r.stdout_json);
}

TEST_CASE("transform level zero echoes the source") {
  const fs::path cfg = write_config("bec0.json", bec_config(0));
  const RunResult r = run_cli("transform --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_json.at("entropies").size() == 1);
}

TEST_CASE("csv format without an output path streams the table to stdout") {
  const fs::path cfg = write_config("bec1.json", bec_config(1));
  const RunResult r = run_cli("transform --config " + cfg.string() + " --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.rfind("n,i,element,epsilon", 0) == 0);
}

TEST_CASE("window flag expands non-stationary tables") {
  Json cfg{{"lattice", {{"type", "divisor"}, {"modulus", 2}}},
           {"source",
            {{"kind", "periodic"},
             {"dists", {{{"1", 0.8}, {"2", 0.2}}, {{"1", 0.2}, {"2", 0.8}}}}}},
           {"transform", {{"levels", 2}}}};
  const fs::path path = write_config("window.json", cfg);
  const RunResult r = run_cli("transform --config " + path.string() + " --window 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_json.at("window") == 2);
  CHECK(r.stdout_json.at("entropies").size() == 8);
}

TEST_CASE("malformed distribution exits 2 with the field path") {
  Json cfg = bec_config(2);
  cfg["source"]["dist"] = Json{{"1", 0.5}, {"2", 0.4}};
  const fs::path path = write_config("bad_dist.json", cfg);
  const RunResult r = run_cli("transform --config " + path.string());
  CHECK(r.exit_code == 2);
  CHECK(r.stdout_text.find("source.dist") != std::string::npos);

  // The normalize flag rescues it.
  const RunResult ok = run_cli("transform --config " + path.string() + " --normalize");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("asymptotic end-to-end on the divisor(6) example") {
  Json cfg{{"lattice", {{"type", "divisor"}, {"modulus", 6}}},
           {"source",
            {{"kind", "stationary"},
             {"dist", {{"1", "2/5"}, {"2", "3/10"}, {"3", "1/5"}, {"6", "1/10"}}}}}};
  const fs::path path = write_config("asym6.json", cfg);
  const fs::path out = scratch_dir() / "asym6_out";
  const RunResult r = run_cli("asymptotic --config " + path.string() + " --exact --out " +
                              out.string() + " --svg");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_json.at("mu_exact") ==
        Json({{"1", "3/5"}, {"2", "1/10"}, {"3", "0"}, {"6", "3/10"}}));
  CHECK(r.stdout_json.at("chain") == Json::array({1, 2, 6}));
  CHECK(r.stdout_json.at("method") == "lattice_walk");
  CHECK(r.stdout_json.at("trace").size() == 3);
  CHECK(r.stdout_json.at("trace")[0].at("H2") == 2);
  CHECK(fs::exists(out.string() + ".mu.tsv"));
  CHECK(fs::exists(out.string() + ".mu.svg"));
}

TEST_CASE("asymptotic on a chain reports the shortcut") {
  Json cfg{{"lattice", {{"type", "chain"}, {"prime", 2}, {"height", 1}}},
           {"source",
            {{"kind", "stationary"}, {"dist", {{"0", "7/10"}, {"1", "3/10"}}}}}};
  const fs::path path = write_config("chain.json", cfg);
  const RunResult r = run_cli("asymptotic --config " + path.string() + " --exact");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_json.at("method") == "chain_shortcut");
  CHECK(r.stdout_json.at("mu_exact") == Json({{"0", "7/10"}, {"1", "3/10"}}));
}

TEST_CASE("asymptotic with an all-zero distribution exits 2") {
  Json cfg{{"lattice", {{"type", "divisor"}, {"modulus", 6}}},
           {"source", {{"kind", "stationary"}, {"dist", {{"1", 0.0}}}}},
           {"normalize", true}};
  const fs::path path = write_config("empty.json", cfg);
  const RunResult r = run_cli("asymptotic --config " + path.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("simulate passes, repeats byte-identically, and honors tolerance") {
  Json cfg{{"lattice", {{"type", "divisor"}, {"modulus", 6}}},
           {"source",
            {{"kind", "stationary"},
             {"dist", {{"1", 0.4}, {"2", 0.3}, {"3", 0.2}, {"6", 0.1}}}}},
           {"montecarlo", {{"samples", 20000}, {"seed", 11}}}};
  const fs::path path = write_config("sim.json", cfg);
  const RunResult a = run_cli("simulate --config " + path.string() + " --levels 1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.stdout_json.at("pass") == true);

  const RunResult b = run_cli("simulate --config " + path.string() + " --levels 1");
  CHECK(a.stdout_text == b.stdout_text);

  const RunResult c =
      run_cli("simulate --config " + path.string() + " --levels 1 --tol 1e-9");
  CHECK(c.exit_code == 3);

  const RunResult d =
      run_cli("simulate --config " + path.string() + " --levels 1 --samples 0");
  CHECK(d.exit_code == 2);
}

TEST_CASE("verify battery passes on divisor(30) and rejects the pentagon") {
  Json cfg{{"lattice", {{"type", "divisor"}, {"modulus", 30}}},
           {"verify", {{"pairs", 50}}}};
  const fs::path path = write_config("verify.json", cfg);
  const RunResult r = run_cli("verify --config " + path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_json.at("pass") == true);
  CHECK(r.stdout_json.at("law_violations").empty());

  // R=0 runs the laws only.
  const RunResult laws_only = run_cli("verify --config " + path.string() + " --samples 0");
  CHECK(laws_only.exit_code == 0);
  CHECK(laws_only.stdout_json.at("identity_checks") == 0);

  Json pent{{"lattice",
             {{"type", "explicit"},
              {"elements", {0, 1, 2, 3, 4}},
              {"order", {{"0", 1}, {"1", 2}, {"2", 4}, {"3", 2}, {"4", 8}}},
              {"covers", {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}}}}};
  const fs::path pent_path = write_config("pentagon.json", pent);
  const RunResult rejected = run_cli("verify --config " + pent_path.string());
  CHECK(rejected.exit_code == 2);
}

TEST_CASE("resource guard exits 4") {
  const fs::path cfg = write_config("deep.json", bec_config(30));
  const RunResult r = run_cli("transform --config " + cfg.string());
  CHECK(r.exit_code == 4);
}

TEST_CASE("worker count from flag or environment never changes results") {
  Json cfg{{"lattice", {{"type", "divisor"}, {"modulus", 12}}},
           {"source",
            {{"kind", "stationary"},
             {"dist", {{"1", 0.1}, {"2", 0.2}, {"3", 0.3}, {"4", 0.15}, {"6", 0.15}, {"12", 0.1}}}}},
           {"transform", {{"levels", 8}}}};
  const fs::path path = write_config("workers.json", cfg);
  const RunResult one = run_cli("transform --config " + path.string() + " --workers 1");
  const RunResult two = run_cli("transform --config " + path.string() + " --workers 2");
  REQUIRE(one.exit_code == 0);
  REQUIRE(two.exit_code == 0);
  CHECK(one.stdout_text == two.stdout_text);

  setenv("POLARLAT_WORKERS", "2", 1);
  const RunResult env = run_cli("transform --config " + path.string());
  unsetenv("POLARLAT_WORKERS");
  REQUIRE(env.exit_code == 0);
  CHECK(env.stdout_text == one.stdout_text);
}

TEST_CASE("missing config exits 2") {
  const RunResult r = run_cli("transform --config /nonexistent/nope.json");
  CHECK(r.exit_code == 2);
}
