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

#include <CLI11.hpp>

#include <cstdlib>
#include <memory>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "polarlat/json_io.hpp"
#include "polarlat/monte_carlo.hpp"
#include "polarlat/polar_engine.hpp"
#include "polarlat/solver.hpp"

namespace {

using polarlat::Json;

// Exit codes: 0 success, 2 config/schema, 3 mathematical or statistical
// violation, 4 resource guard.
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;
constexpr int kExitResource = 4;

struct CliOptions {
  std::string config_path;
  std::optional<unsigned> levels;
  std::optional<std::size_t> window;
  std::optional<double> delta;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<double> tol;
  bool exact = false;
  bool normalize = false;
  bool svg = false;
};

struct RunConfig {
  Json raw;
  std::shared_ptr<polarlat::Lattice> lattice;  // stable address for source references
  std::optional<polarlat::SourceSpec> source;
  std::optional<polarlat::ExactSourceSpec> exact_source;
  unsigned levels = 16;
  std::size_t window = 1;
  double delta = 1e-4;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint64_t verify_pairs = 1000;
  unsigned workers = 1;
  double tol = 0.02;
  std::string format = "json";
  std::string out;
  bool exact = false;
  std::string digest;
};

unsigned workers_from_env() {
  if (const char* env = std::getenv("POLARLAT_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

RunConfig load_config(const CliOptions& cli) {
  std::ifstream in(cli.config_path);
  if (!in) throw polarlat::ConfigError("cannot open config file: " + cli.config_path);
  Json raw;
  try {
    in >> raw;
  } catch (const Json::exception& e) {
    throw polarlat::ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!raw.is_object()) throw polarlat::ConfigError("config: expected a JSON object");
  if (!raw.contains("lattice")) throw polarlat::ConfigError("lattice: missing");

  RunConfig cfg;
  cfg.raw = raw;
  cfg.lattice =
      std::make_shared<polarlat::Lattice>(polarlat::lattice_from_json(raw.at("lattice")));

  const bool normalize = cli.normalize || raw.value("normalize", false);
  cfg.exact = cli.exact || raw.value("exact", false);
  if (raw.contains("source")) {
    if (cfg.exact)
      cfg.exact_source =
          polarlat::exact_source_from_json(*cfg.lattice, raw.at("source"), normalize);
    else
      cfg.source = polarlat::source_from_json(*cfg.lattice, raw.at("source"), normalize);
  }

  if (raw.contains("transform")) {
    const Json& t = raw.at("transform");
    cfg.levels = t.value("levels", cfg.levels);
    cfg.window = t.value("window", cfg.window);
  }
  if (raw.contains("classify")) cfg.delta = raw.at("classify").value("delta", cfg.delta);
  if (raw.contains("montecarlo")) {
    const Json& m = raw.at("montecarlo");
    cfg.samples = m.value("samples", cfg.samples);
    cfg.seed = m.value("seed", cfg.seed);
    cfg.tol = m.value("tol", cfg.tol);
  }
  if (raw.contains("verify")) cfg.verify_pairs = raw.at("verify").value("pairs", cfg.verify_pairs);
  if (raw.contains("output")) {
    const Json& o = raw.at("output");
    cfg.out = o.value("path", cfg.out);
    cfg.format = o.value("format", cfg.format);
  }
  cfg.workers = raw.value("workers", workers_from_env());

  if (cli.levels) cfg.levels = *cli.levels;
  if (cli.window) cfg.window = *cli.window;
  if (cli.delta) cfg.delta = *cli.delta;
  if (cli.samples) cfg.samples = *cli.samples;
  if (cli.seed) cfg.seed = *cli.seed;
  if (cli.workers) cfg.workers = *cli.workers;
  if (cli.format) cfg.format = *cli.format;
  if (cli.out) cfg.out = *cli.out;
  if (cli.tol) cfg.tol = *cli.tol;
  if (cfg.format != "json" && cfg.format != "csv")
    throw polarlat::ConfigError("output.format: expected json or csv");
  cfg.digest = polarlat::config_digest(raw);
  return cfg;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw polarlat::ConfigError("cannot write output file: " + path);
  out << body;
}

void emit(const RunConfig& cfg, const Json& summary) {
  std::cout << summary.dump(2) << "\n";
  if (!cfg.out.empty()) write_file(cfg.out + ".json", summary.dump(2) + "\n");
}

std::string mu_tsv(const polarlat::Lattice& lat, const Json& mu) {
  std::string body = "element\tmass\n";
  for (polarlat::ElementIndex i = 0; i < lat.size(); ++i) {
    const std::string key = std::to_string(lat.id_of(i));
    const double mass = mu.contains(key) ? mu.at(key).get<double>() : 0.0;
    body += key + "\t" + std::to_string(mass) + "\n";
  }
  return body;
}

std::string mu_svg(const polarlat::Lattice& lat, const Json& mu, const std::string& title) {
  const int bar_w = 48, gap = 12, h = 240, pad = 36;
  const int w = pad * 2 + static_cast<int>(lat.size()) * (bar_w + gap);
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
                    "\" height=\"" + std::to_string(h + 70) + "\">\n";
  svg += "<text x=\"" + std::to_string(pad) + "\" y=\"20\" font-size=\"14\">" + title +
         "</text>\n";
  for (polarlat::ElementIndex i = 0; i < lat.size(); ++i) {
    const std::string key = std::to_string(lat.id_of(i));
    const double mass = mu.contains(key) ? mu.at(key).get<double>() : 0.0;
    const int bh = static_cast<int>(mass * h);
    const int x = pad + static_cast<int>(i) * (bar_w + gap);
    svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(30 + h - bh) +
           "\" width=\"" + std::to_string(bar_w) + "\" height=\"" + std::to_string(bh) +
           "\" fill=\"#4a7fb5\"/>\n";
    svg += "<text x=\"" + std::to_string(x + bar_w / 2) + "\" y=\"" + std::to_string(h + 48) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + key + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

polarlat::EpsVector random_simplex(const polarlat::Lattice& lat,
                                   polarlat::SplitMixCounterRng& rng) {
  std::vector<double> mass(lat.size());
  double total = 0.0;
  for (double& m : mass) {
    m = static_cast<double>(rng.below(1000) + 1);
    total += m;
  }
  for (double& m : mass) m /= total;
  return polarlat::EpsVector(lat, std::move(mass), false);
}

int cmd_transform(const RunConfig& cfg) {
  polarlat::EvolveOptions opts;
  opts.workers = cfg.workers;

  Json summary;
  summary["config_digest"] = cfg.digest;
  summary["seed"] = cfg.seed;
  std::string csv = "n,i,element,epsilon\n";

  if (cfg.exact) {
    if (!cfg.exact_source) throw polarlat::ConfigError("source: missing");
    const auto table = polarlat::evolve(*cfg.exact_source, cfg.levels, cfg.window, opts);
    summary["levels"] = table.level;
    summary["window"] = table.window;
    summary["entropies"] = polarlat::entropies(table);
    Json eps = Json::array();
    for (std::size_t i = 0; i < table.vectors.size(); ++i) {
      eps.push_back(polarlat::masses_to_json(table.vectors[i]));
      for (polarlat::ElementIndex j = 0; j < cfg.lattice->size(); ++j)
        csv += std::to_string(table.level) + "," + std::to_string(i + 1) + "," +
               std::to_string(cfg.lattice->id_of(j)) + "," +
               std::to_string(polarlat::to_double(table.vectors[i].mass(j))) + "\n";
    }
    summary["epsilon_exact"] = eps;
  } else {
    if (!cfg.source) throw polarlat::ConfigError("source: missing");
    const auto table = polarlat::evolve(*cfg.source, cfg.levels, cfg.window, opts);
    summary["levels"] = table.level;
    summary["window"] = table.window;
    summary["entropies"] = polarlat::entropies(table);
    for (std::size_t i = 0; i < table.vectors.size(); ++i)
      for (polarlat::ElementIndex j = 0; j < cfg.lattice->size(); ++j)
        csv += std::to_string(table.level) + "," + std::to_string(i + 1) + "," +
               std::to_string(cfg.lattice->id_of(j)) + "," +
               std::to_string(table.vectors[i].mass(j)) + "\n";

    const polarlat::EmpiricalMu mu =
        polarlat::empirical_mu(*cfg.source, cfg.levels, cfg.window, cfg.delta, opts);
    Json mu_hat = Json::object(), mu_strict = Json::object();
    for (polarlat::ElementIndex i = 0; i < cfg.lattice->size(); ++i) {
      mu_hat[std::to_string(cfg.lattice->id_of(i))] = mu.completed(i);
      mu_strict[std::to_string(cfg.lattice->id_of(i))] = mu.strict(i);
    }
    summary["mu_hat"] = mu_hat;
    summary["mu_strict"] = mu_strict;
    summary["unresolved"] = mu.unresolved();
    summary["block_spread"] = mu.block_spread;
  }

  if (!cfg.out.empty()) write_file(cfg.out + ".csv", csv);
  if (cfg.format == "csv" && cfg.out.empty()) std::cout << csv;
  emit(cfg, summary);
  return 0;
}

int cmd_asymptotic(const RunConfig& cfg, const CliOptions& cli) {
  polarlat::QDistribution q = [&] {
    if (cfg.exact) {
      if (!cfg.exact_source) throw polarlat::ConfigError("source: missing");
      return cfg.exact_source->cesaro_q();
    }
    if (!cfg.source) throw polarlat::ConfigError("source: missing");
    return polarlat::to_exact_normalized(cfg.source->cesaro_q());
  }();

  const bool chain = cfg.lattice->is_chain();
  const polarlat::MuDistribution mu = chain ? polarlat::prufer_mu(q) : polarlat::solve_mu(q);
  const polarlat::ExactEpsVector mu_vec(*cfg.lattice, mu.mass, false);

  Json summary;
  summary["config_digest"] = cfg.digest;
  summary["seed"] = cfg.seed;
  summary["method"] = chain ? "chain_shortcut" : "lattice_walk";
  summary["mu"] = polarlat::masses_to_json_double(mu_vec);
  summary["mu_exact"] = polarlat::masses_to_json(mu_vec);
  summary["chain"] = mu.chain;
  summary["entropy_q"] = polarlat::entropy(q);
  summary["entropy_mu"] = polarlat::entropy(mu_vec);
  Json trace = Json::array();
  for (const auto& step : mu.trace) {
    Json s;
    s["K"] = step.k;
    s["S"] = step.s_set;
    s["branch"] = step.branch;
    if (step.h1) s["H1"] = *step.h1;
    if (step.h2) s["H2"] = *step.h2;
    if (step.h3) s["H3"] = *step.h3;
    Json chi = Json::object();
    for (const auto& c : step.chi)
      chi["(" + std::to_string(c.k2) + "," + std::to_string(c.k1) + ")"] =
          polarlat::rational_to_string(c.value);
    s["chi"] = chi;
    Json bounds = Json::object();
    for (const auto& b : step.boundaries)
      bounds[std::to_string(b.cover)] = polarlat::rational_to_string(b.beta);
    s["beta_covers"] = bounds;
    s["beta"] = polarlat::rational_to_string(step.beta_used);
    s["mu_K"] = polarlat::rational_to_string(step.mu_k);
    s["alpha"] = polarlat::rational_to_string(step.alpha_after);
    trace.push_back(s);
  }
  summary["trace"] = trace;

  if (!cfg.out.empty()) {
    write_file(cfg.out + ".mu.tsv", mu_tsv(*cfg.lattice, summary["mu"]));
    if (cli.svg)
      write_file(cfg.out + ".mu.svg",
                 mu_svg(*cfg.lattice, summary["mu"], "asymptotic distribution"));
  }
  emit(cfg, summary);
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  if (!cfg.source) throw polarlat::ConfigError("source: missing (simulate runs in float mode)");
  polarlat::SampleConfig sc;
  sc.source = &*cfg.source;
  sc.level = cfg.levels;
  sc.samples = cfg.samples;
  sc.seed = cfg.seed;
  sc.workers = cfg.workers;
  const polarlat::SampleStats stats = polarlat::simulate_block(sc);
  const polarlat::UniformityReport report = polarlat::validate_uniformity(stats, cfg.tol);
  const polarlat::QuotientGateReport gate = polarlat::validate_quotient_entropy(stats);

  Json summary;
  summary["config_digest"] = cfg.digest;
  summary["seed"] = cfg.seed;
  summary["modulus"] = stats.universe.modulus;
  summary["samples"] = stats.samples;
  summary["tol"] = cfg.tol;
  Json per_index = Json::array();
  for (const auto& r : report.per_index) {
    Json e;
    Json hist = Json::object();
    for (const auto& [order, count] : r.order_hist) hist[std::to_string(order)] = count;
    e["order_hist"] = hist;
    e["tv_max"] = r.tv_max;
    e["entropy_hat"] = r.entropy_hat;
    e["sigma"] = r.sigma;
    e["entropy_predicted"] = r.entropy_predicted;
    e["order_z_max"] = r.order_z_max;
    per_index.push_back(e);
  }
  summary["per_index"] = per_index;
  Json gate_entries = Json::array();
  for (const auto& g : gate.entries) {
    Json e;
    e["index"] = g.index;
    e["element"] = g.element;
    e["entropy_hat"] = g.entropy_hat;
    e["sigma"] = g.sigma;
    e["predicted"] = g.predicted;
    e["pass"] = g.pass;
    gate_entries.push_back(e);
  }
  summary["quotient_gate"] = gate_entries;
  summary["quotient_gate_pass"] = gate.pass;
  summary["pass"] = report.pass && gate.pass;
  emit(cfg, summary);
  return summary["pass"].get<bool>() ? 0 : kExitViolation;
}

int cmd_verify(const RunConfig& cfg) {
  const polarlat::Lattice& lat = *cfg.lattice;
  Json summary;
  summary["config_digest"] = cfg.digest;
  summary["seed"] = cfg.seed;

  const polarlat::LawReport laws = lat.verify_laws();
  Json violations = Json::array();
  for (const auto& v : laws.violations) {
    Json e;
    e["law"] = v.law;
    e["elements"] = v.elements;
    e["detail"] = v.detail;
    violations.push_back(e);
  }
  summary["law_checks"] = laws.checks;
  summary["law_violations"] = violations;

  // Identity battery: partition plus recursion identities on R random vector
  // pairs over every admissible interval.
  const auto intervals = lat.admissible_intervals();
  std::size_t identity_checks = 0;
  double max_diff = 0.0;
  Json witness;
  polarlat::SplitMixCounterRng rng(cfg.seed, 0);
  for (std::uint64_t trial = 0; trial < cfg.verify_pairs; ++trial) {
    const polarlat::EpsVector e1 = random_simplex(lat, rng);
    const polarlat::EpsVector e2 = random_simplex(lat, rng);
    for (const auto& [a, b] : intervals) {
      if (!polarlat::check_partition_identity(e1, a, b) || !polarlat::check_partition_identity(e2, a, b)) {
        witness["kind"] = "partition";
        witness["interval"] = {lat.id_of(a), lat.id_of(b)};
        max_diff = std::max(max_diff, 1.0);
      }
      identity_checks += 2;
      const polarlat::IdentityReport rep = polarlat::check_recursion_identities(e1, e2, a, b);
      identity_checks += rep.checks.size();
      if (rep.max_abs_diff > 1e-12 && witness.is_null()) {
        witness["kind"] = "recursion";
        witness["interval"] = {lat.id_of(a), lat.id_of(b)};
      }
      max_diff = std::max(max_diff, rep.max_abs_diff);
    }
  }
  summary["identity_checks"] = identity_checks;
  summary["identity_max_abs_diff"] = max_diff;
  const bool pass = laws.ok() && max_diff <= 1e-12;
  summary["pass"] = pass;
  if (!witness.is_null()) summary["witness"] = witness;
  if (!laws.ok() && witness.is_null()) summary["witness"] = violations[0];
  emit(cfg, summary);
  return pass ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarization of erasure distributions over subgroup lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOptions cli;
  app.add_option("--config", cli.config_path, "JSON run configuration")->required();
  unsigned levels = 0;
  std::size_t window = 0;
  double delta = 0, tol = 0;
  std::uint64_t samples = 0, seed = 0;
  unsigned workers = 0;
  std::string format, out;
  auto* lv = app.add_option("--levels", levels, "recursion depth n");
  auto* wd = app.add_option("--window", window, "window of 2^n-blocks m");
  auto* dl = app.add_option("--delta", delta, "classification threshold");
  auto* sm = app.add_option("--samples", samples, "simulation samples / verify pairs");
  auto* sd = app.add_option("--seed", seed, "rng seed");
  auto* wk = app.add_option("--workers", workers, "worker threads (env POLARLAT_WORKERS)");
  auto* fm = app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  auto* ot = app.add_option("--out", out, "output path prefix");
  auto* tl = app.add_option("--tol", tol, "statistical tolerance (simulate)");
  app.add_flag("--exact", cli.exact, "exact rational mode (string probabilities)");
  app.add_flag("--normalize", cli.normalize, "rescale distributions that do not sum to 1");
  app.add_flag("--svg", cli.svg, "emit an SVG bar chart next to the histogram");

  auto* transform = app.add_subcommand("transform", "evolve the transform table");
  auto* asymptotic = app.add_subcommand("asymptotic", "exact asymptotic distribution");
  auto* simulate = app.add_subcommand("simulate", "sample-level validation");
  auto* verify = app.add_subcommand("verify", "lattice laws and identity battery");

  CLI11_PARSE(app, argc, argv);

  if (*lv) cli.levels = levels;
  if (*wd) cli.window = window;
  if (*dl) cli.delta = delta;
  if (*sm) cli.samples = samples;
  if (*sd) cli.seed = seed;
  if (*wk) cli.workers = workers;
  if (*fm) cli.format = format;
  if (*ot) cli.out = out;
  if (*tl) cli.tol = tol;

  try {
    RunConfig cfg = load_config(cli);
    if (cli.samples) cfg.verify_pairs = *cli.samples;
    if (transform->parsed()) return cmd_transform(cfg);
    if (asymptotic->parsed()) return cmd_asymptotic(cfg, cli);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const polarlat::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const polarlat::StructurallyAmbiguous& e) {
    std::cerr << "structural ambiguity: " << e.what() << "\n";
    return kExitViolation;
  } catch (const polarlat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
