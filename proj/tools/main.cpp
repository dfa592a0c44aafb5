// Copyright 2026 The gammadiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gammalg/dense_oracle.hpp"
#include "gammalg/diagonalizer.hpp"
#include "gammalg/models.hpp"
#include "gammalg/sparse_operator.hpp"
#include "gammalg/util.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gammalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStalled = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

constexpr int kOracleWidthLimit = 10;
constexpr int kScalingSiteLimit = 14;
constexpr std::size_t kTransformDimLimit = 4096;

int exit_code_for(DiagonalizeStatus status) {
  switch (status) {
    case DiagonalizeStatus::converged:
      return kExitOk;
    case DiagonalizeStatus::stalled:
      return kExitStalled;
    case DiagonalizeStatus::budget_exhausted:
      return kExitBudget;
  }
  return kExitOk;
}

struct ModelSpec {
  std::string kind = "tfim";
  int n = 0;
  int width = 8;
  std::size_t terms = 6;
  std::uint64_t seed = 1;
  std::string path;
  bool periodic_xx = false;
};

SparseGammaOperator build_model(const ModelSpec& spec) {
  if (spec.kind == "tfim") {
    return build_tfim(spec.n, spec.periodic_xx);
  }
  if (spec.kind == "random") {
    return build_random(spec.width, spec.terms, spec.seed);
  }
  if (spec.kind == "table1") {
    return table1_fixture();
  }
  if (spec.kind == "file") {
    if (spec.path.empty()) {
      throw std::invalid_argument("model 'file' requires --path");
    }
    return read_elements(spec.path);
  }
  throw std::invalid_argument("unknown model '" + spec.kind + "'");
}

json model_to_json(const ModelSpec& spec) {
  return json{{"kind", spec.kind},     {"n", spec.n},
              {"width", spec.width},   {"terms", spec.terms},
              {"seed", spec.seed},     {"path", spec.path},
              {"periodic_xx", spec.periodic_xx}};
}

ModelSpec model_from_json(const json& j) {
  ModelSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  spec.n = j.at("n").get<int>();
  spec.width = j.at("width").get<int>();
  spec.terms = j.at("terms").get<std::size_t>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.path = j.at("path").get<std::string>();
  spec.periodic_xx = j.at("periodic_xx").get<bool>();
  return spec;
}

json config_to_json(const DiagonalizeConfig& config) {
  return json{{"stop_epsilon", config.stop_epsilon},
              {"delete_chi", config.delete_chi},
              {"max_rotations", config.max_rotations},
              {"gain_tolerance", config.gain_tolerance},
              {"candidate_retry_limit", config.candidate_retry_limit},
              {"rng_seed", config.rng_seed},
              {"weighted_buckets", config.weighted_buckets}};
}

DiagonalizeConfig config_from_json(const json& j) {
  DiagonalizeConfig config;
  config.stop_epsilon = j.at("stop_epsilon").get<double>();
  config.delete_chi = j.at("delete_chi").get<double>();
  config.max_rotations = j.at("max_rotations").get<std::size_t>();
  config.gain_tolerance = j.at("gain_tolerance").get<double>();
  config.candidate_retry_limit = j.at("candidate_retry_limit").get<int>();
  config.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  config.weighted_buckets = j.at("weighted_buckets").get<bool>();
  return config;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string());
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("bad JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

// Flag bundles -------------------------------------------------------------

struct ThresholdFlags {
  std::vector<double> stop_decimal;
  std::vector<int> stop_pow2;
  std::vector<double> chi_decimal;
  std::vector<int> chi_pow2;
};

void add_threshold_flags(CLI::App* cmd, ThresholdFlags& flags,
                         bool repeatable) {
  auto* stop_dec =
      cmd->add_option("--stop-epsilon", flags.stop_decimal,
                      "Stop threshold on the off-diagonal norm ratio");
  auto* stop_pow =
      cmd->add_option("--stop-epsilon-pow2", flags.stop_pow2,
                      "Stop threshold as 2^-N (matches stpN run names)");
  auto* chi_dec = cmd->add_option("--delete-chi", flags.chi_decimal,
                                  "Delete entries with |h| <= chi per step");
  auto* chi_pow = cmd->add_option("--delete-chi-pow2", flags.chi_pow2,
                                  "Delete threshold as 2^-N (dltN)");
  stop_dec->excludes(stop_pow);
  stop_pow->excludes(stop_dec);
  chi_dec->excludes(chi_pow);
  chi_pow->excludes(chi_dec);
  if (!repeatable) {
    stop_dec->expected(1);
    stop_pow->expected(1);
    chi_dec->expected(1);
    chi_pow->expected(1);
  }
}

std::vector<double> resolve_thresholds(const std::vector<double>& decimal,
                                       const std::vector<int>& pow2,
                                       double fallback, const char* what) {
  std::vector<double> values;
  if (!decimal.empty()) {
    values = decimal;
  } else {
    for (int e : pow2) {
      if (e < 0 || e > 60) {
        throw std::invalid_argument(std::string(what) +
                                    "-pow2 exponent out of range");
      }
      values.push_back(std::ldexp(1.0, -e));
    }
  }
  if (values.empty()) {
    values.push_back(fallback);
  }
  return values;
}

struct ConfigFlags {
  ThresholdFlags thresholds;
  std::size_t max_rotations = 1000000;
  double gain_tolerance = 1e-14;
  int retry_limit = 8;
  bool weighted = true;
  bool determinism = true;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags, bool repeatable) {
  add_threshold_flags(cmd, flags.thresholds, repeatable);
  cmd->add_option("--max-rotations", flags.max_rotations,
                  "Rotation budget before giving up");
  cmd->add_option("--gain-tolerance", flags.gain_tolerance,
                  "Minimum diagonal-norm gain per accepted step");
  cmd->add_option("--retry-limit", flags.retry_limit,
                  "Next-best rows to try after the best row yields no gain");
  auto* weighted = cmd->add_flag("--weighted-mode",
                                 "Weight s buckets by |h_diag*h_row|");
  auto* unweighted =
      cmd->add_flag("--unweighted-mode", "Count s bucket pairs unweighted");
  weighted->excludes(unweighted);
  unweighted->excludes(weighted);
  cmd->parse_complete_callback([&flags, weighted, unweighted]() {
    if (unweighted->count() > 0) {
      flags.weighted = false;
    } else if (weighted->count() > 0) {
      flags.weighted = true;
    }
  });
  cmd->add_flag("--determinism,!--no-determinism", flags.determinism,
                "Fixed summation order; runs are replayable byte-for-byte");
}

DiagonalizeConfig single_config(const ConfigFlags& flags) {
  DiagonalizeConfig config;
  auto stops = resolve_thresholds(flags.thresholds.stop_decimal,
                                  flags.thresholds.stop_pow2,
                                  std::ldexp(1.0, -7), "--stop-epsilon");
  auto chis = resolve_thresholds(flags.thresholds.chi_decimal,
                                 flags.thresholds.chi_pow2,
                                 std::ldexp(1.0, -11), "--delete-chi");
  if (stops.size() != 1 || chis.size() != 1) {
    throw std::invalid_argument("this command takes one threshold pair");
  }
  config.stop_epsilon = stops[0];
  config.delete_chi = chis[0];
  config.max_rotations = flags.max_rotations;
  config.gain_tolerance = flags.gain_tolerance;
  config.candidate_retry_limit = flags.retry_limit;
  config.weighted_buckets = flags.weighted;
  return config;
}

struct ModelFlags {
  std::string model = "tfim";
  int n = 0;
  int width = 8;
  std::size_t terms = 6;
  std::uint64_t seed = 1;
  std::string path;
  bool periodic_xx = false;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--model", flags.model, "Model: tfim, random, table1, file")
      ->check(CLI::IsMember({"tfim", "random", "table1", "file"}));
  cmd->add_option("--n", flags.n, "Chain length for --model tfim");
  cmd->add_option("--width", flags.width, "Bit width for --model random");
  cmd->add_option("--terms", flags.terms, "Term count for --model random");
  cmd->add_option("--seed", flags.seed, "Seed for --model random");
  cmd->add_option("--path", flags.path, "Element list for --model file");
  cmd->add_flag("--periodic-xx", flags.periodic_xx,
                "Add the X_{n-1}X_0 wrap bond to the tfim chain");
}

ModelSpec resolve_model(const ModelFlags& flags) {
  ModelSpec spec;
  spec.kind = flags.model;
  spec.n = flags.n;
  spec.width = flags.width;
  spec.terms = flags.terms;
  spec.seed = flags.seed;
  spec.path = flags.path;
  spec.periodic_xx = flags.periodic_xx;
  if (spec.kind == "tfim" && spec.n < 2) {
    throw std::invalid_argument("--model tfim requires --n >= 2");
  }
  return spec;
}

// Run plumbing ---------------------------------------------------------------

struct RunPaths {
  fs::path out_dir;
  fs::path manifest;
  fs::path history;
  fs::path elements;
  fs::path outcome;
};

RunPaths make_paths(const std::string& out_dir) {
  RunPaths paths;
  paths.out_dir = out_dir;
  paths.manifest = paths.out_dir / "manifest.json";
  paths.history = paths.out_dir / "history.csv";
  paths.elements = paths.out_dir / "elements.txt";
  paths.outcome = paths.out_dir / "outcome.json";
  return paths;
}

json base_manifest(const std::string& command, const ModelSpec& model,
                   const DiagonalizeConfig& config, bool determinism,
                   const RunPaths& paths) {
  json outputs{{"history_csv", paths.history.filename().string()},
               {"elements", paths.elements.filename().string()},
               {"outcome_json", paths.outcome.filename().string()}};
  return json{{"command", command},
              {"model", model_to_json(model)},
              {"config", config_to_json(config)},
              {"determinism", determinism},
              {"outputs", outputs},
              {"status", "running"},
              {"wall_ms", nullptr}};
}

std::string history_row(const RotationStep& step, int width) {
  std::string row = std::to_string(step.iteration);
  row += ',';
  row += to_bit_string(step.r, width);
  row += ',';
  row += to_bit_string(step.s, width);
  row += ',';
  row += format_double(step.phi);
  row += ',';
  row += format_double(step.epsilon_after);
  row += ',';
  row += std::to_string(step.elements_after);
  row += ',';
  row += format_double(step.pruned_sq_norm_cum);
  row += '\n';
  return row;
}

json outcome_to_json(const DiagonalizeOutcome& outcome,
                     const SparseGammaOperator& op, long long wall_ms) {
  std::size_t diagonal_elements = 0;
  for (auto it = op.row_begin(0); it != op.row_end(0); ++it) {
    ++diagonal_elements;
  }
  return json{
      {"status", to_string(outcome.status)},
      {"rotations", outcome.history.size()},
      {"final_epsilon",
       outcome.history.empty()
           ? (op.empty() ? 0.0 : op.epsilon())
           : outcome.history.back().epsilon_after},
      {"final_elements", op.size()},
      {"diagonal_elements", diagonal_elements},
      {"total_sq_norm", op.total_sq_norm()},
      {"wall_ms", wall_ms}};
}

// Subcommands ----------------------------------------------------------------

struct DiagOptions {
  ModelFlags model_flags;
  ConfigFlags config_flags;
  std::string out_dir = "gammadiag_out";
  std::string from_manifest;
};

int run_diag(const DiagOptions& options) {
  ModelSpec model;
  DiagonalizeConfig config;
  bool determinism = true;
  if (!options.from_manifest.empty()) {
    json manifest = read_json_file(options.from_manifest);
    model = model_from_json(manifest.at("model"));
    config = config_from_json(manifest.at("config"));
    determinism = manifest.value("determinism", true);
  } else {
    model = resolve_model(options.model_flags);
    config = single_config(options.config_flags);
    determinism = options.config_flags.determinism;
  }

  RunPaths paths = make_paths(options.out_dir);
  fs::create_directories(paths.out_dir);
  json manifest = base_manifest("diag", model, config, determinism, paths);
  write_text(paths.manifest, manifest.dump(2) + "\n");

  SparseGammaOperator op = build_model(model);
  int width = op.width();

  std::ofstream history(paths.history);
  if (!history) {
    throw std::runtime_error("cannot open " + paths.history.string());
  }
  history << "iter,r_bin,s_bin,phi,epsilon,elements,pruned_sq_norm_cum\n";

  auto start = std::chrono::steady_clock::now();
  DiagonalizeOutcome outcome = diagonalize(
      op, config, [&](const RotationStep& step, const SparseGammaOperator&) {
        history << history_row(step, width);
      });
  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  history.close();
  if (!history) {
    throw std::runtime_error("write failed for " + paths.history.string());
  }

  write_elements(op, paths.elements.string());
  write_text(paths.outcome,
             outcome_to_json(outcome, op, wall_ms).dump(2) + "\n");
  manifest["status"] = to_string(outcome.status);
  manifest["wall_ms"] = wall_ms;
  write_text(paths.manifest, manifest.dump(2) + "\n");
  std::cout << "diag: " << to_string(outcome.status) << " after "
            << outcome.history.size() << " rotations, " << op.size()
            << " elements stored\n";
  return exit_code_for(outcome.status);
}

struct VerifyOptions {
  ModelFlags model_flags;
  ConfigFlags config_flags;
  std::string out_dir = "gammadiag_out";
  double rdm_gate = 0.1;
};

int run_verify(const VerifyOptions& options) {
  ModelSpec model = resolve_model(options.model_flags);
  DiagonalizeConfig config = single_config(options.config_flags);

  RunPaths paths = make_paths(options.out_dir);
  fs::path rdm_curve_path = paths.out_dir / "rdm_curve.csv";
  fs::path verify_path = paths.out_dir / "verify.json";
  fs::create_directories(paths.out_dir);
  json manifest = base_manifest("verify", model, config,
                                options.config_flags.determinism, paths);
  manifest["rdm_gate"] = options.rdm_gate;
  manifest["outputs"]["rdm_curve_csv"] = rdm_curve_path.filename().string();
  manifest["outputs"]["verify_json"] = verify_path.filename().string();
  manifest["outputs"]["spectrum"] = "spectrum.txt";
  manifest["outputs"]["reference_spectrum"] = "reference_spectrum.txt";
  write_text(paths.manifest, manifest.dump(2) + "\n");

  SparseGammaOperator op = build_model(model);
  if (op.width() > kOracleWidthLimit) {
    throw std::invalid_argument("verify: width " + std::to_string(op.width()) +
                                " exceeds the dense oracle limit " +
                                std::to_string(kOracleWidthLimit));
  }
  int width = op.width();
  std::vector<double> reference = eigen_hermitian(gamma_to_dense(op));

  std::ofstream history(paths.history);
  std::ofstream rdm_curve(rdm_curve_path);
  if (!history || !rdm_curve) {
    throw std::runtime_error("cannot open verify outputs in " +
                             paths.out_dir.string());
  }
  history << "iter,r_bin,s_bin,phi,epsilon,elements,pruned_sq_norm_cum\n";
  rdm_curve << "iter,rdm,epsilon,elements\n";

  auto start = std::chrono::steady_clock::now();
  DiagonalizeOutcome outcome = diagonalize(
      op, config,
      [&](const RotationStep& step, const SparseGammaOperator& current) {
        history << history_row(step, width);
        SpectrumReport spectrum = diagonal_row_to_eigenvalues(current);
        double err = rdm(spectrum.eigenvalues, reference);
        rdm_curve << step.iteration << ',' << format_double(err) << ','
                  << format_double(step.epsilon_after) << ','
                  << step.elements_after << '\n';
      });
  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  SpectrumReport final_spectrum = diagonal_row_to_eigenvalues(op);
  double final_rdm = rdm(final_spectrum.eigenvalues, reference);
  bool gate_passed = final_rdm <= options.rdm_gate;

  auto spectrum_text = [](const std::vector<double>& values) {
    std::string text;
    for (double v : values) {
      text += format_double(v);
      text += '\n';
    }
    return text;
  };
  write_text(paths.out_dir / "spectrum.txt",
             spectrum_text(final_spectrum.eigenvalues));
  write_text(paths.out_dir / "reference_spectrum.txt",
             spectrum_text(reference));

  write_elements(op, paths.elements.string());
  json outcome_json = outcome_to_json(outcome, op, wall_ms);
  outcome_json["final_rdm"] = final_rdm;
  write_text(paths.outcome, outcome_json.dump(2) + "\n");
  write_text(verify_path, json{{"final_rdm", final_rdm},
                               {"rdm_gate", options.rdm_gate},
                               {"gate_passed", gate_passed},
                               {"status", to_string(outcome.status)},
                               {"rotations", outcome.history.size()},
                               {"residual_offdiag_sq",
                                final_spectrum.residual_offdiag_sq}}
                              .dump(2) +
                          "\n");
  manifest["status"] = to_string(outcome.status);
  manifest["wall_ms"] = wall_ms;
  write_text(paths.manifest, manifest.dump(2) + "\n");

  std::cout << "verify: " << to_string(outcome.status) << ", final rdm "
            << format_double(final_rdm) << (gate_passed ? " <= " : " > ")
            << format_double(options.rdm_gate) << " gate\n";
  if (gate_passed) {
    return kExitOk;
  }
  int code = exit_code_for(outcome.status);
  return code == kExitOk ? 1 : code;
}

struct ScalingOptions {
  int n_min = 3;
  int n_max = 14;
  bool periodic_xx = false;
  ConfigFlags config_flags;
  std::string out_dir = "gammadiag_out";
};

std::string pair_label(const ThresholdFlags& flags, std::size_t index,
                       double stop, double chi) {
  if (flags.stop_decimal.empty() && flags.chi_decimal.empty() &&
      (!flags.stop_pow2.empty() || !flags.chi_pow2.empty())) {
    int stop_exp = flags.stop_pow2.empty()
                       ? 7
                       : flags.stop_pow2[std::min(index,
                                                  flags.stop_pow2.size() - 1)];
    int chi_exp =
        flags.chi_pow2.empty()
            ? 11
            : flags.chi_pow2[std::min(index, flags.chi_pow2.size() - 1)];
    return "dlt" + std::to_string(chi_exp) + "stp" + std::to_string(stop_exp);
  }
  if (flags.stop_decimal.empty() && flags.chi_decimal.empty()) {
    return "dlt11stp7";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "stop%gchi%g", stop, chi);
  return buf;
}

int run_scaling(const ScalingOptions& options) {
  if (options.n_min < 2 || options.n_min > options.n_max ||
      options.n_max > kScalingSiteLimit) {
    throw std::invalid_argument(
        "scaling: need 2 <= --n-min <= --n-max <= " +
        std::to_string(kScalingSiteLimit));
  }
  auto stops = resolve_thresholds(options.config_flags.thresholds.stop_decimal,
                                  options.config_flags.thresholds.stop_pow2,
                                  std::ldexp(1.0, -7), "--stop-epsilon");
  auto chis = resolve_thresholds(options.config_flags.thresholds.chi_decimal,
                                 options.config_flags.thresholds.chi_pow2,
                                 std::ldexp(1.0, -11), "--delete-chi");
  std::size_t pair_count = std::max(stops.size(), chis.size());
  if ((stops.size() != pair_count && stops.size() != 1) ||
      (chis.size() != pair_count && chis.size() != 1)) {
    throw std::invalid_argument(
        "scaling: threshold lists must have equal length (or length 1)");
  }

  fs::path out_dir = options.out_dir;
  fs::create_directories(out_dir);
  ModelSpec model;
  model.kind = "tfim";
  model.n = options.n_min;
  model.periodic_xx = options.periodic_xx;

  DiagonalizeConfig config_for_manifest;
  config_for_manifest.stop_epsilon = stops[0];
  config_for_manifest.delete_chi = chis[0];
  config_for_manifest.max_rotations = options.config_flags.max_rotations;
  config_for_manifest.gain_tolerance = options.config_flags.gain_tolerance;
  config_for_manifest.candidate_retry_limit =
      options.config_flags.retry_limit;
  config_for_manifest.weighted_buckets = options.config_flags.weighted;

  RunPaths paths = make_paths(options.out_dir);
  json manifest =
      base_manifest("scaling", model, config_for_manifest,
                    options.config_flags.determinism, paths);
  manifest["n_min"] = options.n_min;
  manifest["n_max"] = options.n_max;
  manifest["outputs"] = json{{"svg", "scaling.svg"}, {"slopes", "slopes.csv"}};
  write_text(paths.manifest, manifest.dump(2) + "\n");

  svgplot::Panel rotations_panel{"rotations to converge", "sites n",
                                 "rotations", {}};
  svgplot::Panel elements_panel{"stored elements at convergence", "sites n",
                                "elements", {}};
  std::ofstream slopes(out_dir / "slopes.csv");
  if (!slopes) {
    throw std::runtime_error("cannot open slopes.csv");
  }
  slopes << "label,slope_rotations,slope_elements\n";

  int worst = kExitOk;
  for (std::size_t pair = 0; pair < pair_count; ++pair) {
    double stop = stops[stops.size() == 1 ? 0 : pair];
    double chi = chis[chis.size() == 1 ? 0 : pair];
    std::string label =
        pair_label(options.config_flags.thresholds, pair, stop, chi);

    std::ofstream csv(out_dir / ("scaling_" + label + ".csv"));
    if (!csv) {
      throw std::runtime_error("cannot open scaling CSV for " + label);
    }
    csv << "n,rotations,final_elements,epsilon,wall_ms\n";

    std::vector<double> ns, rotations, elements;
    for (int n = options.n_min; n <= options.n_max; ++n) {
      SparseGammaOperator op = build_tfim(n, options.periodic_xx);
      DiagonalizeConfig config;
      config.stop_epsilon = stop;
      config.delete_chi = chi;
      config.max_rotations = options.config_flags.max_rotations;
      config.gain_tolerance = options.config_flags.gain_tolerance;
      config.candidate_retry_limit = options.config_flags.retry_limit;
      config.weighted_buckets = options.config_flags.weighted;

      auto start = std::chrono::steady_clock::now();
      DiagonalizeOutcome outcome = diagonalize(op, config);
      auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      double eps = outcome.history.empty()
                       ? (op.empty() ? 0.0 : op.epsilon())
                       : outcome.history.back().epsilon_after;
      csv << n << ',' << outcome.history.size() << ',' << op.size() << ','
          << format_double(eps) << ',' << wall_ms << '\n';
      worst = std::max(worst, exit_code_for(outcome.status));

      ns.push_back(static_cast<double>(n));
      rotations.push_back(
          std::max<double>(1.0, static_cast<double>(outcome.history.size())));
      elements.push_back(
          std::max<double>(1.0, static_cast<double>(op.size())));
      std::cout << "scaling " << label << " n=" << n << ": "
                << to_string(outcome.status) << ", "
                << outcome.history.size() << " rotations, " << op.size()
                << " elements\n";
    }
    if (!csv) {
      throw std::runtime_error("write failed for scaling CSV " + label);
    }

    double slope_rotations = log_log_slope(ns, rotations);
    double slope_elements = log_log_slope(ns, elements);
    slopes << label << ',' << format_double(slope_rotations) << ','
           << format_double(slope_elements) << '\n';

    svgplot::Series rotation_series{label, {}};
    svgplot::Series element_series{label, {}};
    for (std::size_t i = 0; i < ns.size(); ++i) {
      rotation_series.points.emplace_back(ns[i], rotations[i]);
      element_series.points.emplace_back(ns[i], elements[i]);
    }
    rotations_panel.series.push_back(std::move(rotation_series));
    elements_panel.series.push_back(std::move(element_series));
  }

  svgplot::write_panels((out_dir / "scaling.svg").string(),
                        {rotations_panel, elements_panel});
  manifest["status"] = worst == kExitOk ? "converged" : "incomplete";
  write_text(paths.manifest, manifest.dump(2) + "\n");
  return worst;
}

struct TransformOptions {
  std::string input;
  std::string output;
  std::string direction;
};

int run_transform(const TransformOptions& options) {
  if (options.direction == "to-gamma") {
    DenseMatrix m = read_dense_csv(options.input);
    if (m.dim() > kTransformDimLimit) {
      throw std::invalid_argument("transform: dimension above " +
                                  std::to_string(kTransformDimLimit));
    }
    SparseGammaOperator op = dense_to_gamma(m);
    write_elements(op, options.output);
    std::cout << "transform: wrote " << op.size() << " elements\n";
    return kExitOk;
  }
  if (options.direction == "to-dense") {
    SparseGammaOperator op = read_elements(options.input);
    DenseMatrix m = gamma_to_dense(op);
    write_dense_csv(m, options.output);
    std::cout << "transform: wrote a " << m.dim() << "x" << m.dim()
              << " matrix\n";
    return kExitOk;
  }
  throw std::invalid_argument("transform: --direction must be to-gamma or "
                              "to-dense");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse Pauli-product diagonalization toolkit"};
  app.require_subcommand(1);

  DiagOptions diag_options;
  auto* diag = app.add_subcommand(
      "diag", "Diagonalize a model and write history/outcome artifacts");
  add_model_flags(diag, diag_options.model_flags);
  add_config_flags(diag, diag_options.config_flags, false);
  diag->add_option("--out", diag_options.out_dir, "Output directory");
  diag->add_option("--from-manifest", diag_options.from_manifest,
                   "Re-run the model+config recorded in a manifest.json");

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand(
      "verify", "Diagonalize and compare spectra against the dense oracle");
  add_model_flags(verify, verify_options.model_flags);
  add_config_flags(verify, verify_options.config_flags, false);
  verify->add_option("--out", verify_options.out_dir, "Output directory");
  verify->add_option("--rdm-gate", verify_options.rdm_gate,
                     "Exit 0 iff the final relative distance is <= gate");

  ScalingOptions scaling_options;
  auto* scaling = app.add_subcommand(
      "scaling", "Sweep tfim sizes and report rotation/element growth");
  scaling->add_option("--n-min", scaling_options.n_min, "Smallest chain");
  scaling->add_option("--n-max", scaling_options.n_max, "Largest chain");
  scaling->add_flag("--periodic-xx", scaling_options.periodic_xx,
                    "Add the wrap bond to every chain");
  add_config_flags(scaling, scaling_options.config_flags, true);
  scaling->add_option("--out", scaling_options.out_dir, "Output directory");

  TransformOptions transform_options;
  auto* transform = app.add_subcommand(
      "transform", "Convert between dense CSV and gamma element lists");
  transform->add_option("--input", transform_options.input, "Input file")
      ->required();
  transform->add_option("--output", transform_options.output, "Output file")
      ->required();
  transform
      ->add_option("--direction", transform_options.direction,
                   "to-gamma (dense csv in) or to-dense (element list in)")
      ->required()
      ->check(CLI::IsMember({"to-gamma", "to-dense"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (diag->parsed()) {
      return run_diag(diag_options);
    }
    if (verify->parsed()) {
      return run_verify(verify_options);
    }
    if (scaling->parsed()) {
      return run_scaling(scaling_options);
    }
    if (transform->parsed()) {
      return run_transform(transform_options);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
