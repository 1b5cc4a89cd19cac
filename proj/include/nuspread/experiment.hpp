#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuspread/core.hpp"
#include "nuspread/matching.hpp"
#include "nuspread/models.hpp"

namespace nuspread {

struct ModelSpec {
  /// "sbm", "chung_lu", "gnd" or "product".
  std::string model;
  std::vector<int> block_sizes;
  std::vector<std::vector<double>> p;
  /// Degree classes (value, count), largest value first after normalization.
  std::vector<std::pair<int, int>> degree_classes;
  GroundSet ground;
  std::vector<Rational> item_probs;
  /// Vertex count when product items are graph edges.
  int n = 0;
  DegreeSamplerOptions gnd_options;
};

struct PropertySpec {
  /// "perfect_matching", "isolated_vertex_exists" or "custom".
  std::string kind = "perfect_matching";
  /// Restrict isolated-vertex detection to this block (-1: all vertices).
  int block = -1;
  IsolationScope scope = IsolationScope::global;
  /// Explicit family for "custom" on the product model.
  std::optional<SubsetFamily> family;
};

struct ScanSpec {
  /// sbm: "p", "scale", "p_log_scaled"; chung_lu/gnd: "d2"; product: "scale".
  std::string param;
  std::vector<double> grid;
};

struct ExperimentConfig {
  ModelSpec model;
  PropertySpec property;
  std::optional<ScanSpec> scan;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  int threads = 0;
  bool timing = true;
  bool alpha_star = true;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ95);

struct ScanRow {
  double param = 0.0;
  int trials = 0;
  int successes = 0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  /// NaN when the predictor does not apply (odd n, product or gnd models).
  double alpha_star = 0.0;
  double wall_ms = 0.0;
};

struct ScanSummary {
  std::optional<double> crossing;
  std::vector<double> alpha_star_trajectory;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

/// The model after setting the scan parameter to `value`.
ModelSpec apply_scan_param(const ModelSpec& base, const std::string& param, double value);

/// Edge-probability structure of graph models: the SBM itself, or the Chung-Lu matrix.
std::optional<BlockStructure> model_block_structure(const ModelSpec& m);

/// Whether one sample of the model has the property.
bool sample_has_property(const ModelSpec& m, const PropertySpec& prop, RngStream rng);

/// Estimates the property's probability at the `point_index`-th grid value (0 outside scans).
ScanRow mc_estimate(const ExperimentConfig& config, std::optional<double> point = std::nullopt,
                    std::size_t point_index = 0);

ScanResult threshold_scan(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "param,trials,successes,estimate,ci_lo,ci_hi,alpha_star,wall_ms";

std::string format_csv(const std::vector<ScanRow>& rows);
std::string format_number(double x);

struct ScenarioOptions {
  std::vector<int> n_values;
  int trials = 0;
  std::uint64_t seed = 1;
  int threads = 0;
  bool timing = true;
  std::string out_dir = ".";
};

struct ScenarioTable {
  std::string name;
  std::vector<ScanRow> rows;
};

struct ScenarioResult {
  std::string name;
  std::vector<ScenarioTable> tables;
  /// Serialized JSON summary (predictor values, moments, diagnostics).
  std::string summary_json;
  std::vector<std::string> files;
};

/// (d1, n1) = (ceil(n^{1/8}), ceil(n^{15/16})), the ideal G(n,d) 0-statement shape.
std::pair<int, int> ideal_gnd_shape(int n);

std::vector<std::string> scenario_names();

/// Runs a named scenario and writes <out_dir>/<name>[_<table>].csv plus <name>.json.
ScenarioResult scenario_run(const std::string& name, const ScenarioOptions& options);

}  // namespace nuspread
