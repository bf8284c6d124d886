#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdd/clo.hpp"
#include "sdd/cumulative.hpp"
#include "sdd/instances.hpp"
#include "sdd/serialize.hpp"

namespace sdd {

/// Cumulative-learning experiment over the rare-types family. One row per
/// trial; per-trial seeds are seed + trial index so the worker pool never
/// changes results.
struct LearnConfig {
  std::size_t d_star = 6;
  std::size_t d = 9;
  double epsilon = 0.1;
  std::size_t n = 500;
  std::size_t trials = 50;
  std::size_t fresh = 2000;
  double delta = 0.05;
  std::uint64_t seed = 1;
  /// Lower-bound mode: n defaults to floor((d*-1)/(8 eps)) and the summary
  /// reports the fraction of trials with measured risk above epsilon.
  bool lower_bound = false;
  std::string out_dir;
  bool write_svg = false;
};

struct LearnTrialRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t t_size = 0;
  std::size_t dn_size = 0;
  double bound = 0.0;
  double measured_risk = 0.0;
  bool replay_ok = false;
  bool training_clean = false;
};

struct LearnSummary {
  LearnConfig config;
  std::vector<LearnTrialRow> rows;
  double fraction_exceeding_bound = 0.0;
  double fraction_risk_above_epsilon = 0.0;
  Json last_trial_artifacts;  // CompressionResult + CertificateReport JSON

  std::string csv() const;
  Json to_json() const;
};

LearnSummary run_learn_experiment(const LearnConfig& config);

/// Two-stage contextual pipeline on the grid instance: Stage I learns the
/// subspace from (context, cost) pairs, Stage II trains SPO+ in it, against
/// the full-dimensional baseline.
struct CloConfig {
  int g = 5;
  int p = 5;
  std::vector<std::size_t> n_train_grid = {50, 300};
  std::size_t n_test = 2000;
  std::size_t trials = 10;
  std::size_t n_stage1 = 300;  // half regression, half discovery
  double eta0 = 0.5;
  std::size_t epochs = 3;
  double noise = 0.03;
  std::uint64_t seed = 1;
  bool run_full = true;
  bool run_compressed = true;
  bool verify = false;
  std::string corridor_spec = "staircase";
  std::string out_dir;
  bool write_svg = false;
};

struct CloTrialResult {
  std::uint64_t seed = 0;
  std::size_t t_learned = 0;
  std::vector<std::size_t> dimension_trace;  // after each discovery sample
  /// risk[method][n_train] with method in {"full", "compressed"}
  std::map<std::string, std::map<std::size_t, double>> risk;
};

struct CloSummary {
  CloConfig config;
  std::size_t oracle_d_star = 0;
  std::vector<CloTrialResult> trials;
  /// mean and 90% normal-approximation half-width per (method, n_train)
  std::map<std::string, std::map<std::size_t, std::pair<double, double>>>
      risk_stats;

  std::string risk_csv() const;
  std::string dimension_csv() const;
  Json to_json() const;
};

CloSummary run_clo_experiment(const CloConfig& config);

/// Oracle d* of a grid instance by vertex enumeration.
std::size_t grid_oracle_dstar(const GridCloInstance& grid);

/// Instance bundles for the CLI.
Json make_instance_json(const std::string& family, const Json& params);

/// Minimal SVG polyline chart; one series per (name, points) pair.
void write_svg_chart(
    const std::string& path, const std::string& title,
    const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>&
        series);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sdd
