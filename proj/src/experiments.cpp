#include "sdd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdd/oracles.hpp"
#include "sdd/parallel.hpp"

namespace sdd {

namespace {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

void write_outputs(const std::string& dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    write_text_file((std::filesystem::path(dir) / name).string(), content);
  }
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::Io, "cannot open " + path + " for writing");
  out << content;
  require(out.good(), ErrorCode::Io, "failed writing " + path);
}

std::string LearnSummary::csv() const {
  std::ostringstream out;
  out << "seed,n,t_size,dn_size,bound,measured_risk\n";
  for (const auto& row : rows) {
    out << row.seed << ',' << row.n << ',' << row.t_size << ',' << row.dn_size
        << ',' << fmt(row.bound) << ',' << fmt(row.measured_risk) << '\n';
  }
  return out.str();
}

Json LearnSummary::to_json() const {
  Json trials = Json::array();
  for (const auto& row : rows) {
    trials.push_back(Json{{"seed", row.seed},
                          {"n", row.n},
                          {"t_size", row.t_size},
                          {"dn_size", row.dn_size},
                          {"bound", row.bound},
                          {"measured_risk", row.measured_risk},
                          {"replay_ok", row.replay_ok},
                          {"training_clean", row.training_clean}});
  }
  return Json{{"family", "hypercube"},
              {"d_star", config.d_star},
              {"d", config.d},
              {"epsilon", config.epsilon},
              {"n", config.n},
              {"delta", config.delta},
              {"base_seed", config.seed},
              {"lower_bound_mode", config.lower_bound},
              {"trials", trials},
              {"fraction_exceeding_bound", fraction_exceeding_bound},
              {"fraction_risk_above_epsilon", fraction_risk_above_epsilon},
              {"last_trial", last_trial_artifacts}};
}

LearnSummary run_learn_experiment(const LearnConfig& config_in) {
  LearnConfig config = config_in;
  if (config.lower_bound) {
    config.n = static_cast<std::size_t>(
        std::floor(static_cast<double>(config.d_star - 1) /
                   (8.0 * config.epsilon)));
    require(config.n >= 1, ErrorCode::InvalidParams,
            "lower-bound mode: derived n is zero");
  }
  const HypercubeRareTypes inst =
      make_hypercube(config.d_star, config.d, config.epsilon);

  LearnSummary summary;
  summary.config = config;
  summary.rows.resize(config.trials);
  std::vector<Json> artifacts(config.trials);

  parallel_for(config.trials, [&](std::size_t trial) {
    const std::uint64_t seed = config.seed + trial;
    Rng rng(seed);
    std::vector<Vec> samples;
    samples.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) samples.push_back(inst.sample(rng));

    const CompressionResult result =
        run_cumulative(inst.lp, inst.prior, samples);
    const CertificateReport report =
        certificate(std::max<std::size_t>(config.n, 1),
                    result.hard_indices.size(), config.delta, config.d_star);

    std::vector<Vec> fresh;
    fresh.reserve(config.fresh);
    for (std::size_t i = 0; i < config.fresh; ++i) fresh.push_back(inst.sample(rng));
    const double risk =
        empirical_risk(inst.lp, inst.prior, result.final_dataset, fresh);

    bool clean = true;
    for (const Vec& c : samples) {
      if (!is_pointwise_sufficient(inst.lp, inst.prior, result.final_dataset,
                                   c)) {
        clean = false;
        break;
      }
    }

    LearnTrialRow row;
    row.seed = seed;
    row.n = config.n;
    row.t_size = result.hard_indices.size();
    row.dn_size = result.final_dataset.size();
    row.bound = report.bound_t;
    row.measured_risk = risk;
    row.replay_ok = replay_check(inst.lp, inst.prior, samples, result);
    row.training_clean = clean;
    summary.rows[trial] = row;
    artifacts[trial] = Json{{"compression", to_json(result)},
                            {"certificate", to_json(report)}};
  });

  std::size_t exceeding = 0;
  std::size_t above_eps = 0;
  for (const auto& row : summary.rows) {
    if (row.measured_risk > row.bound) ++exceeding;
    if (row.measured_risk > config.epsilon) ++above_eps;
  }
  const double denom = static_cast<double>(std::max<std::size_t>(1, config.trials));
  summary.fraction_exceeding_bound = static_cast<double>(exceeding) / denom;
  summary.fraction_risk_above_epsilon = static_cast<double>(above_eps) / denom;
  if (!artifacts.empty()) summary.last_trial_artifacts = artifacts.back();

  std::vector<std::pair<std::string, std::string>> files{
      {"learn_trials.csv", summary.csv()},
      {"learn_result.json", summary.to_json().dump(2) + "\n"}};
  if (config.write_svg && !config.out_dir.empty()) {
    std::vector<std::pair<double, double>> risks, bounds;
    for (std::size_t i = 0; i < summary.rows.size(); ++i) {
      risks.push_back({static_cast<double>(i), summary.rows[i].measured_risk});
      bounds.push_back({static_cast<double>(i), summary.rows[i].bound});
    }
    std::filesystem::create_directories(config.out_dir);
    write_svg_chart(
        (std::filesystem::path(config.out_dir) / "learn_risk.svg").string(),
        "measured risk vs certificate bound",
        {{"measured_risk", risks}, {"bound", bounds}});
  }
  write_outputs(config.out_dir, files);
  return summary;
}

std::size_t grid_oracle_dstar(const GridCloInstance& grid) {
  const auto reachable = reachable_optima(grid.path_vertices(), grid.prior);
  return static_cast<std::size_t>(dimension_dir(reachable));
}

namespace {

struct GridTruth {
  Mat a_true;      // d x p, range inside the corridor subspace
  double noise;
};

Vec clamp_into_ball(const PriorSet& prior, const Vec& c) {
  const auto& el = prior.as_ellipsoid();
  const Vec z = el.sigma_chol_l.triangularView<Eigen::Lower>().solve(c - el.c0);
  const double norm = z.norm();
  if (norm <= 1.0) return c;
  return el.c0 + (c - el.c0) * ((1.0 - 1e-9) / norm);
}

ContextualSample draw_sample(const GridCloInstance& grid, const GridTruth& truth,
                             Rng& rng) {
  const Eigen::Index p = grid.p;
  const Eigen::Index d = grid.lp.cols();
  Vec xi = rng.normal_vector(p);
  const double norm = xi.norm();
  if (norm > 1.0) xi /= norm;
  Vec c = grid.c0 + truth.a_true * xi + truth.noise * rng.normal_vector(d);
  return ContextualSample{xi, clamp_into_ball(grid.prior, c)};
}

double test_spo_risk(const GridCloInstance& grid,
                     const std::vector<ContextualSample>& test,
                     const std::vector<Vec>& best_vertices,
                     const CompressedPredictor& predictor) {
  double total = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const Vec c_hat = predictor.predict(test[i].xi);
    const BasisSolution plug = solve_lp(grid.lp, c_hat);
    total += test[i].c.dot(plug.vertex) - test[i].c.dot(best_vertices[i]);
  }
  return total / static_cast<double>(test.size());
}

}  // namespace

std::string CloSummary::risk_csv() const {
  std::ostringstream out;
  out << "seed,n_train,method,t_learned,test_spo_risk\n";
  for (const auto& trial : trials) {
    for (const auto& [method, by_n] : trial.risk) {
      for (const auto& [n_train, risk] : by_n) {
        out << trial.seed << ',' << n_train << ',' << method << ','
            << trial.t_learned << ',' << fmt(risk) << '\n';
      }
    }
  }
  return out.str();
}

std::string CloSummary::dimension_csv() const {
  std::ostringstream out;
  out << "seed,n_disc,t_learned\n";
  for (const auto& trial : trials) {
    for (std::size_t i = 0; i < trial.dimension_trace.size(); ++i) {
      out << trial.seed << ',' << (i + 1) << ',' << trial.dimension_trace[i]
          << '\n';
    }
  }
  return out.str();
}

Json CloSummary::to_json() const {
  Json trial_rows = Json::array();
  for (const auto& trial : trials) {
    Json risks;
    for (const auto& [method, by_n] : trial.risk) {
      Json curve;
      for (const auto& [n_train, risk] : by_n) {
        curve[std::to_string(n_train)] = risk;
      }
      risks[method] = curve;
    }
    trial_rows.push_back(Json{{"seed", trial.seed},
                              {"t_learned", trial.t_learned},
                              {"risk", risks}});
  }
  Json stats;
  for (const auto& [method, by_n] : risk_stats) {
    Json curve;
    for (const auto& [n_train, mean_ci] : by_n) {
      curve[std::to_string(n_train)] = Json{{"mean", mean_ci.first},
                                            {"ci90_halfwidth", mean_ci.second}};
    }
    stats[method] = curve;
  }
  return Json{{"family", "grid"},
              {"g", config.g},
              {"p", config.p},
              {"n_test", config.n_test},
              {"base_seed", config.seed},
              {"oracle_d_star", oracle_d_star},
              {"trials", trial_rows},
              {"risk_stats", stats}};
}

CloSummary run_clo_experiment(const CloConfig& config) {
  require(!config.n_train_grid.empty(), ErrorCode::InvalidParams,
          "clo experiment: empty n_train grid");
  const GridCloInstance grid =
      make_grid_clo(config.g, config.p, config.corridor_spec);
  const Eigen::Index d = grid.lp.cols();
  const Eigen::Index p = grid.p;

  // Shared across trials: the oracle subspace that the synthetic
  // conditional-mean model varies over.
  const auto reachable = reachable_optima(grid.path_vertices(), grid.prior);
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < reachable.size(); ++i) {
    diffs.push_back(reachable[i] - reachable[0]);
  }
  const LiftingMap corridor_lift =
      LiftingMap::from_queries(grid.c0, Mat::Identity(d, d), diffs);
  const auto t_star = corridor_lift.t();

  CloSummary summary;
  summary.config = config;
  summary.oracle_d_star = static_cast<std::size_t>(dimension_dir(reachable));
  summary.trials.resize(config.trials);

  if (config.verify) {
    const auto paths = grid.path_vertices();
    std::uint64_t binom = 1;  // C(2(g-1), g-1)
    for (int i = 0; i < config.g - 1; ++i) {
      binom = binom * static_cast<std::uint64_t>(2 * (config.g - 1) - i) /
              static_cast<std::uint64_t>(i + 1);
    }
    require(paths.size() == binom, ErrorCode::Internal,
            "verify: vertex count mismatch");
    // brute-oracle consistency probes against fresh certificates
    Rng rng(config.seed ^ 0x5eedULL);
    PointwiseOptions probe_options;
    probe_options.require_nondegenerate = false;
    BruteOptions brute;
    brute.fiber_samples = 4000;
    for (int probe = 0; probe < 10; ++probe) {
      const Vec hidden = grid.c0 + rng.ball(d);
      InMemoryCostOracle oracle(hidden);
      const PointwiseCertificate cert =
          run_pointwise(grid.lp, grid.prior, oracle, hidden, {}, probe_options);
      require(pointwise_sufficient_brute(grid.lp, grid.prior, cert.dataset,
                                         hidden, paths, rng, brute),
              ErrorCode::Internal,
              "verify: brute oracle contradicts a certificate");
    }
  }

  PointwiseOptions discover_options;
  discover_options.require_nondegenerate = false;

  parallel_for(config.trials, [&](std::size_t trial) {
    const std::uint64_t seed = config.seed + trial;
    Rng rng(seed);

    // Ground-truth conditional mean: c0 + A xi with range in the corridor
    // subspace, scaled to keep costs inside the prior with room for noise.
    Mat coeff(t_star, p);
    for (Eigen::Index i = 0; i < t_star; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) coeff(i, j) = rng.normal();
    }
    Mat a_true = corridor_lift.L() * coeff;
    Eigen::JacobiSVD<Mat> svd(a_true);
    a_true *= 0.7 / svd.singularValues()[0];
    const GridTruth truth{a_true, config.noise};

    // Stage I: regression on one half, discovery on the other.
    const std::size_t n_mu = config.n_stage1 / 2;
    const std::size_t n_disc = config.n_stage1 - n_mu;
    std::vector<ContextualSample> regression;
    for (std::size_t i = 0; i < n_mu; ++i) {
      regression.push_back(draw_sample(grid, truth, rng));
    }
    const OlsModel ols = fit_ols(regression, grid.c0);
    std::vector<Vec> contexts;
    for (std::size_t i = 0; i < n_disc; ++i) {
      contexts.push_back(draw_sample(grid, truth, rng).xi);
    }
    const Stage1Result stage1 =
        stage1_discover(grid.lp, grid.prior, ols, contexts, discover_options);

    CloTrialResult result;
    result.seed = seed;
    result.t_learned = stage1.compression.final_dataset.size();
    result.dimension_trace = stage1.dimension_trace;

    // Stage II: shared test set, one trained model per (method, n_train).
    std::vector<ContextualSample> test;
    std::vector<Vec> best_vertices;
    for (std::size_t i = 0; i < config.n_test; ++i) {
      test.push_back(draw_sample(grid, truth, rng));
      best_vertices.push_back(solve_lp(grid.lp, test.back().c).vertex);
    }
    const std::size_t n_max =
        *std::max_element(config.n_train_grid.begin(), config.n_train_grid.end());
    std::vector<ContextualSample> pool;
    for (std::size_t i = 0; i < n_max; ++i) {
      pool.push_back(draw_sample(grid, truth, rng));
    }

    std::vector<std::pair<std::string, LiftingMap>> methods;
    if (config.run_full) {
      // purely linear predictor in the ambient dimension (no prior offset)
      methods.push_back({"full", LiftingMap::identity(Vec::Zero(d), d)});
    }
    if (config.run_compressed) {
      std::vector<Vec> learned(stage1.compression.final_dataset.queries());
      if (learned.empty()) learned.push_back(Vec::Ones(d));
      methods.push_back(
          {"compressed",
           LiftingMap::from_queries(grid.c0, Mat::Identity(d, d), learned)});
    }
    for (const auto& [name, lifting] : methods) {
      for (const std::size_t n_train : config.n_train_grid) {
        std::vector<ContextualSample> train(pool.begin(),
                                            pool.begin() + n_train);
        TrainConfig tc;
        tc.eta0 = config.eta0;
        tc.epochs = config.epochs;
        tc.seed = seed * 1000003ULL + n_train;
        const CompressedPredictor predictor =
            train_spo_plus(grid.lp, lifting, train, tc);
        result.risk[name][n_train] =
            test_spo_risk(grid, test, best_vertices, predictor);
      }
    }
    summary.trials[trial] = std::move(result);
  });

  // mean and 90% normal-approximation confidence halfwidth per curve point
  for (const auto& trial : summary.trials) {
    for (const auto& [method, by_n] : trial.risk) {
      for (const auto& [n_train, risk] : by_n) {
        (void)risk;
        summary.risk_stats[method][n_train] = {0.0, 0.0};
      }
    }
  }
  for (auto& [method, by_n] : summary.risk_stats) {
    for (auto& [n_train, stat] : by_n) {
      std::vector<double> values;
      for (const auto& trial : summary.trials) {
        const auto mit = trial.risk.find(method);
        if (mit == trial.risk.end()) continue;
        const auto nit = mit->second.find(n_train);
        if (nit != mit->second.end()) values.push_back(nit->second);
      }
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= std::max<std::size_t>(1, values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      if (values.size() > 1) var /= static_cast<double>(values.size() - 1);
      const double half =
          1.645 * std::sqrt(var / std::max<std::size_t>(1, values.size()));
      stat = {mean, half};
    }
  }

  std::vector<std::pair<std::string, std::string>> files{
      {"clo_risk.csv", summary.risk_csv()},
      {"clo_dimension.csv", summary.dimension_csv()},
      {"clo_summary.json", summary.to_json().dump(2) + "\n"}};
  write_outputs(config.out_dir, files);
  if (config.write_svg && !config.out_dir.empty()) {
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>
        risk_series;
    for (const auto& [method, by_n] : summary.risk_stats) {
      std::vector<std::pair<double, double>> curve;
      for (const auto& [n_train, stat] : by_n) {
        curve.push_back({static_cast<double>(n_train), stat.first});
      }
      risk_series.push_back({method, curve});
    }
    write_svg_chart(
        (std::filesystem::path(config.out_dir) / "clo_risk.svg").string(),
        "test SPO risk vs training samples", risk_series);

    std::vector<std::pair<double, double>> dim_curve;
    if (!summary.trials.empty()) {
      const auto& trace = summary.trials.front().dimension_trace;
      for (std::size_t i = 0; i < trace.size(); ++i) {
        dim_curve.push_back(
            {static_cast<double>(i + 1), static_cast<double>(trace[i])});
      }
    }
    write_svg_chart(
        (std::filesystem::path(config.out_dir) / "clo_dimension.svg").string(),
        "learned dimension vs discovery samples", {{"t_learned", dim_curve}});
  }
  return summary;
}

Json make_instance_json(const std::string& family, const Json& params) {
  if (family == "hypercube") {
    const auto d_star = params.value("d_star", std::size_t{4});
    const auto d = params.value("d", d_star);
    const double eps = params.value("epsilon", 0.1);
    const HypercubeRareTypes inst = make_hypercube(d_star, d, eps);
    Json meta_params{{"d_star", d_star}, {"d", d}, {"epsilon", eps}};
    return instance_bundle(inst.lp, inst.prior, "hypercube", meta_params,
                           d_star);
  }
  if (family == "grid") {
    const int g = params.value("g", 5);
    const int p = params.value("p", 5);
    const std::string corridor = params.value("corridor", "staircase");
    const GridCloInstance grid = make_grid_clo(g, p, corridor);
    Json meta_params{{"g", g}, {"p", p}, {"corridor", grid.corridor_spec}};
    std::optional<std::size_t> d_star;
    if (g <= 5) d_star = grid_oracle_dstar(grid);
    return instance_bundle(grid.lp, grid.prior, "grid", meta_params, d_star);
  }
  if (family == "pispp") {
    require(params.contains("cnf"), ErrorCode::InvalidParams,
            "pispp instance requires a cnf field");
    const ThreeSatFormula formula =
        parse_dimacs(params.at("cnf").get<std::string>());
    const double eta = params.value("eta", 0.5);
    const PisppInstance inst = sat_to_pispp(formula, eta);
    Json meta_params{{"n_vars", inst.n_vars},
                     {"n_clauses", inst.n_clauses},
                     {"budget", inst.budget},
                     {"required_arc", inst.required_arc},
                     {"eta", eta}};
    return instance_bundle(inst.flow_lp(), inst.closed_prior(), "pispp",
                           meta_params, std::nullopt);
  }
  fail(ErrorCode::InvalidParams, "unknown instance family: " + family);
}

void write_svg_chart(
    const std::string& path, const std::string& title,
    const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>&
        series) {
  const int width = 640, height = 420, margin = 56;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& [name, points] : series) {
    (void)name;
    for (const auto& [x, y] : points) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto sx = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  auto sy = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmin)
      << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt(xmax) << "</text>\n";
  out << "<text x=\"" << margin - 6 << "\" y=\"" << height - margin
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt(ymin) << "</text>\n";
  out << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt(ymax) << "</text>\n";
  std::size_t color = 0;
  for (const auto& [name, points] : series) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[color % 4]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << width - margin - 4 << "\" y=\""
        << margin + 16 * static_cast<int>(color) + 12
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
        << "fill=\"" << colors[color % 4] << "\">" << name << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
  write_text_file(path, out.str());
}

}  // namespace sdd
