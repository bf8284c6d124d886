#include "sdd/sdd.h"

#include <cstring>
#include <new>
#include <string>

#include "sdd/experiments.hpp"
#include "sdd/oracles.hpp"
#include "sdd/serialize.hpp"

namespace {

thread_local std::string g_last_error;

sdd_status status_from_code(sdd::ErrorCode code) {
  using sdd::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SDD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SDD_ERR_PARSE;
    case ErrorCode::Io: return SDD_ERR_IO;
    case ErrorCode::Infeasible: return SDD_ERR_INFEASIBLE;
    case ErrorCode::Unbounded: return SDD_ERR_UNBOUNDED;
    case ErrorCode::Singular: return SDD_ERR_SINGULAR;
    case ErrorCode::DegenerateVertex: return SDD_ERR_DEGENERATE_VERTEX;
    case ErrorCode::EmptyFiber: return SDD_ERR_EMPTY_FIBER;
    case ErrorCode::OutsideFiber: return SDD_ERR_OUTSIDE_FIBER;
    case ErrorCode::DegenerateRank: return SDD_ERR_DEGENERATE_RANK;
    case ErrorCode::FiberInconsistent: return SDD_ERR_FIBER_INCONSISTENT;
    case ErrorCode::NoProgress: return SDD_ERR_NO_PROGRESS;
    case ErrorCode::NoViolatedFacet: return SDD_ERR_NO_VIOLATED_FACET;
    case ErrorCode::RankDeficientDesign: return SDD_ERR_RANK_DEFICIENT;
    case ErrorCode::TooLarge: return SDD_ERR_TOO_LARGE;
    case ErrorCode::NonConvergence: return SDD_ERR_NONCONVERGENCE;
    case ErrorCode::BadParams:
    case ErrorCode::BadCorridor:
    case ErrorCode::InvalidDelta:
    case ErrorCode::InvalidParams: return SDD_ERR_BAD_PARAMS;
    case ErrorCode::Internal: return SDD_ERR_INTERNAL;
  }
  return SDD_ERR_INTERNAL;
}

template <typename Fn>
sdd_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SDD_OK;
  } catch (const sdd::Error& e) {
    g_last_error = e.what();
    return status_from_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return SDD_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SDD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SDD_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sdd::Mat colmajor_queries(int d, int k, const double* data) {
  sdd::Mat Q(d, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < d; ++i) Q(i, j) = data[j * d + i];
  }
  return Q;
}

void check_arg(bool cond, const char* message) {
  if (!cond) sdd::fail(sdd::ErrorCode::InvalidArgument, message);
}

}  // namespace

struct sdd_lp {
  sdd::StandardFormLP impl;
};

struct sdd_prior {
  sdd::PriorSet impl;
};

extern "C" {

const char* sdd_version(void) { return "0.1.0"; }

const char* sdd_status_name(sdd_status status) {
  switch (status) {
    case SDD_OK: return "SDD_OK";
    case SDD_ERR_INVALID_ARGUMENT: return "SDD_ERR_INVALID_ARGUMENT";
    case SDD_ERR_PARSE: return "SDD_ERR_PARSE";
    case SDD_ERR_IO: return "SDD_ERR_IO";
    case SDD_ERR_INFEASIBLE: return "SDD_ERR_INFEASIBLE";
    case SDD_ERR_UNBOUNDED: return "SDD_ERR_UNBOUNDED";
    case SDD_ERR_SINGULAR: return "SDD_ERR_SINGULAR";
    case SDD_ERR_DEGENERATE_VERTEX: return "SDD_ERR_DEGENERATE_VERTEX";
    case SDD_ERR_EMPTY_FIBER: return "SDD_ERR_EMPTY_FIBER";
    case SDD_ERR_OUTSIDE_FIBER: return "SDD_ERR_OUTSIDE_FIBER";
    case SDD_ERR_DEGENERATE_RANK: return "SDD_ERR_DEGENERATE_RANK";
    case SDD_ERR_FIBER_INCONSISTENT: return "SDD_ERR_FIBER_INCONSISTENT";
    case SDD_ERR_NO_PROGRESS: return "SDD_ERR_NO_PROGRESS";
    case SDD_ERR_NO_VIOLATED_FACET: return "SDD_ERR_NO_VIOLATED_FACET";
    case SDD_ERR_RANK_DEFICIENT: return "SDD_ERR_RANK_DEFICIENT";
    case SDD_ERR_TOO_LARGE: return "SDD_ERR_TOO_LARGE";
    case SDD_ERR_NONCONVERGENCE: return "SDD_ERR_NONCONVERGENCE";
    case SDD_ERR_BAD_PARAMS: return "SDD_ERR_BAD_PARAMS";
    case SDD_ERR_INTERNAL: return "SDD_ERR_INTERNAL";
  }
  return "SDD_ERR_UNKNOWN";
}

const char* sdd_last_error(void) { return g_last_error.c_str(); }

void sdd_string_free(char* s) { delete[] s; }

sdd_status sdd_lp_create(int m, int d, const double* a_rowmajor,
                         const double* b, int bounded_attested,
                         int nondegenerate_hint, sdd_lp** out) {
  return guarded([&] {
    check_arg(out && a_rowmajor && b && m >= 1 && d >= m, "sdd_lp_create: bad args");
    sdd::Mat A(m, d);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < d; ++j) A(i, j) = a_rowmajor[i * d + j];
    }
    sdd::Vec bv(m);
    for (int i = 0; i < m; ++i) bv[i] = b[i];
    *out = new sdd_lp{sdd::StandardFormLP(std::move(A), std::move(bv),
                                          bounded_attested != 0,
                                          nondegenerate_hint != 0)};
  });
}

sdd_status sdd_lp_from_json(const char* json_text, sdd_lp** out) {
  return guarded([&] {
    check_arg(out && json_text, "sdd_lp_from_json: bad args");
    const sdd::Json j = sdd::Json::parse(json_text);
    *out = new sdd_lp{sdd::lp_from_json(j)};
  });
}

sdd_status sdd_lp_to_json(const sdd_lp* lp, char** json_out) {
  return guarded([&] {
    check_arg(lp && json_out, "sdd_lp_to_json: bad args");
    *json_out = dup_string(sdd::to_json(lp->impl).dump());
  });
}

sdd_status sdd_lp_dims(const sdd_lp* lp, int* m, int* d) {
  return guarded([&] {
    check_arg(lp != nullptr, "sdd_lp_dims: null lp");
    if (m) *m = static_cast<int>(lp->impl.rows());
    if (d) *d = static_cast<int>(lp->impl.cols());
  });
}

sdd_status sdd_lp_solve(const sdd_lp* lp, const double* cost, int* basis_out,
                        double* vertex_out, double* objective_out) {
  return guarded([&] {
    check_arg(lp && cost, "sdd_lp_solve: bad args");
    sdd::Vec c(lp->impl.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = cost[i];
    const sdd::BasisSolution bs = sdd::solve_lp(lp->impl, c);
    if (basis_out) {
      for (std::size_t i = 0; i < bs.basis.size(); ++i) {
        basis_out[i] = static_cast<int>(bs.basis[i]);
      }
    }
    if (vertex_out) {
      for (Eigen::Index i = 0; i < bs.vertex.size(); ++i) {
        vertex_out[i] = bs.vertex[i];
      }
    }
    if (objective_out) *objective_out = bs.objective;
  });
}

void sdd_lp_free(sdd_lp* lp) { delete lp; }

sdd_status sdd_prior_ellipsoid(int d, const double* center,
                               const double* sigma_rowmajor, sdd_prior** out) {
  return guarded([&] {
    check_arg(out && center && sigma_rowmajor && d >= 1,
              "sdd_prior_ellipsoid: bad args");
    sdd::Vec c0(d);
    sdd::Mat sigma(d, d);
    for (int i = 0; i < d; ++i) {
      c0[i] = center[i];
      for (int j = 0; j < d; ++j) sigma(i, j) = sigma_rowmajor[i * d + j];
    }
    *out = new sdd_prior{sdd::PriorSet::ellipsoid(std::move(c0), std::move(sigma))};
  });
}

sdd_status sdd_prior_hpolytope(int rows, int d, const double* g_rowmajor,
                               const double* h, sdd_prior** out) {
  return guarded([&] {
    check_arg(out && g_rowmajor && h && rows >= 1 && d >= 1,
              "sdd_prior_hpolytope: bad args");
    sdd::Mat G(rows, d);
    sdd::Vec hv(rows);
    for (int i = 0; i < rows; ++i) {
      hv[i] = h[i];
      for (int j = 0; j < d; ++j) G(i, j) = g_rowmajor[i * d + j];
    }
    *out = new sdd_prior{sdd::PriorSet::hpolytope(std::move(G), std::move(hv))};
  });
}

sdd_status sdd_prior_from_json(const char* json_text, sdd_prior** out) {
  return guarded([&] {
    check_arg(out && json_text, "sdd_prior_from_json: bad args");
    const sdd::Json j = sdd::Json::parse(json_text);
    *out = new sdd_prior{sdd::prior_from_json(j)};
  });
}

sdd_status sdd_prior_membership(const sdd_prior* prior, int d, const double* c,
                                int* is_member) {
  return guarded([&] {
    check_arg(prior && c && is_member && d == prior->impl.dim(),
              "sdd_prior_membership: bad args");
    sdd::Vec cv(d);
    for (int i = 0; i < d; ++i) cv[i] = c[i];
    *is_member = sdd::membership(prior->impl, cv) ? 1 : 0;
  });
}

sdd_status sdd_fi_solve(const sdd_prior* prior, int d, int k,
                        const double* queries, const double* measurements,
                        const double* delta, double* min_value,
                        double* minimizer_out) {
  return guarded([&] {
    check_arg(prior && delta && min_value && d == prior->impl.dim() && k >= 0,
              "sdd_fi_solve: bad args");
    check_arg(k == 0 || (queries && measurements), "sdd_fi_solve: bad args");
    sdd::QueryDataset dataset;
    if (k > 0) {
      const sdd::Mat Q = colmajor_queries(d, k, queries);
      for (int i = 0; i < k; ++i) dataset.append(Q.col(i), measurements[i]);
    }
    sdd::Vec dv(d);
    for (int i = 0; i < d; ++i) dv[i] = delta[i];
    const sdd::Fiber fiber{&prior->impl, &dataset};
    const sdd::FiResult fi = sdd::face_intersection(fiber, dv);
    *min_value = fi.min_value;
    if (minimizer_out) {
      for (int i = 0; i < d; ++i) minimizer_out[i] = fi.minimizer[i];
    }
  });
}

void sdd_prior_free(sdd_prior* prior) { delete prior; }

sdd_status sdd_pointwise_run(const sdd_lp* lp, const sdd_prior* prior,
                             const double* hidden_cost, int n_init,
                             const double* init_queries, int allow_degenerate,
                             char** certificate_json) {
  return guarded([&] {
    check_arg(lp && prior && hidden_cost && certificate_json && n_init >= 0,
              "sdd_pointwise_run: bad args");
    check_arg(n_init == 0 || init_queries, "sdd_pointwise_run: bad args");
    const int d = static_cast<int>(lp->impl.cols());
    sdd::Vec cost(d);
    for (int i = 0; i < d; ++i) cost[i] = hidden_cost[i];
    std::vector<sdd::Vec> init;
    if (n_init > 0) {
      const sdd::Mat Q = colmajor_queries(d, n_init, init_queries);
      for (int i = 0; i < n_init; ++i) init.push_back(Q.col(i));
    }
    sdd::InMemoryCostOracle oracle(cost);
    sdd::PointwiseOptions options;
    options.require_nondegenerate = allow_degenerate == 0;
    const sdd::PointwiseCertificate cert =
        sdd::run_pointwise(lp->impl, prior->impl, oracle, cost, init, options);
    *certificate_json = dup_string(sdd::to_json(cert).dump());
  });
}

sdd_status sdd_cumulative_run(const sdd_lp* lp, const sdd_prior* prior, int n,
                              const double* costs, int allow_degenerate,
                              char** result_json) {
  return guarded([&] {
    check_arg(lp && prior && result_json && n >= 0, "sdd_cumulative_run: bad args");
    check_arg(n == 0 || costs, "sdd_cumulative_run: bad args");
    const int d = static_cast<int>(lp->impl.cols());
    std::vector<sdd::Vec> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      sdd::Vec c(d);
      for (int j = 0; j < d; ++j) c[j] = costs[i * d + j];
      samples.push_back(std::move(c));
    }
    sdd::PointwiseOptions options;
    options.require_nondegenerate = allow_degenerate == 0;
    const sdd::CompressionResult result =
        sdd::run_cumulative(lp->impl, prior->impl, samples, options);
    *result_json = dup_string(sdd::to_json(result).dump());
  });
}

sdd_status sdd_certificate_bound(int n, int t_size, double delta, int d_star,
                                 double* bound_t_out, double* bound_dstar_out) {
  return guarded([&] {
    check_arg(bound_t_out && n >= 0 && t_size >= 0,
              "sdd_certificate_bound: bad args");
    std::optional<std::size_t> ds;
    if (d_star >= 0) ds = static_cast<std::size_t>(d_star);
    const sdd::CertificateReport report = sdd::certificate(
        static_cast<std::size_t>(n), static_cast<std::size_t>(t_size), delta, ds);
    *bound_t_out = report.bound_t;
    if (bound_dstar_out && report.bound_dstar) {
      *bound_dstar_out = *report.bound_dstar;
    }
  });
}

sdd_status sdd_empirical_risk(const sdd_lp* lp, const sdd_prior* prior,
                              const char* dataset_json, int n,
                              const double* costs, int allow_degenerate,
                              double* risk_out) {
  return guarded([&] {
    check_arg(lp && prior && dataset_json && risk_out && n >= 0,
              "sdd_empirical_risk: bad args");
    check_arg(n == 0 || costs, "sdd_empirical_risk: bad args");
    const sdd::QueryDataset dataset =
        sdd::dataset_from_json(sdd::Json::parse(dataset_json));
    const int d = static_cast<int>(lp->impl.cols());
    std::vector<sdd::Vec> fresh;
    for (int i = 0; i < n; ++i) {
      sdd::Vec c(d);
      for (int j = 0; j < d; ++j) c[j] = costs[i * d + j];
      fresh.push_back(std::move(c));
    }
    sdd::PointwiseOptions options;
    options.require_nondegenerate = allow_degenerate == 0;
    *risk_out =
        sdd::empirical_risk(lp->impl, prior->impl, dataset, fresh, options);
  });
}

sdd_status sdd_instance_make(const char* family, const char* params_json,
                             char** instance_json) {
  return guarded([&] {
    check_arg(family && instance_json, "sdd_instance_make: bad args");
    const sdd::Json params =
        params_json ? sdd::Json::parse(params_json) : sdd::Json::object();
    *instance_json = dup_string(sdd::make_instance_json(family, params).dump(2));
  });
}

sdd_status sdd_grid_oracle_dstar(const char* params_json, int* d_star_out) {
  return guarded([&] {
    check_arg(d_star_out != nullptr, "sdd_grid_oracle_dstar: bad args");
    const sdd::Json params =
        params_json ? sdd::Json::parse(params_json) : sdd::Json::object();
    const int g = params.value("g", 5);
    const int p = params.value("p", 5);
    const std::string corridor = params.value("corridor", "staircase");
    const sdd::GridCloInstance grid = sdd::make_grid_clo(g, p, corridor);
    *d_star_out = static_cast<int>(sdd::grid_oracle_dstar(grid));
  });
}

sdd_status sdd_pispp_check_cnf(const char* dimacs_text, int* satisfiable_out,
                               int* equivalence_out) {
  return guarded([&] {
    check_arg(dimacs_text && equivalence_out, "sdd_pispp_check_cnf: bad args");
    const sdd::ThreeSatFormula formula = sdd::parse_dimacs(dimacs_text);
    const sdd::PisppInstance inst = sdd::sat_to_pispp(formula);
    if (satisfiable_out) {
      bool sat = false;
      for (std::size_t mask = 0;
           mask < (std::size_t{1} << formula.n_vars) && !sat; ++mask) {
        bool all = true;
        for (const auto& clause : formula.clauses) {
          bool ok = false;
          for (int lit : clause) {
            const bool value = (mask >> (std::abs(lit) - 1)) & 1U;
            if ((lit > 0 && value) || (lit < 0 && !value)) ok = true;
          }
          if (!ok) {
            all = false;
            break;
          }
        }
        sat = all;
      }
      *satisfiable_out = sat ? 1 : 0;
    }
    *equivalence_out = sdd::pispp_brute_check(inst, formula) ? 1 : 0;
  });
}

sdd_status sdd_learn_experiment(const char* config_json, char** summary_json) {
  return guarded([&] {
    check_arg(config_json && summary_json, "sdd_learn_experiment: bad args");
    const sdd::Json j = sdd::Json::parse(config_json);
    sdd::LearnConfig config;
    config.d_star = j.value("d_star", config.d_star);
    config.d = j.value("d", config.d_star);
    config.epsilon = j.value("epsilon", config.epsilon);
    config.n = j.value("n", config.n);
    config.trials = j.value("trials", config.trials);
    config.fresh = j.value("fresh", config.fresh);
    config.delta = j.value("delta", config.delta);
    config.seed = j.value("seed", config.seed);
    config.lower_bound = j.value("lower_bound", config.lower_bound);
    config.out_dir = j.value("out", config.out_dir);
    config.write_svg = j.value("svg", config.write_svg);
    if (config.d < config.d_star) config.d = config.d_star;
    const sdd::LearnSummary summary = sdd::run_learn_experiment(config);
    *summary_json = dup_string(summary.to_json().dump(2));
  });
}

sdd_status sdd_clo_experiment(const char* config_json, char** summary_json) {
  return guarded([&] {
    check_arg(config_json && summary_json, "sdd_clo_experiment: bad args");
    const sdd::Json j = sdd::Json::parse(config_json);
    sdd::CloConfig config;
    config.g = j.value("g", config.g);
    config.p = j.value("p", config.p);
    if (j.contains("n_train_grid")) {
      config.n_train_grid =
          j.at("n_train_grid").get<std::vector<std::size_t>>();
    }
    config.n_test = j.value("n_test", config.n_test);
    config.trials = j.value("trials", config.trials);
    config.n_stage1 = j.value("n_stage1", config.n_stage1);
    config.eta0 = j.value("eta0", config.eta0);
    config.epochs = j.value("epochs", config.epochs);
    config.noise = j.value("noise", config.noise);
    config.seed = j.value("seed", config.seed);
    config.run_full = j.value("full", config.run_full);
    config.run_compressed = j.value("compressed", config.run_compressed);
    config.verify = j.value("verify", config.verify);
    config.corridor_spec = j.value("corridor", config.corridor_spec);
    config.out_dir = j.value("out", config.out_dir);
    config.write_svg = j.value("svg", config.write_svg);
    const sdd::CloSummary summary = sdd::run_clo_experiment(config);
    *summary_json = dup_string(summary.to_json().dump(2));
  });
}

}  // extern "C"
