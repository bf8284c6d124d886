#include "sdd/pointwise.hpp"

#include <cmath>
#include <limits>

namespace sdd {

std::pair<std::size_t, double> facet_hit_select(
    const Vec& c_in, const Vec& c_out, const std::vector<EdgeDirection>& edges,
    double tol) {
  std::size_t best = edges.size();
  double best_alpha = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < edges.size(); ++p) {
    const Vec& delta = edges[p].delta;
    const double in_val = c_in.dot(delta);
    const double out_val = c_out.dot(delta);
    const double scale = 1.0 + c_in.norm() * delta.norm();
    require(in_val >= -tol * scale, ErrorCode::InvalidArgument,
            "facet_hit_select: anchor is outside the optimality cone");
    if (out_val >= 0.0) continue;
    const double alpha = std::max(in_val, 0.0) / (std::max(in_val, 0.0) - out_val);
    if (alpha < best_alpha - 1e-15) {
      best_alpha = alpha;
      best = p;
    }
  }
  require(best < edges.size(), ErrorCode::NoViolatedFacet,
          "facet_hit_select: witness violates no facet");
  return {best, best_alpha};
}

ContainmentReport containment_test(const StandardFormLP& lp,
                                   const BasisSolution& bs,
                                   const std::vector<EdgeDirection>& edges,
                                   const Fiber& fiber) {
  (void)lp;
  (void)bs;
  ContainmentReport report;
  report.m_min = std::numeric_limits<double>::infinity();
  report.facet_values.reserve(edges.size());
  for (std::size_t p = 0; p < edges.size(); ++p) {
    const FiResult fi = face_intersection(fiber, edges[p].delta);
    report.facet_values.push_back(fi.min_value);
    if (fi.min_value < report.m_min) {
      report.m_min = fi.min_value;
      report.j_pos = p;
      report.witness = fi.minimizer;
    }
  }
  return report;
}

namespace {

bool facets_contained(const ContainmentReport& report,
                      const std::vector<EdgeDirection>& edges,
                      const Vec& anchor, double tol_cert) {
  const double cost_scale = 1.0 + anchor.norm();
  for (std::size_t p = 0; p < edges.size(); ++p) {
    const double thresh = -tol_cert * (1.0 + edges[p].delta.norm() * cost_scale);
    if (report.facet_values[p] < thresh) return false;
  }
  return true;
}

}  // namespace

PointwiseCertificate run_pointwise(const StandardFormLP& lp,
                                   const PriorSet& prior, CostOracle& oracle,
                                   const Vec& anchor,
                                   const std::vector<Vec>& init,
                                   const PointwiseOptions& options) {
  const Eigen::Index d = lp.cols();
  require(anchor.size() == d, ErrorCode::InvalidArgument,
          "run_pointwise: anchor dimension mismatch");
  require(membership(prior, anchor, 1e-6), ErrorCode::FiberInconsistent,
          "run_pointwise: anchor is not a prior member");

  PointwiseCertificate cert;
  const std::size_t calls_before = oracle.call_count();
  for (const Vec& q : init) {
    cert.dataset.append(q, oracle.query(q));
  }

  const std::size_t max_iter =
      options.max_iterations > 0 ? options.max_iterations
                                 : static_cast<std::size_t>(d) + 1;
  Vec c_in = anchor;
  for (;;) {
    ++cert.iterations;
    require(cert.iterations <= max_iter + 1, ErrorCode::NoProgress,
            "run_pointwise: iteration cap exceeded");

    Fiber fiber{&prior, &cert.dataset};
    if (options.unknown_cost_mode && cert.iterations > 1) {
      c_in = fiber_center(fiber);
    }

    const BasisSolution bs = solve_lp(lp, c_in);
    if (options.require_nondegenerate && !check_nondegenerate(lp, bs)) {
      fail(ErrorCode::DegenerateVertex,
           "run_pointwise: visited vertex violates the nondegeneracy "
           "assumption");
    }
    const std::vector<EdgeDirection> edges = edge_directions(lp, bs);
    const ContainmentReport report = containment_test(lp, bs, edges, fiber);
    cert.fi_calls += edges.size();

    if (facets_contained(report, edges, c_in, options.tol_cert)) {
      cert.basis = bs;
      cert.decision = bs.vertex;
      cert.oracle_calls = oracle.call_count() - calls_before;
      cert.queries_added = cert.dataset.size() - init.size();
      return cert;
    }

    const auto [j_star, alpha] =
        facet_hit_select(c_in, report.witness, edges, options.tol_cert * 10.0);
    const Vec& q = edges[j_star].delta;

    // Lemma-level guarantee: the selected direction is independent of all
    // previous queries. A small residual therefore flags numerical breakdown,
    // not a legitimate state; abort instead of looping.
    require(cert.dataset.span_residual(q) > 1e-8 * std::max(1.0, q.norm()),
            ErrorCode::NoProgress,
            "run_pointwise: selected facet normal lies in the query span");

    cert.hit_points.push_back(c_in + alpha * (report.witness - c_in));
    cert.dataset.append(q, oracle.query(q));
  }
}

bool is_pointwise_sufficient(const StandardFormLP& lp, const PriorSet& prior,
                             const QueryDataset& dataset, const Vec& cost,
                             const PointwiseOptions& options) {
  const BasisSolution bs = solve_lp(lp, cost);
  if (options.require_nondegenerate && !check_nondegenerate(lp, bs)) {
    fail(ErrorCode::DegenerateVertex,
         "is_pointwise_sufficient: degenerate vertex");
  }
  // Fiber at the measurements this cost would produce.
  QueryDataset realized;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    realized.append(dataset.query(i), dataset.query(i).dot(cost));
  }
  Fiber fiber{&prior, &realized};
  const std::vector<EdgeDirection> edges = edge_directions(lp, bs);
  const ContainmentReport report = containment_test(lp, bs, edges, fiber);
  const double cost_scale = 1.0 + cost.norm();
  for (std::size_t p = 0; p < edges.size(); ++p) {
    const double thresh =
        -options.tol_cert * (1.0 + edges[p].delta.norm() * cost_scale);
    if (report.facet_values[p] < thresh) return false;
  }
  return true;
}

}  // namespace sdd
