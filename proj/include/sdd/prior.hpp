#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sdd/lp.hpp"
#include "sdd/types.hpp"

namespace sdd {

/// Convex uncertainty set for the cost vector: either an H-polytope
/// {c : Gc <= h} or an ellipsoid {(c-c0)' Sigma^{-1} (c-c0) <= 1}.
class PriorSet {
 public:
  struct HPolytope {
    Mat G;
    Vec h;
  };
  struct Ellipsoid {
    Vec c0;
    Mat sigma;           // symmetric positive definite
    Mat sigma_chol_l;    // cached lower Cholesky factor
  };

  static PriorSet hpolytope(Mat G, Vec h);
  static PriorSet ellipsoid(Vec c0, Mat sigma);

  bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(data_); }
  bool is_hpolytope() const { return std::holds_alternative<HPolytope>(data_); }
  const Ellipsoid& as_ellipsoid() const { return std::get<Ellipsoid>(data_); }
  const HPolytope& as_hpolytope() const { return std::get<HPolytope>(data_); }
  Eigen::Index dim() const;

 private:
  explicit PriorSet(std::variant<HPolytope, Ellipsoid> data)
      : data_(std::move(data)) {}
  std::variant<HPolytope, Ellipsoid> data_;
};

bool membership(const PriorSet& prior, const Vec& c, double tol = 1e-9);

/// Ordered query directions q_1..q_k with their measurements s_i = q_i'c.
/// Queries must be linearly independent; an incremental Gram-Schmidt basis
/// backs the rank assertion and span-residual tests.
class QueryDataset {
 public:
  QueryDataset() = default;
  QueryDataset(std::vector<Vec> queries, std::vector<double> measurements);

  std::size_t size() const { return queries_.size(); }
  bool empty() const { return queries_.empty(); }
  const Vec& query(std::size_t i) const { return queries_[i]; }
  double measurement(std::size_t i) const { return measurements_[i]; }
  const std::vector<Vec>& queries() const { return queries_; }
  const std::vector<double>& measurements() const { return measurements_; }

  /// d x k matrix of stacked query columns.
  Mat query_matrix(Eigen::Index d) const;
  Vec measurement_vector() const;

  /// Norm of q minus its projection onto span(queries).
  double span_residual(const Vec& q) const;

  /// Appends a query; throws DegenerateRank if it lies in the current span
  /// (residual below 1e-8 relative to |q|).
  void append(const Vec& q, double measurement);

  bool same_queries(const QueryDataset& other) const;

 private:
  std::vector<Vec> queries_;
  std::vector<double> measurements_;
  Mat ortho_;  // d x k orthonormal basis of span(queries)
};

/// A prior restricted by query measurements: {c in C : Q'c = s}.
struct Fiber {
  const PriorSet* prior = nullptr;
  const QueryDataset* dataset = nullptr;
};

struct FiResult {
  double min_value = 0.0;
  Vec minimizer;
};

/// Face-intersection subproblem: minimize delta'c over the fiber. H-polytope
/// priors go through the shared simplex (free variables split into
/// differences of nonnegatives); ellipsoids use the closed form.
FiResult face_intersection(const Fiber& fiber, const Vec& delta);

/// Closed-form FI over {(c-c0)' Sigma^{-1} (c-c0) <= R^2, Q'c = s}.
/// Q may have zero columns. When delta' M_perp delta vanishes, delta'c is
/// constant over the fiber and (delta'c_perp, c_perp) is returned.
FiResult ellipsoid_fi_closed_form(const Vec& c0, const Mat& sigma, const Mat& Q,
                                  const Vec& s, const Vec& delta,
                                  double radius = 1.0);

/// Minimum-Mahalanobis-norm fiber member c_perp (ellipsoid priors), or a
/// feasible point of the fiber polytope (H-polytope priors).
Vec fiber_center(const Fiber& fiber);

}  // namespace sdd
