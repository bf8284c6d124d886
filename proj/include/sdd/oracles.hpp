#pragma once

#include <optional>
#include <vector>

#include "sdd/lp.hpp"
#include "sdd/prior.hpp"
#include "sdd/rng.hpp"

namespace sdd {

/// Complete duplicate-free vertex list by enumerating basis subsets. Only
/// viable at enumeration scale; instance families with combinatorial
/// structure (paths, sign patterns) supply their own lists instead.
std::vector<Vec> enumerate_vertices(const StandardFormLP& lp,
                                    std::size_t basis_cap = 2'000'000);

struct DykstraOptions {
  std::size_t iteration_cap = 100'000;
  double tol = 1e-10;
};

struct ConeDistanceResult {
  double distance = 0.0;
  bool converged = true;
  Vec point;
};

/// Minimum-norm point of an intersection of halfspaces {a_i'z >= b_i},
/// Dykstra's alternating projections with an active-set outer loop.
ConeDistanceResult min_norm_to_halfspaces(const std::vector<Vec>& normals,
                                          const std::vector<double>& offsets,
                                          const DykstraOptions& options = {});

/// Vertices v with C intersecting the true optimality cone
/// {c : c'(x_i - v) >= 0 for all vertices x_i}. H-polytope priors solve a
/// feasibility LP per vertex; ellipsoids minimize the Mahalanobis distance to
/// the cone, accepting iff it is at most 1 + 1e-6. Vertices whose distance
/// computation fails to converge raise NonConvergence.
std::vector<Vec> reachable_optima(const std::vector<Vec>& vertices,
                                  const PriorSet& prior,
                                  const DykstraOptions& options = {});

/// dim span{v_i - v_0}: SVD rank with threshold 1e-8 * sigma_max.
Eigen::Index dimension_dir(const std::vector<Vec>& reachable);

struct BruteOptions {
  std::size_t fiber_samples = 10'000;
  double objective_tol = 1e-8;
};

/// One-sided Monte-Carlo sufficiency oracle: samples the fiber of c under
/// the dataset (plus the FI witnesses at the realized optimal basis) and
/// reports whether a single vertex is optimal for every probe. A probe set
/// with empty common-argmin proves insufficiency; agreement reports true.
bool pointwise_sufficient_brute(const StandardFormLP& lp, const PriorSet& prior,
                                const QueryDataset& dataset, const Vec& cost,
                                const std::vector<Vec>& vertices, Rng& rng,
                                const BruteOptions& options = {});

/// Fiber samples for the brute oracle: direct ball-slice sampling for
/// ellipsoids, hit-and-run for H-polytopes.
std::vector<Vec> sample_fiber(const PriorSet& prior, const QueryDataset& dataset,
                              const Vec& cost, std::size_t count, Rng& rng);

}  // namespace sdd
