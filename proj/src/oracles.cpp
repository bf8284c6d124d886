#include "sdd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sdd/pointwise.hpp"

namespace sdd {

namespace {

std::uint64_t binomial_capped(Eigen::Index n, Eigen::Index k,
                              std::uint64_t cap) {
  std::uint64_t result = 1;
  for (Eigen::Index i = 0; i < k; ++i) {
    result = result * static_cast<std::uint64_t>(n - i) /
             static_cast<std::uint64_t>(i + 1);
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace

std::vector<Vec> enumerate_vertices(const StandardFormLP& lp,
                                    std::size_t basis_cap) {
  const Eigen::Index m = lp.rows();
  const Eigen::Index d = lp.cols();
  require(binomial_capped(d, m, basis_cap) <= basis_cap, ErrorCode::TooLarge,
          "enumerate_vertices: too many candidate bases");

  std::vector<Vec> out;
  std::set<std::vector<long long>> seen;
  const double quantum = 1e7;

  std::vector<Eigen::Index> subset(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) subset[static_cast<std::size_t>(i)] = i;
  Mat AB(m, m);
  for (;;) {
    for (Eigen::Index i = 0; i < m; ++i) {
      AB.col(i) = lp.A().col(subset[static_cast<std::size_t>(i)]);
    }
    Eigen::PartialPivLU<Mat> lu(AB);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() > 1e-10) {
      const Vec xb = lu.solve(lp.b());
      if (xb.minCoeff() >= -lp.tol_feas() * 10.0) {
        Vec v = Vec::Zero(d);
        for (Eigen::Index i = 0; i < m; ++i) {
          v[subset[static_cast<std::size_t>(i)]] = std::max(xb[i], 0.0);
        }
        std::vector<long long> key(static_cast<std::size_t>(d));
        for (Eigen::Index i = 0; i < d; ++i) {
          key[static_cast<std::size_t>(i)] = llround(v[i] * quantum);
        }
        if (seen.insert(std::move(key)).second) out.push_back(std::move(v));
      }
    }
    // next m-subset of {0..d-1} in lexicographic order
    Eigen::Index i = m - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == d - m + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (Eigen::Index t = i + 1; t < m; ++t) {
      subset[static_cast<std::size_t>(t)] = subset[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return out;
}

ConeDistanceResult min_norm_to_halfspaces(const std::vector<Vec>& normals,
                                          const std::vector<double>& offsets,
                                          const DykstraOptions& options) {
  require(normals.size() == offsets.size(), ErrorCode::InvalidArgument,
          "min_norm_to_halfspaces: size mismatch");
  ConeDistanceResult result;
  if (normals.empty()) {
    result.point = Vec();
    return result;
  }
  const Eigen::Index dim = normals.front().size();
  result.point = Vec::Zero(dim);

  auto violated = [&](const Vec& z, double slack) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (normals[i].dot(z) < offsets[i] - slack) out.push_back(i);
    }
    return out;
  };

  // Active-set outer loop: Dykstra over the currently violated halfspaces,
  // then re-check the full list and grow the set.
  std::set<std::size_t> active;
  for (std::size_t i : violated(result.point, 0.0)) active.insert(i);
  if (active.empty()) return result;  // the origin is feasible

  for (int round = 0; round < 64; ++round) {
    std::vector<std::size_t> idx(active.begin(), active.end());
    std::vector<Vec> incr(idx.size(), Vec::Zero(dim));
    Vec z = Vec::Zero(dim);
    bool converged = false;
    for (std::size_t cycle = 0; cycle * idx.size() < options.iteration_cap;
         ++cycle) {
      double change = 0.0;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        const Vec& a = normals[idx[t]];
        const double b = offsets[idx[t]];
        const Vec y = z + incr[t];
        const double viol = b - a.dot(y);
        Vec z_new = y;
        if (viol > 0.0) z_new += a * (viol / a.squaredNorm());
        incr[t] = y - z_new;
        change = std::max(change, (z_new - z).cwiseAbs().maxCoeff());
        z = z_new;
      }
      if (change < options.tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      result.converged = false;
      result.point = z;
      result.distance = z.norm();
      return result;
    }
    const auto outstanding = violated(z, 1e-9 * (1.0 + z.norm()));
    if (outstanding.empty()) {
      result.point = z;
      result.distance = z.norm();
      return result;
    }
    for (std::size_t i : outstanding) active.insert(i);
  }
  result.converged = false;
  result.distance = result.point.norm();
  return result;
}

std::vector<Vec> reachable_optima(const std::vector<Vec>& vertices,
                                  const PriorSet& prior,
                                  const DykstraOptions& options) {
  require(!vertices.empty(), ErrorCode::InvalidArgument,
          "reachable_optima: empty vertex list");
  std::vector<Vec> out;

  for (std::size_t vi = 0; vi < vertices.size(); ++vi) {
    const Vec& v = vertices[vi];
    std::vector<Vec> diffs;
    diffs.reserve(vertices.size() - 1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i == vi) continue;
      Vec u = vertices[i] - v;
      if (u.cwiseAbs().maxCoeff() > 1e-9) diffs.push_back(std::move(u));
    }
    if (diffs.empty()) {
      out.push_back(v);
      continue;
    }

    if (prior.is_hpolytope()) {
      const auto& hp = prior.as_hpolytope();
      const Eigen::Index d = hp.G.cols();
      const Eigen::Index r = hp.G.rows();
      const auto kc = static_cast<Eigen::Index>(diffs.size());
      // feasibility of {Gc <= h, -u_i'c <= 0} via phase 1
      Mat M(r + kc, d);
      Vec m0(r + kc);
      M.topRows(r) = hp.G;
      m0.head(r) = hp.h;
      for (Eigen::Index i = 0; i < kc; ++i) {
        M.row(r + i) = -diffs[static_cast<std::size_t>(i)].transpose();
        m0[r + i] = 0.0;
      }
      Mat A(r + kc, 2 * d + r + kc);
      A.leftCols(d) = M;
      A.middleCols(d, d) = -M;
      A.rightCols(r + kc) = Mat::Identity(r + kc, r + kc);
      StandardFormLP feas(std::move(A), std::move(m0),
                          /*bounded_attested=*/true);
      try {
        solve_lp(feas, Vec::Zero(2 * d + r + kc));
        out.push_back(v);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Infeasible) throw;
      }
      continue;
    }

    const auto& el = prior.as_ellipsoid();
    // whitened coordinates: c = c0 + L z, constraint (L'u_i)'z >= -c0'u_i
    std::vector<Vec> normals;
    std::vector<double> offsets;
    normals.reserve(diffs.size());
    bool instant_reject = false;
    bool all_satisfied_at_center = true;
    for (const Vec& u : diffs) {
      Vec a = el.sigma_chol_l.transpose() * u;
      const double b = -el.c0.dot(u);
      if (b > 0.0) {
        all_satisfied_at_center = false;
        // distance to a single halfspace lower-bounds the cone distance
        if (b / a.norm() > 1.0 + 1e-6) {
          instant_reject = true;
          break;
        }
      }
      normals.push_back(std::move(a));
      offsets.push_back(b);
    }
    if (instant_reject) continue;
    if (all_satisfied_at_center) {
      out.push_back(v);
      continue;
    }
    const ConeDistanceResult res =
        min_norm_to_halfspaces(normals, offsets, options);
    require(res.converged, ErrorCode::NonConvergence,
            "reachable_optima: cone distance did not stabilize");
    if (res.distance <= 1.0 + 1e-6) out.push_back(v);
  }
  return out;
}

Eigen::Index dimension_dir(const std::vector<Vec>& reachable) {
  require(!reachable.empty(), ErrorCode::InvalidArgument,
          "dimension_dir: empty list");
  if (reachable.size() == 1) return 0;
  const Eigen::Index d = reachable.front().size();
  Mat diffs(d, static_cast<Eigen::Index>(reachable.size() - 1));
  for (std::size_t i = 1; i < reachable.size(); ++i) {
    diffs.col(static_cast<Eigen::Index>(i - 1)) = reachable[i] - reachable[0];
  }
  Eigen::JacobiSVD<Mat> svd(diffs);
  const Vec sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  const double thresh = 1e-8 * sv[0];
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > thresh) ++rank;
  }
  return rank;
}

std::vector<Vec> sample_fiber(const PriorSet& prior, const QueryDataset& dataset,
                              const Vec& cost, std::size_t count, Rng& rng) {
  const Eigen::Index d = prior.dim();
  QueryDataset realized;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    realized.append(dataset.query(i), dataset.query(i).dot(cost));
  }

  std::vector<Vec> out;
  out.reserve(count + 1);
  out.push_back(cost);

  if (prior.is_ellipsoid()) {
    const auto& el = prior.as_ellipsoid();
    const Mat Q = realized.query_matrix(d);
    const Vec s = realized.measurement_vector();
    // whitened: ||z|| <= 1, (L'Q)'z = s - Q'c0
    const Mat qt = (el.sigma_chol_l.transpose() * Q).transpose();  // k x d
    Vec z0 = Vec::Zero(d);
    Mat null_basis;
    if (Q.cols() > 0) {
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(qt);
      z0 = cod.solve(s - Q.transpose() * el.c0);
      // null space of qt: last d-k right singular vectors
      Eigen::JacobiSVD<Mat> svd(qt, Eigen::ComputeFullV);
      const Eigen::Index rank = Q.cols();
      null_basis = svd.matrixV().rightCols(d - rank);
    } else {
      null_basis = Mat::Identity(d, d);
    }
    double rho_sq = 1.0 - z0.squaredNorm();
    if (rho_sq < 0.0) rho_sq = 0.0;
    const double rho = std::sqrt(rho_sq);
    const Eigen::Index free_dim = null_basis.cols();
    for (std::size_t i = 0; i < count; ++i) {
      Vec z = z0;
      if (free_dim > 0 && rho > 0.0) {
        z += null_basis * (rho * rng.ball(free_dim));
      }
      out.push_back(el.c0 + el.sigma_chol_l * z);
    }
    return out;
  }

  // H-polytope: hit-and-run in the affine slice {Q'c = s}.
  const auto& hp = prior.as_hpolytope();
  const Mat Q = realized.query_matrix(d);
  Mat null_basis;
  if (Q.cols() > 0) {
    Eigen::JacobiSVD<Mat> svd(Mat(Q.transpose()), Eigen::ComputeFullV);
    null_basis = svd.matrixV().rightCols(d - Q.cols());
  } else {
    null_basis = Mat::Identity(d, d);
  }
  Vec current = cost;
  const std::size_t burn = 16;
  for (std::size_t i = 0; i < count + burn; ++i) {
    const Vec dir = null_basis * rng.sphere(null_basis.cols());
    // chord of {Gc <= h} through `current` along dir
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const Vec gd = hp.G * dir;
    const Vec slack = hp.h - hp.G * current;
    for (Eigen::Index r = 0; r < gd.size(); ++r) {
      if (gd[r] > 1e-13) {
        hi = std::min(hi, slack[r] / gd[r]);
      } else if (gd[r] < -1e-13) {
        lo = std::max(lo, slack[r] / gd[r]);
      }
    }
    if (!(std::isfinite(lo) && std::isfinite(hi)) || hi - lo < 1e-12) continue;
    current += dir * rng.uniform(lo, hi);
    if (i >= burn) out.push_back(current);
  }
  return out;
}

bool pointwise_sufficient_brute(const StandardFormLP& lp, const PriorSet& prior,
                                const QueryDataset& dataset, const Vec& cost,
                                const std::vector<Vec>& vertices, Rng& rng,
                                const BruteOptions& options) {
  require(!vertices.empty(), ErrorCode::InvalidArgument,
          "pointwise_sufficient_brute: empty vertex list");

  std::vector<Vec> probes =
      sample_fiber(prior, dataset, cost, options.fiber_samples, rng);

  // FI witnesses at the realized optimal basis are adversarial fiber points.
  {
    QueryDataset realized;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      realized.append(dataset.query(i), dataset.query(i).dot(cost));
    }
    const BasisSolution bs = solve_lp(lp, cost);
    Fiber fiber{&prior, &realized};
    for (const EdgeDirection& e : edge_directions(lp, bs)) {
      const FiResult fi = face_intersection(fiber, e.delta);
      if (fi.minimizer.size() == cost.size()) probes.push_back(fi.minimizer);
    }
  }

  std::vector<char> candidate(vertices.size(), 1);
  for (const Vec& probe : probes) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> values(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      values[i] = probe.dot(vertices[i]);
      best = std::min(best, values[i]);
    }
    const double tol = options.objective_tol * (1.0 + std::abs(best));
    bool any = false;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!candidate[i]) continue;
      if (values[i] > best + tol) {
        candidate[i] = 0;
      } else {
        any = true;
      }
    }
    if (!any) return false;  // sampled counterexample
  }
  return true;
}

}  // namespace sdd
