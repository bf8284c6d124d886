#pragma once

// Test-only numeric oracles, kept independent of the implementation paths
// they validate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sdd/prior.hpp"
#include "sdd/rng.hpp"

namespace sdd::testing {

/// Projected-gradient minimization of delta'c over the ellipsoid fiber
/// {(c-c0)' Sigma^{-1} (c-c0) <= R^2, Q'c = s}. Whitens to a ball, projects
/// exactly onto ball-intersect-affine each step. Independent of the closed
/// form under test (no Q' Sigma Q system is formed).
inline double fi_pgd_oracle(const Vec& c0, const Mat& sigma, const Mat& Q,
                            const Vec& s, const Vec& delta, double radius = 1.0,
                            std::size_t iters = 60000) {
  const Eigen::Index d = c0.size();
  Eigen::LLT<Mat> llt(sigma);
  const Mat L = llt.matrixL();
  const Vec delta_w = L.transpose() * delta;
  const Mat Qw = L.transpose() * Q;  // d x k, constraint Qw' z = s - Q'c0
  const Vec rhs = Q.cols() > 0 ? Vec(s - Q.transpose() * c0) : Vec();

  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  if (Q.cols() > 0) cod.compute(Mat(Qw.transpose()));

  auto project = [&](const Vec& y) {
    if (Q.cols() == 0) {
      const double n = y.norm();
      return n <= radius ? y : Vec(y * (radius / n));
    }
    const Vec z0 = cod.solve(rhs);  // min-norm affine solution
    Vec n = y - Qw * (Qw.transpose() * Qw).ldlt().solve(Qw.transpose() * y - rhs);
    n -= z0;  // component in the null space of Qw'
    const double rho_sq = radius * radius - z0.squaredNorm();
    const double rho = rho_sq > 0.0 ? std::sqrt(rho_sq) : 0.0;
    const double nn = n.norm();
    if (nn > rho) n *= (rho / std::max(nn, 1e-300));
    return Vec(z0 + n);
  };

  Vec z = project(Vec::Zero(d));
  const double step = 0.5 * radius / std::max(delta_w.norm(), 1e-12);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < iters; ++k) {
    const Vec z_next = project(z - step * delta_w);
    best = std::min(best, delta_w.dot(z_next));
    const double change = (z_next - z).norm();
    z = z_next;
    if (change < 1e-14) break;
  }
  return delta.dot(c0) + best;
}

/// Vertices of the slice polytope {Gc <= h, Q'c = s} by enumerating active
/// sets; only viable at toy dimensions.
inline std::vector<Vec> slice_vertices(const Mat& G, const Vec& h, const Mat& Q,
                                       const Vec& s, double tol = 1e-8) {
  const Eigen::Index d = G.cols();
  const Eigen::Index k = Q.cols();
  const Eigen::Index need = d - k;  // active inequality rows per vertex
  std::vector<Vec> out;
  if (need < 0) return out;

  std::vector<Eigen::Index> subset(static_cast<std::size_t>(need));
  for (Eigen::Index i = 0; i < need; ++i) subset[static_cast<std::size_t>(i)] = i;
  const Eigen::Index r = G.rows();
  if (need > r) return out;
  for (;;) {
    Mat M(d, d);
    Vec rhs(d);
    for (Eigen::Index i = 0; i < k; ++i) {
      M.row(i) = Q.col(i).transpose();
      rhs[i] = s[i];
    }
    for (Eigen::Index i = 0; i < need; ++i) {
      M.row(k + i) = G.row(subset[static_cast<std::size_t>(i)]);
      rhs[k + i] = h[subset[static_cast<std::size_t>(i)]];
    }
    Eigen::FullPivLU<Mat> lu(M);
    if (lu.isInvertible()) {
      const Vec c = lu.solve(rhs);
      if (((G * c - h).array() <= tol).all()) {
        bool dup = false;
        for (const Vec& v : out) {
          if ((v - c).cwiseAbs().maxCoeff() < 1e-7) {
            dup = true;
            break;
          }
        }
        if (!dup) out.push_back(c);
      }
    }
    Eigen::Index i = need - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == r - need + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (Eigen::Index t = i + 1; t < need; ++t) {
      subset[static_cast<std::size_t>(t)] =
          subset[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return out;
}

/// Random SPD matrix with eigenvalues bounded away from zero.
inline Mat random_spd(Eigen::Index d, Rng& rng) {
  Mat A(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) A(i, j) = rng.normal();
  }
  return A * A.transpose() / static_cast<double>(d) + 0.2 * Mat::Identity(d, d);
}

}  // namespace sdd::testing
