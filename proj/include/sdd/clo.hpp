#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdd/cumulative.hpp"
#include "sdd/lp.hpp"
#include "sdd/prior.hpp"
#include "sdd/rng.hpp"

namespace sdd {

/// Minimum-Mahalanobis-norm completion of subspace coordinates into full
/// cost vectors: lift(s) = c0 + Sigma U (U' Sigma U)^{-1} s.
class LiftingMap {
 public:
  static LiftingMap from_basis(Vec c0, Mat sigma, Mat U);
  /// Orthonormalizes the queries first (QR), then builds the map.
  static LiftingMap from_queries(const Vec& c0, const Mat& sigma,
                                 const std::vector<Vec>& queries);
  static LiftingMap identity(Vec c0, Eigen::Index d);

  Vec lift(const Vec& s) const;
  Vec compress(const Vec& c) const { return U_.transpose() * (c - c0_); }
  Vec compress_lift(const Vec& c) const { return lift(compress(c)); }

  const Vec& c0() const { return c0_; }
  const Mat& sigma() const { return sigma_; }
  const Mat& U() const { return U_; }
  const Mat& L() const { return L_; }
  Eigen::Index t() const { return U_.cols(); }
  Eigen::Index d() const { return U_.rows(); }

 private:
  LiftingMap(Vec c0, Mat sigma, Mat U, Mat L)
      : c0_(std::move(c0)), sigma_(std::move(sigma)), U_(std::move(U)),
        L_(std::move(L)) {}
  Vec c0_;
  Mat sigma_;
  Mat U_;  // d x t orthonormal
  Mat L_;  // d x t lifting matrix
};

struct ContextualSample {
  Vec xi;  // ||xi|| <= 1 by generator convention
  Vec c;
};

/// Linear coordinate model in the lifted subspace: predict(xi) = c0 + L B xi.
struct CompressedPredictor {
  LiftingMap lifting;
  Mat B;  // t x p
  Vec predict(const Vec& xi) const { return lifting.lift(B * xi); }
};

struct OlsModel {
  Mat A_hat;  // d x p
  Vec c0;
  Vec predict(const Vec& xi) const { return c0 + A_hat * xi; }
};

double spo_loss(const StandardFormLP& lp, const Vec& c_hat, const Vec& c);
double spo_plus_loss(const StandardFormLP& lp, const Vec& c_hat, const Vec& c);

/// Chain-rule SPO+ subgradient for the coordinate matrix B:
/// (L' v) xi' with v = 2(x*(c) - x*(2c_hat - c)). Exactly two LP calls.
Mat spo_plus_subgradient(const StandardFormLP& lp,
                         const CompressedPredictor& predictor, const Vec& xi,
                         const Vec& c);

struct TrainConfig {
  double eta0 = 0.01;  // step k uses eta0 / sqrt(k+1)
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
};

/// Stochastic subgradient descent on the SPO+ surrogate over uniformly
/// resampled training pairs, deterministic given the seed.
CompressedPredictor train_spo_plus(const StandardFormLP& lp,
                                   const LiftingMap& lifting,
                                   const std::vector<ContextualSample>& samples,
                                   const TrainConfig& config);

/// Multi-response OLS of the centered costs c - c0 on the contexts.
OlsModel fit_ols(const std::vector<ContextualSample>& samples, const Vec& c0);

struct Stage1Result {
  CompressionResult compression;
  /// Pseudo-costs that left the prior and were radially shrunk back.
  std::size_t projected_count = 0;
  /// dim span of the learned dataset after each discovery sample.
  std::vector<std::size_t> dimension_trace;
};

/// Stage I over pseudo-costs mu_hat(xi_j): radially projects predictions
/// into the prior when needed and feeds them to the cumulative learner.
Stage1Result stage1_discover(const StandardFormLP& lp, const PriorSet& prior,
                             const OlsModel& ols,
                             const std::vector<Vec>& discovery_contexts,
                             const PointwiseOptions& options = {});

/// SPO range constant: sup_{c in C} (max_x c'x - min_x c'x) over the vertex
/// list; exact support-function evaluation for ellipsoids, one LP per vertex
/// pair for H-polytopes.
double omega_range(const PriorSet& prior, const std::vector<Vec>& vertices);

/// Stage II uniform generalization bound
/// 2 w sqrt(2 (d* p + 1) log(n |X|^2) / n) + w sqrt(log(1/delta) / (2n)).
double spo_generalization_bound(double omega, std::size_t d_star, std::size_t p,
                                std::size_t n, std::size_t n_vertices,
                                double delta);

/// Stage I representation bound (4/n_disc)(6|T| + log(e/delta)) + C_marg r^a.
double stage1_representation_bound(std::size_t n_disc, std::size_t t_size,
                                   double delta, double c_marg, double radius,
                                   double alpha);

/// Bounded-design OLS radius C_reg (sigma/sqrt(kappa))
/// sqrt(d (p + log(4d/delta_mu)) / n_mu) with C_reg = 4 sqrt 2.
double ols_radius_bound(double sigma_noise, double kappa, std::size_t d,
                        std::size_t p, double delta_mu, std::size_t n_mu);

}  // namespace sdd
