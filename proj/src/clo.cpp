#include "sdd/clo.hpp"

#include <cmath>

namespace sdd {

LiftingMap LiftingMap::from_basis(Vec c0, Mat sigma, Mat U) {
  require(U.rows() == c0.size() && U.cols() >= 1 && U.cols() <= U.rows(),
          ErrorCode::InvalidArgument, "LiftingMap: bad basis shape");
  require((U.transpose() * U - Mat::Identity(U.cols(), U.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10,
          ErrorCode::InvalidArgument, "LiftingMap: U is not orthonormal");
  const Mat su = sigma * U;
  const Mat usu = U.transpose() * su;
  Eigen::LDLT<Mat> ldlt(usu);
  require(ldlt.info() == Eigen::Success &&
              ldlt.vectorD().minCoeff() > 1e-12 * (1.0 + usu.trace()),
          ErrorCode::Singular, "LiftingMap: U' Sigma U is not invertible");
  Mat L = su * ldlt.solve(Mat::Identity(U.cols(), U.cols()));
  return LiftingMap(std::move(c0), std::move(sigma), std::move(U), std::move(L));
}

LiftingMap LiftingMap::from_queries(const Vec& c0, const Mat& sigma,
                                    const std::vector<Vec>& queries) {
  require(!queries.empty(), ErrorCode::InvalidArgument,
          "LiftingMap: no queries");
  const Eigen::Index d = c0.size();
  Mat Q(d, static_cast<Eigen::Index>(queries.size()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    Q.col(static_cast<Eigen::Index>(i)) = queries[i];
  }
  Eigen::ColPivHouseholderQR<Mat> qr(Q);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  require(rank >= 1, ErrorCode::DegenerateRank, "LiftingMap: zero-rank queries");
  Mat thin = qr.householderQ() * Mat::Identity(d, rank);
  return from_basis(c0, sigma, std::move(thin));
}

LiftingMap LiftingMap::identity(Vec c0, Eigen::Index d) {
  return LiftingMap(std::move(c0), Mat::Identity(d, d), Mat::Identity(d, d),
                    Mat::Identity(d, d));
}

Vec LiftingMap::lift(const Vec& s) const {
  require(s.size() == L_.cols(), ErrorCode::InvalidArgument,
          "LiftingMap: coordinate dimension mismatch");
  return c0_ + L_ * s;
}

double spo_loss(const StandardFormLP& lp, const Vec& c_hat, const Vec& c) {
  const BasisSolution plug = solve_lp(lp, c_hat);
  const BasisSolution best = solve_lp(lp, c);
  return c.dot(plug.vertex) - c.dot(best.vertex);
}

double spo_plus_loss(const StandardFormLP& lp, const Vec& c_hat, const Vec& c) {
  const BasisSolution best = solve_lp(lp, c);             // x0
  const BasisSolution adv = solve_lp(lp, 2.0 * c_hat - c);  // x1
  return (c - 2.0 * c_hat).dot(adv.vertex) + 2.0 * c_hat.dot(best.vertex) -
         c.dot(best.vertex);
}

Mat spo_plus_subgradient(const StandardFormLP& lp,
                         const CompressedPredictor& predictor, const Vec& xi,
                         const Vec& c) {
  const Vec c_hat = predictor.predict(xi);
  const BasisSolution x0 = solve_lp(lp, c);
  const BasisSolution x1 = solve_lp(lp, 2.0 * c_hat - c);
  const Vec v = 2.0 * (x0.vertex - x1.vertex);
  return (predictor.lifting.L().transpose() * v) * xi.transpose();
}

CompressedPredictor train_spo_plus(const StandardFormLP& lp,
                                   const LiftingMap& lifting,
                                   const std::vector<ContextualSample>& samples,
                                   const TrainConfig& config) {
  require(!samples.empty(), ErrorCode::InvalidArgument,
          "train_spo_plus: no samples");
  const Eigen::Index p = samples.front().xi.size();
  CompressedPredictor predictor{lifting, Mat::Zero(lifting.t(), p)};
  Rng rng(config.seed);
  const std::size_t steps = config.epochs * samples.size();
  for (std::size_t k = 0; k < steps; ++k) {
    const auto& sample = samples[rng.uniform_index(samples.size())];
    const Vec c_hat = predictor.predict(sample.xi);
    const BasisSolution x0 = solve_lp(lp, sample.c);
    const BasisSolution x1 = solve_lp(lp, 2.0 * c_hat - sample.c);
    const Vec v = 2.0 * (x0.vertex - x1.vertex);
    const double eta = config.eta0 / std::sqrt(static_cast<double>(k) + 1.0);
    predictor.B -=
        eta * (lifting.L().transpose() * v) * sample.xi.transpose();
  }
  return predictor;
}

OlsModel fit_ols(const std::vector<ContextualSample>& samples, const Vec& c0) {
  require(!samples.empty(), ErrorCode::InvalidArgument, "fit_ols: no samples");
  const auto n = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index p = samples.front().xi.size();
  const Eigen::Index d = c0.size();
  require(n >= p, ErrorCode::RankDeficientDesign,
          "fit_ols: fewer samples than context dimensions");
  Mat X(n, p);
  Mat Y(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    X.row(i) = samples[static_cast<std::size_t>(i)].xi.transpose();
    Y.row(i) = (samples[static_cast<std::size_t>(i)].c - c0).transpose();
  }
  Eigen::ColPivHouseholderQR<Mat> qr(X);
  qr.setThreshold(1e-10);
  require(qr.rank() == p, ErrorCode::RankDeficientDesign,
          "fit_ols: design matrix is rank deficient");
  Mat coeff = qr.solve(Y);  // p x d
  return OlsModel{coeff.transpose(), c0};
}

namespace {

double prior_quadform(const PriorSet& prior, const Vec& c) {
  const auto& el = prior.as_ellipsoid();
  const Vec z = el.sigma_chol_l.triangularView<Eigen::Lower>().solve(c - el.c0);
  return z.squaredNorm();
}

}  // namespace

Stage1Result stage1_discover(const StandardFormLP& lp, const PriorSet& prior,
                             const OlsModel& ols,
                             const std::vector<Vec>& discovery_contexts,
                             const PointwiseOptions& options) {
  Stage1Result result;
  std::vector<Vec> pseudo_costs;
  pseudo_costs.reserve(discovery_contexts.size());
  for (const Vec& xi : discovery_contexts) {
    Vec c_hat = ols.predict(xi);
    if (!membership(prior, c_hat)) {
      ++result.projected_count;
      if (prior.is_ellipsoid()) {
        const auto& el = prior.as_ellipsoid();
        const double q = prior_quadform(prior, c_hat);
        c_hat = el.c0 + (c_hat - el.c0) * ((1.0 - 1e-12) / std::sqrt(q));
      } else {
        // binary search on the radial segment toward an interior reference
        const auto& hp = prior.as_hpolytope();
        Vec ref = Vec::Zero(c_hat.size());
        (void)hp;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (membership(prior, ref + mid * (c_hat - ref))) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        c_hat = ref + lo * (c_hat - ref);
      }
    }
    pseudo_costs.push_back(std::move(c_hat));
  }

  result.compression = run_cumulative(
      lp, prior, pseudo_costs.size(),
      [&pseudo_costs](std::size_t i) { return pseudo_costs[i]; }, options);
  // reconstruct the per-sample dimension trace from the growth record
  std::size_t dim = 0;
  result.dimension_trace.reserve(pseudo_costs.size());
  for (std::size_t added : result.compression.per_sample_added) {
    dim += added;
    result.dimension_trace.push_back(dim);
  }
  return result;
}

double omega_range(const PriorSet& prior, const std::vector<Vec>& vertices) {
  require(vertices.size() >= 1, ErrorCode::InvalidParams,
          "omega_range: empty vertex list");
  double omega = 0.0;
  if (prior.is_ellipsoid()) {
    const auto& el = prior.as_ellipsoid();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < vertices.size(); ++j) {
        const Vec u = vertices[i] - vertices[j];
        const double support =
            std::abs(el.c0.dot(u)) + (el.sigma_chol_l.transpose() * u).norm();
        omega = std::max(omega, support);
      }
    }
    return omega;
  }
  const auto& hp = prior.as_hpolytope();
  const Eigen::Index d = hp.G.cols();
  const Eigen::Index r = hp.G.rows();
  require(vertices.size() <= 200, ErrorCode::TooLarge,
          "omega_range: too many vertex pairs for the LP route");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (i == j) continue;
      const Vec u = vertices[i] - vertices[j];
      // max u'c over {Gc <= h} as a standard-form minimization
      Mat A(r, 2 * d + r);
      A.leftCols(d) = hp.G;
      A.middleCols(d, d) = -hp.G;
      A.rightCols(r) = Mat::Identity(r, r);
      Vec cost = Vec::Zero(2 * d + r);
      cost.head(d) = -u;
      cost.segment(d, d) = u;
      StandardFormLP lp(std::move(A), hp.h, /*bounded_attested=*/true);
      const BasisSolution bs = solve_lp(lp, cost);
      omega = std::max(omega, -bs.objective);
    }
  }
  return omega;
}

double spo_generalization_bound(double omega, std::size_t d_star, std::size_t p,
                                std::size_t n, std::size_t n_vertices,
                                double delta) {
  require(omega >= 0.0 && n >= 1 && n_vertices >= 1 && delta > 0.0 &&
              delta < 1.0,
          ErrorCode::InvalidParams, "spo_generalization_bound: bad params");
  const double nn = static_cast<double>(n);
  const double dim_term = static_cast<double>(d_star * p + 1);
  const double log_term =
      std::log(nn * static_cast<double>(n_vertices) *
               static_cast<double>(n_vertices));
  return 2.0 * omega * std::sqrt(2.0 * dim_term * log_term / nn) +
         omega * std::sqrt(std::log(1.0 / delta) / (2.0 * nn));
}

double stage1_representation_bound(std::size_t n_disc, std::size_t t_size,
                                   double delta, double c_marg, double radius,
                                   double alpha) {
  require(n_disc >= 1 && delta > 0.0 && delta < 1.0 && c_marg >= 0.0 &&
              radius >= 0.0 && alpha > 0.0,
          ErrorCode::InvalidParams, "stage1_representation_bound: bad params");
  const double cert = 4.0 / static_cast<double>(n_disc) *
                      (6.0 * static_cast<double>(t_size) +
                       1.0 + std::log(1.0 / delta));
  return cert + c_marg * std::pow(radius, alpha);
}

double ols_radius_bound(double sigma_noise, double kappa, std::size_t d,
                        std::size_t p, double delta_mu, std::size_t n_mu) {
  require(sigma_noise >= 0.0 && kappa > 0.0 && d >= 1 && n_mu >= 1 &&
              delta_mu > 0.0 && delta_mu < 1.0,
          ErrorCode::InvalidParams, "ols_radius_bound: bad params");
  const double c_reg = 4.0 * std::sqrt(2.0);
  const double inner = static_cast<double>(d) *
                       (static_cast<double>(p) +
                        std::log(4.0 * static_cast<double>(d) / delta_mu));
  return c_reg * (sigma_noise / std::sqrt(kappa)) *
         std::sqrt(inner / static_cast<double>(n_mu));
}

}  // namespace sdd
