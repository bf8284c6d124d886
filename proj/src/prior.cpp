#include "sdd/prior.hpp"

#include <cmath>

namespace sdd {

PriorSet PriorSet::hpolytope(Mat G, Vec h) {
  require(G.rows() == h.size() && G.rows() > 0, ErrorCode::BadParams,
          "PriorSet: G/h size mismatch");
  require(G.allFinite() && h.allFinite(), ErrorCode::BadParams,
          "PriorSet: nonfinite polytope data");
  return PriorSet(HPolytope{std::move(G), std::move(h)});
}

PriorSet PriorSet::ellipsoid(Vec c0, Mat sigma) {
  require(sigma.rows() == sigma.cols() && sigma.rows() == c0.size(),
          ErrorCode::BadParams, "PriorSet: sigma/c0 size mismatch");
  require(sigma.isApprox(sigma.transpose(), 1e-10), ErrorCode::BadParams,
          "PriorSet: sigma is not symmetric");
  Eigen::LLT<Mat> llt(sigma);
  require(llt.info() == Eigen::Success, ErrorCode::BadParams,
          "PriorSet: sigma is not positive definite");
  Mat l = llt.matrixL();
  return PriorSet(Ellipsoid{std::move(c0), std::move(sigma), std::move(l)});
}

Eigen::Index PriorSet::dim() const {
  if (is_ellipsoid()) return as_ellipsoid().c0.size();
  return as_hpolytope().G.cols();
}

bool membership(const PriorSet& prior, const Vec& c, double tol) {
  require(c.size() == prior.dim(), ErrorCode::InvalidArgument,
          "membership: dimension mismatch");
  if (prior.is_hpolytope()) {
    const auto& hp = prior.as_hpolytope();
    const Vec slack = hp.h - hp.G * c;
    const double scale = 1.0 + hp.h.cwiseAbs().maxCoeff();
    return slack.minCoeff() >= -tol * scale;
  }
  const auto& el = prior.as_ellipsoid();
  // (c-c0)' Sigma^{-1} (c-c0) via the cached Cholesky factor
  const Vec z = el.sigma_chol_l.triangularView<Eigen::Lower>().solve(c - el.c0);
  return z.squaredNorm() <= 1.0 + tol;
}

QueryDataset::QueryDataset(std::vector<Vec> queries,
                           std::vector<double> measurements) {
  require(queries.size() == measurements.size(), ErrorCode::InvalidArgument,
          "QueryDataset: queries/measurements size mismatch");
  for (std::size_t i = 0; i < queries.size(); ++i) {
    append(queries[i], measurements[i]);
  }
}

Mat QueryDataset::query_matrix(Eigen::Index d) const {
  Mat Q(d, static_cast<Eigen::Index>(queries_.size()));
  for (std::size_t i = 0; i < queries_.size(); ++i) {
    require(queries_[i].size() == d, ErrorCode::InvalidArgument,
            "QueryDataset: query dimension mismatch");
    Q.col(static_cast<Eigen::Index>(i)) = queries_[i];
  }
  return Q;
}

Vec QueryDataset::measurement_vector() const {
  Vec s(static_cast<Eigen::Index>(measurements_.size()));
  for (std::size_t i = 0; i < measurements_.size(); ++i) {
    s[static_cast<Eigen::Index>(i)] = measurements_[i];
  }
  return s;
}

double QueryDataset::span_residual(const Vec& q) const {
  if (queries_.empty()) return q.norm();
  return (q - ortho_ * (ortho_.transpose() * q)).norm();
}

void QueryDataset::append(const Vec& q, double measurement) {
  require(q.allFinite() && std::isfinite(measurement),
          ErrorCode::InvalidArgument, "QueryDataset: nonfinite entry");
  Vec r = q;
  if (!queries_.empty()) {
    require(q.size() == queries_.front().size(), ErrorCode::InvalidArgument,
            "QueryDataset: query dimension mismatch");
    r -= ortho_ * (ortho_.transpose() * q);
    // second orthogonalization pass for numerical hygiene
    r -= ortho_ * (ortho_.transpose() * r);
  }
  const double norm = r.norm();
  require(norm > 1e-8 * std::max(1.0, q.norm()), ErrorCode::DegenerateRank,
          "QueryDataset: query lies in the span of previous queries");
  ortho_.conservativeResize(q.size(), ortho_.cols() + 1);
  ortho_.col(ortho_.cols() - 1) = r / norm;
  queries_.push_back(q);
  measurements_.push_back(measurement);
}

bool QueryDataset::same_queries(const QueryDataset& other) const {
  if (queries_.size() != other.queries_.size()) return false;
  for (std::size_t i = 0; i < queries_.size(); ++i) {
    if (queries_[i].size() != other.queries_[i].size()) return false;
    if (queries_[i] != other.queries_[i]) return false;
  }
  return true;
}

namespace {

// min delta'c over {Gc <= h, Q'c = s} through the standard-form simplex:
// c = u - v with u, v >= 0 and one slack per polytope row.
FiResult hpolytope_fi(const PriorSet::HPolytope& hp, const Mat& Q, const Vec& s,
                      const Vec& delta) {
  const Eigen::Index d = hp.G.cols();
  const Eigen::Index r = hp.G.rows();
  const Eigen::Index k = Q.cols();

  Mat A = Mat::Zero(r + k, 2 * d + r);
  A.block(0, 0, r, d) = hp.G;
  A.block(0, d, r, d) = -hp.G;
  A.block(0, 2 * d, r, r) = Mat::Identity(r, r);
  A.block(r, 0, k, d) = Q.transpose();
  A.block(r, d, k, d) = -Q.transpose();
  Vec b(r + k);
  b.head(r) = hp.h;
  b.tail(k) = s;

  Vec cost = Vec::Zero(2 * d + r);
  cost.head(d) = delta;
  cost.segment(d, d) = -delta;

  StandardFormLP lp(std::move(A), std::move(b), /*bounded_attested=*/true);
  BasisSolution bs;
  try {
    bs = solve_lp(lp, cost);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) {
      fail(ErrorCode::EmptyFiber, "face_intersection: fiber is empty");
    }
    throw;
  }
  FiResult out;
  out.min_value = bs.objective;
  out.minimizer = bs.vertex.head(d) - bs.vertex.segment(d, d);
  return out;
}

}  // namespace

FiResult ellipsoid_fi_closed_form(const Vec& c0, const Mat& sigma, const Mat& Q,
                                  const Vec& s, const Vec& delta,
                                  double radius) {
  const Eigen::Index k = Q.cols();
  require(delta.allFinite(), ErrorCode::InvalidDelta, "FI: nonfinite delta");

  Vec c_perp = c0;
  Vec m_delta;        // M_perp * delta
  double quad = 0.0;  // (c_perp - c0)' Sigma^{-1} (c_perp - c0)
  if (k == 0) {
    m_delta = sigma * delta;
  } else {
    const Mat sq = sigma * Q;          // d x k
    const Mat qsq = Q.transpose() * sq;  // k x k
    Eigen::LDLT<Mat> ldlt(qsq);
    require(ldlt.info() == Eigen::Success &&
                ldlt.vectorD().minCoeff() > 1e-12 * (1.0 + qsq.trace()),
            ErrorCode::DegenerateRank,
            "FI: Q' Sigma Q is singular; queries are not independent");
    const Vec rhs = s - Q.transpose() * c0;
    const Vec y = ldlt.solve(rhs);
    c_perp += sq * y;
    quad = rhs.dot(y);
    m_delta = sigma * delta - sq * ldlt.solve(sq.transpose() * delta);
  }

  double rho_sq = radius * radius - quad;
  const double tol_rho = 1e-9 * (1.0 + std::abs(quad));
  if (rho_sq < 0.0) {
    require(rho_sq >= -tol_rho, ErrorCode::OutsideFiber,
            "FI: measurements are inconsistent with the ellipsoid");
    rho_sq = 0.0;  // roundoff; the generating cost guarantees nonemptiness
  }
  const double rho = std::sqrt(rho_sq);

  const double dmd = delta.dot(m_delta);
  FiResult out;
  if (dmd <= 1e-13 * (1.0 + std::abs(delta.dot(sigma * delta)))) {
    // delta'c is constant over the fiber
    out.min_value = delta.dot(c_perp);
    out.minimizer = c_perp;
    return out;
  }
  const double root = std::sqrt(dmd);
  out.min_value = delta.dot(c_perp) - rho * root;
  out.minimizer = c_perp - (rho / root) * m_delta;
  return out;
}

FiResult face_intersection(const Fiber& fiber, const Vec& delta) {
  require(fiber.prior != nullptr && fiber.dataset != nullptr,
          ErrorCode::InvalidArgument, "face_intersection: null fiber");
  require(delta.size() == fiber.prior->dim() && delta.allFinite(),
          ErrorCode::InvalidDelta, "face_intersection: bad delta");
  const Eigen::Index d = fiber.prior->dim();
  const Mat Q = fiber.dataset->query_matrix(d);
  const Vec s = fiber.dataset->measurement_vector();
  if (fiber.prior->is_ellipsoid()) {
    const auto& el = fiber.prior->as_ellipsoid();
    return ellipsoid_fi_closed_form(el.c0, el.sigma, Q, s, delta);
  }
  return hpolytope_fi(fiber.prior->as_hpolytope(), Q, s, delta);
}

Vec fiber_center(const Fiber& fiber) {
  require(fiber.prior != nullptr && fiber.dataset != nullptr,
          ErrorCode::InvalidArgument, "fiber_center: null fiber");
  const Eigen::Index d = fiber.prior->dim();
  if (fiber.prior->is_ellipsoid()) {
    const auto& el = fiber.prior->as_ellipsoid();
    const Mat Q = fiber.dataset->query_matrix(d);
    const Vec s = fiber.dataset->measurement_vector();
    FiResult r = ellipsoid_fi_closed_form(el.c0, el.sigma, Q, s, Vec::Zero(d));
    return r.minimizer;  // c_perp: delta = 0 takes the constant branch
  }
  FiResult r = face_intersection(fiber, Vec::Zero(d));
  return r.minimizer;
}

}  // namespace sdd
