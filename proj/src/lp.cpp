#include "sdd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdd {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::EmptyFiber: return "EmptyFiber";
    case ErrorCode::OutsideFiber: return "OutsideFiber";
    case ErrorCode::DegenerateRank: return "DegenerateRank";
    case ErrorCode::FiberInconsistent: return "FiberInconsistent";
    case ErrorCode::NoProgress: return "NoProgress";
    case ErrorCode::NoViolatedFacet: return "NoViolatedFacet";
    case ErrorCode::RankDeficientDesign: return "RankDeficientDesign";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadCorridor: return "BadCorridor";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

StandardFormLP::StandardFormLP(Mat A, Vec b, bool bounded_attested,
                               bool nondegenerate_hint, double tol_feas,
                               double tol_cost)
    : A_(std::move(A)),
      b_(std::move(b)),
      bounded_attested_(bounded_attested),
      nondegenerate_hint_(nondegenerate_hint),
      tol_feas_(tol_feas),
      tol_cost_(tol_cost) {
  require(A_.rows() > 0 && A_.cols() >= A_.rows(), ErrorCode::BadParams,
          "StandardFormLP: need 0 < m <= d");
  require(b_.size() == A_.rows(), ErrorCode::BadParams,
          "StandardFormLP: b has wrong length");
  require(A_.allFinite() && b_.allFinite(), ErrorCode::BadParams,
          "StandardFormLP: nonfinite data");
  Eigen::ColPivHouseholderQR<Mat> qr(A_.transpose());
  qr.setThreshold(1e-10);
  require(qr.rank() == A_.rows(), ErrorCode::BadParams,
          "StandardFormLP: A is not full row rank");
}

namespace {

// Mutable simplex state: an explicit basis refactored on every pivot.
// Instances in this codebase are small (d <= ~100), so dense LU per pivot is
// simpler and plenty fast.
struct SimplexState {
  const Mat& A;
  const Vec& b;
  std::vector<Eigen::Index> basis;     // position -> column index
  std::vector<char> in_basis;          // column index -> flag
  Eigen::PartialPivLU<Mat> lu;
  Vec x_basic;

  SimplexState(const Mat& A_in, const Vec& b_in,
               std::vector<Eigen::Index> basis_in)
      : A(A_in), b(b_in), basis(std::move(basis_in)),
        in_basis(static_cast<std::size_t>(A_in.cols()), 0) {
    for (Eigen::Index j : basis) in_basis[static_cast<std::size_t>(j)] = 1;
    refactor();
  }

  void refactor() {
    const Eigen::Index m = A.rows();
    Mat AB(m, m);
    for (Eigen::Index i = 0; i < m; ++i) AB.col(i) = A.col(basis[i]);
    lu.compute(AB);
    const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(pivot_min > 1e-13)) {
      fail(ErrorCode::Singular, "simplex: basis matrix is singular");
    }
    x_basic = lu.solve(b);
  }

  void pivot(Eigen::Index row, Eigen::Index entering) {
    in_basis[static_cast<std::size_t>(basis[row])] = 0;
    basis[row] = entering;
    in_basis[static_cast<std::size_t>(entering)] = 1;
    refactor();
  }
};

// One pass of Bland's rule over the given cost vector. `allowed` restricts
// the entering candidates (used to keep artificials out during phase 2).
// Returns true on optimality, throws Unbounded if an improving ray exists.
bool bland_iterate(SimplexState& st, const Vec& cost, double tol_cost,
                   double tol_pivot, const std::vector<char>* allowed) {
  const Eigen::Index m = st.A.rows();
  const Eigen::Index d = st.A.cols();

  Vec c_basic(m);
  for (Eigen::Index i = 0; i < m; ++i) c_basic[i] = cost[st.basis[i]];
  const Vec y = st.lu.transpose().solve(c_basic);

  Eigen::Index entering = -1;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (st.in_basis[static_cast<std::size_t>(j)]) continue;
    if (allowed && !(*allowed)[static_cast<std::size_t>(j)]) continue;
    const double reduced = cost[j] - y.dot(st.A.col(j));
    if (reduced < -tol_cost) {
      entering = j;
      break;  // Bland: lowest index wins
    }
  }
  if (entering < 0) return true;

  const Vec dir = st.lu.solve(st.A.col(entering));
  Eigen::Index leave_row = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  Eigen::Index best_var = -1;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (dir[i] <= tol_pivot) continue;
    const double ratio = std::max(st.x_basic[i], 0.0) / dir[i];
    if (ratio < best_ratio - 1e-12 ||
        (ratio <= best_ratio + 1e-12 &&
         (best_var < 0 || st.basis[i] < best_var))) {
      best_ratio = ratio;
      leave_row = i;
      best_var = st.basis[i];
    }
  }
  if (leave_row < 0) {
    fail(ErrorCode::Unbounded,
         "simplex: improving ray found; the boundedness invariant is violated");
  }
  st.pivot(leave_row, entering);
  return false;
}

BasisSolution finish(const StandardFormLP& lp, SimplexState& st, const Vec& c) {
  const Eigen::Index m = lp.rows();
  const Eigen::Index d = lp.cols();

  BasisSolution out;
  out.basis.assign(st.basis.begin(), st.basis.end());
  std::sort(out.basis.begin(), out.basis.end());
  out.nonbasis.reserve(static_cast<std::size_t>(d - m));
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!st.in_basis[static_cast<std::size_t>(j)]) out.nonbasis.push_back(j);
  }

  // Recompute x_B against the sorted basis so the output is canonical.
  Mat AB(m, m);
  for (Eigen::Index i = 0; i < m; ++i) AB.col(i) = lp.A().col(out.basis[i]);
  Eigen::PartialPivLU<Mat> lu(AB);
  const Vec xb = lu.solve(lp.b());

  out.vertex = Vec::Zero(d);
  for (Eigen::Index i = 0; i < m; ++i) out.vertex[out.basis[i]] = xb[i];
  out.objective = c.dot(out.vertex);

  const double feas_scale = 1.0 + lp.b().cwiseAbs().maxCoeff();
  require(out.vertex.minCoeff() >= -lp.tol_feas() * feas_scale,
          ErrorCode::Internal, "simplex: vertex violates nonnegativity");
  require((lp.A() * out.vertex - lp.b()).cwiseAbs().maxCoeff() <=
              lp.tol_feas() * feas_scale * 10.0,
          ErrorCode::Internal, "simplex: vertex violates Ax = b");
  return out;
}

}  // namespace

BasisSolution solve_lp(const StandardFormLP& lp, const Vec& c) {
  require(c.size() == lp.cols() && c.allFinite(), ErrorCode::InvalidArgument,
          "solve_lp: bad cost vector");
  const Eigen::Index m = lp.rows();
  const Eigen::Index d = lp.cols();
  const double tol_pivot = 1e-11;

  // Phase 1 over [A | I] with row signs flipped so b >= 0.
  Mat A1(m, d + m);
  Vec b1 = lp.b();
  A1.leftCols(d) = lp.A();
  A1.rightCols(m).setZero();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b1[i] < 0.0) {
      b1[i] = -b1[i];
      A1.row(i).head(d) = -lp.A().row(i);
    }
    A1(i, d + i) = 1.0;
  }
  Vec c1 = Vec::Zero(d + m);
  c1.tail(m).setOnes();

  std::vector<Eigen::Index> init(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) init[static_cast<std::size_t>(i)] = d + i;
  SimplexState st(A1, b1, std::move(init));

  const std::size_t pivot_cap = 50000 + 50 * static_cast<std::size_t>(d + m);
  std::size_t pivots = 0;
  while (!bland_iterate(st, c1, lp.tol_cost(), tol_pivot, nullptr)) {
    if (++pivots > pivot_cap) {
      fail(ErrorCode::Internal, "simplex: phase 1 exceeded pivot cap");
    }
  }
  double phase1_obj = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (st.basis[i] >= d) phase1_obj += std::max(st.x_basic[i], 0.0);
  }
  const double feas_scale = 1.0 + lp.b().cwiseAbs().maxCoeff();
  if (phase1_obj > 1e-8 * feas_scale) {
    fail(ErrorCode::Infeasible, "solve_lp: phase 1 optimum is positive");
  }

  // Drive any artificials still in the basis out at zero level. Full row rank
  // of A guarantees a usable pivot column exists.
  for (Eigen::Index row = 0; row < m; ++row) {
    if (st.basis[row] < d) continue;
    Eigen::Index replacement = -1;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (st.in_basis[static_cast<std::size_t>(j)]) continue;
      const Vec dir = st.lu.solve(A1.col(j));
      if (std::abs(dir[row]) > 1e-9) {
        replacement = j;
        break;
      }
    }
    require(replacement >= 0, ErrorCode::Singular,
            "solve_lp: could not remove artificial from basis");
    st.pivot(row, replacement);
  }

  // Phase 2 on the original columns only.
  Vec c2 = Vec::Zero(d + m);
  c2.head(d) = c;
  std::vector<char> allowed(static_cast<std::size_t>(d + m), 0);
  for (Eigen::Index j = 0; j < d; ++j) allowed[static_cast<std::size_t>(j)] = 1;
  pivots = 0;
  while (!bland_iterate(st, c2, lp.tol_cost(), tol_pivot, &allowed)) {
    if (++pivots > pivot_cap) {
      fail(ErrorCode::Internal, "simplex: phase 2 exceeded pivot cap");
    }
  }
  return finish(lp, st, c);
}

std::vector<EdgeDirection> edge_directions(const StandardFormLP& lp,
                                           const BasisSolution& bs) {
  const Eigen::Index m = lp.rows();
  const Eigen::Index d = lp.cols();
  require(static_cast<Eigen::Index>(bs.basis.size()) == m,
          ErrorCode::InvalidArgument, "edge_directions: wrong basis size");

  Mat AB(m, m);
  for (Eigen::Index i = 0; i < m; ++i) AB.col(i) = lp.A().col(bs.basis[i]);
  Eigen::PartialPivLU<Mat> lu(AB);
  const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  require(pivot_min > 1e-13, ErrorCode::Singular,
          "edge_directions: basis matrix is singular");

  std::vector<EdgeDirection> out;
  out.reserve(bs.nonbasis.size());
  for (Eigen::Index j : bs.nonbasis) {
    const Vec db = lu.solve(lp.A().col(j));
    EdgeDirection e;
    e.j = j;
    e.delta = Vec::Zero(d);
    e.delta[j] = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) e.delta[bs.basis[i]] = -db[i];
    out.push_back(std::move(e));
  }
  return out;
}

bool check_nondegenerate(const StandardFormLP& lp, const BasisSolution& bs) {
  Eigen::Index positives = 0;
  for (Eigen::Index i = 0; i < bs.vertex.size(); ++i) {
    if (bs.vertex[i] > lp.tol_feas()) ++positives;
  }
  return positives == lp.rows();
}

void StandardFormLP::verify_bounded() const {
  for (Eigen::Index j = 0; j < cols(); ++j) {
    Vec c = Vec::Zero(cols());
    c[j] = -1.0;  // maximize x_j
    solve_lp(*this, c);  // throws Unbounded on an improving ray
  }
}

}  // namespace sdd
