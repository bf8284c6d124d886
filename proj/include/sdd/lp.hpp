#pragma once

#include <vector>

#include "sdd/types.hpp"

namespace sdd {

/// Standard-form linear program min c'x over {Ax = b, x >= 0}.
///
/// The feasible region must be a nonempty bounded polytope. Nonemptiness is
/// established by phase 1 at the first solve; boundedness is either attested
/// by the caller (instance generators do) or verified explicitly with
/// verify_bounded(), which costs d extra LP solves.
class StandardFormLP {
 public:
  StandardFormLP(Mat A, Vec b, bool bounded_attested = true,
                 bool nondegenerate_hint = false, double tol_feas = 1e-9,
                 double tol_cost = 1e-9);

  const Mat& A() const { return A_; }
  const Vec& b() const { return b_; }
  Eigen::Index rows() const { return A_.rows(); }
  Eigen::Index cols() const { return A_.cols(); }
  double tol_feas() const { return tol_feas_; }
  double tol_cost() const { return tol_cost_; }
  bool bounded_attested() const { return bounded_attested_; }
  bool nondegenerate_hint() const { return nondegenerate_hint_; }

  /// Solves max x_j for every j and checks the optima are finite.
  void verify_bounded() const;

 private:
  Mat A_;
  Vec b_;
  bool bounded_attested_;
  bool nondegenerate_hint_;
  double tol_feas_;
  double tol_cost_;
};

/// An optimal basis with its basic feasible solution.
struct BasisSolution {
  std::vector<Eigen::Index> basis;     // ascending, |basis| = m
  std::vector<Eigen::Index> nonbasis;  // ascending, |nonbasis| = d - m
  Vec vertex;                          // x_B = A_B^{-1} b, x_N = 0
  double objective = 0.0;
};

/// Edge direction obtained by increasing nonbasic variable j from zero:
/// delta_N = e_j, delta_B = -A_B^{-1} A_j.
struct EdgeDirection {
  Eigen::Index j = 0;
  Vec delta;
};

/// Two-phase revised simplex with Bland's rule. Entering variable: lowest
/// index with negative reduced cost; leaving variable: lowest index among the
/// minimum-ratio rows. The pivot sequence is therefore a deterministic
/// function of (A, b, c), and repeated calls reproduce the same basis
/// bit-for-bit.
BasisSolution solve_lp(const StandardFormLP& lp, const Vec& c);

/// All d-m edge directions of a basis, in ascending nonbasic index order.
std::vector<EdgeDirection> edge_directions(const StandardFormLP& lp,
                                           const BasisSolution& bs);

/// True iff the vertex has exactly m components above tol_feas.
bool check_nondegenerate(const StandardFormLP& lp, const BasisSolution& bs);

}  // namespace sdd
