#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "sdd/lp.hpp"
#include "sdd/prior.hpp"
#include "sdd/types.hpp"

namespace sdd {

/// Measurement oracle answering inner products q'c for a hidden cost c.
class CostOracle {
 public:
  virtual ~CostOracle() = default;
  virtual double query(const Vec& q) = 0;
  std::size_t call_count() const { return calls_; }

 protected:
  std::size_t calls_ = 0;
};

/// In-memory oracle over an explicit cost vector.
class InMemoryCostOracle final : public CostOracle {
 public:
  explicit InMemoryCostOracle(Vec cost) : cost_(std::move(cost)) {}
  double query(const Vec& q) override {
    ++calls_;
    return q.dot(cost_);
  }
  const Vec& cost() const { return cost_; }

 private:
  Vec cost_;
};

struct PointwiseOptions {
  double tol_cert = 1e-8;
  /// Hard-error on degenerate visited vertices (Assumption 1 gate). Flow
  /// polytopes are degenerate at every vertex, so the contextual pipeline
  /// turns this off; the containment certificate is sound either way, only
  /// the d*-query economy bound relies on nondegeneracy.
  bool require_nondegenerate = true;
  /// Fixed-anchor mode evaluates the containment test from the realized cost
  /// each iteration. The experimental unknown-cost mode re-anchors at the
  /// minimum-norm center of the current fiber instead.
  bool unknown_cost_mode = false;
  std::size_t max_iterations = 0;  // 0: default d+1
};

struct PointwiseCertificate {
  QueryDataset dataset;
  BasisSolution basis;
  Vec decision;
  std::size_t iterations = 0;
  std::size_t queries_added = 0;
  std::size_t fi_calls = 0;
  std::size_t oracle_calls = 0;
  /// Facet-hit witnesses, one per added query: the boundary point
  /// c_hit in C_k with c_hit'delta_{j*} = 0.
  std::vector<Vec> hit_points;
};

/// First optimality-cone facet crossed along the segment from the in-cone
/// anchor c_in to the witness c_out. Returns (position in `edges`, alpha).
std::pair<std::size_t, double> facet_hit_select(
    const Vec& c_in, const Vec& c_out, const std::vector<EdgeDirection>& edges,
    double tol = 1e-9);

struct ContainmentReport {
  double m_min = 0.0;
  std::size_t j_pos = 0;  // position in the edge list (lowest index on ties)
  Vec witness;            // FI minimizer for the minimizing facet
  std::vector<double> facet_values;
};

/// Evaluates FI(delta_j; fiber) for every nonbasic j and reports the minimum.
ContainmentReport containment_test(const StandardFormLP& lp,
                                   const BasisSolution& bs,
                                   const std::vector<EdgeDirection>& edges,
                                   const Fiber& fiber);

/// Algorithm: adaptive facet-hit cutting planes certifying pointwise
/// sufficiency at the oracle's hidden cost. `anchor` must be a fiber member;
/// in fixed-anchor mode it is the realized cost itself. `init` queries are
/// re-answered by the oracle to seed the measurements.
PointwiseCertificate run_pointwise(const StandardFormLP& lp,
                                   const PriorSet& prior, CostOracle& oracle,
                                   const Vec& anchor,
                                   const std::vector<Vec>& init,
                                   const PointwiseOptions& options = {});

/// One LP solve plus one containment test at the realized optimal basis: the
/// sufficiency decision procedure with augmentation disabled.
bool is_pointwise_sufficient(const StandardFormLP& lp, const PriorSet& prior,
                             const QueryDataset& dataset, const Vec& cost,
                             const PointwiseOptions& options = {});

}  // namespace sdd
