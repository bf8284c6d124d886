#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdd/lp.hpp"
#include "sdd/prior.hpp"
#include "sdd/rng.hpp"

namespace sdd {

/// Rare-types family on the lifted hypercube {x + s = 1, x,s >= 0}: the
/// common type mu - e_1 plus d*-1 rare types, each forcing discovery of a
/// distinct direction (-e_i, e_i). The prior is the lifted ball around
/// (mu, 0); its slack block gets a tiny variance so Sigma stays positive
/// definite while the fiber geometry matches the flat construction.
struct HypercubeRareTypes {
  std::size_t d_star = 0;
  std::size_t d = 0;
  double epsilon = 0.0;
  Vec mu;                       // length d
  StandardFormLP lp;            // m = d rows, 2d columns
  PriorSet prior;
  std::vector<Vec> types;       // lifted costs (mu - e_i, 0), i = 1..d*
  std::vector<double> probs;    // (1-2eps, 2eps/k, ...)
  double slack_eps = 0.0;

  Vec sample(Rng& rng) const;
  std::size_t sample_type(Rng& rng) const;
  /// The d* directions (-e_i, e_i) the cumulative learner can discover.
  std::vector<Vec> delta_queries() const;
  /// All 2^d vertices (chi, 1 - chi).
  std::vector<Vec> vertices() const;
};

HypercubeRareTypes make_hypercube(std::size_t d_star, std::size_t d,
                                  double epsilon, double slack_eps = 1e-6);

/// Monotone s-t grid instance for contextual linear optimization. The
/// low-cost corridor is a base monotone path widened by every single
/// adjacent-step swap; all corridor paths tie under c0, which makes the
/// swap cycles decision-relevant while off-corridor arcs never are.
struct GridCloInstance {
  int g = 0;
  int p = 0;
  StandardFormLP lp;            // unit-flow rows minus the sink row
  PriorSet prior;               // ball of radius 1 around c0
  Vec c0;
  std::vector<std::pair<int, int>> arcs;  // arc -> (tail node, head node)
  std::vector<char> is_corridor;          // per arc
  std::vector<int> corridor_arcs;
  int dropped_row_node = 0;               // the sink
  std::string corridor_spec;

  int node_id(int i, int j) const { return i * g + j; }
  /// Incidence vectors of all monotone paths, R-first DFS order.
  std::vector<Vec> path_vertices() const;
};

/// corridor_spec is a string of 'R'/'D' steps for the base path (it must be
/// a monotone source-to-sink path) or "staircase" for the default
/// alternating path.
GridCloInstance make_grid_clo(int g, int p,
                              const std::string& corridor_spec = "staircase");

struct ThreeSatFormula {
  int n_vars = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-indexed literals
};

ThreeSatFormula parse_dimacs(const std::string& text);

/// Partial inverse shortest path gadget built from a 3-SAT formula:
/// variable layer, clause layer, one required arc, one shortcut per
/// clause-literal. Budget B = n + 2m.
struct PisppInstance {
  int n_vars = 0;
  int n_clauses = 0;
  std::vector<std::string> vertex_names;
  std::vector<std::pair<int, int>> arcs;
  std::vector<char> is_shortcut;
  int source = 0;
  int sink = 0;
  int required_arc = 0;
  Vec base_lengths;  // d
  Vec kappa;
  double budget = 0.0;
  double eta = 0.0;

  int vertex(const std::string& name) const;
  std::optional<int> find_arc(const std::string& from,
                              const std::string& to) const;
  /// Unit-flow polytope of the DAG with the sink row dropped. Flow polytope
  /// vertices are degenerate, so the LP is flagged accordingly.
  StandardFormLP flow_lp() const;
  /// Closed budgeted prior {d + w : w >= 0, kappa'w <= B} in H-representation.
  PriorSet closed_prior() const;
  /// Enumerates every s-t path, invoking fn(arc index list). Returns count.
  std::size_t for_each_path(
      const std::function<void(const std::vector<int>&)>& fn) const;
  std::vector<Vec> path_vertices() const;
  double path_length(const std::vector<int>& path, const Vec& lengths) const;
};

PisppInstance sat_to_pispp(const ThreeSatFormula& formula, double eta = 0.5);

/// Equivalence check at enumeration scale: satisfiability of the formula
/// versus existence of a within-budget modification making some shortest
/// path use the required arc, with the modification built by the explicit
/// construction (penalize unchosen variable entries and non-chosen clause
/// exits) evaluated over all assignments.
bool pispp_brute_check(const PisppInstance& inst, const ThreeSatFormula& formula);

/// Two-facet counterexample: the lifted unit square with a segment prior
/// from (1, eps) to (-1, -1). Both cone facets are violated, but only the
/// c2 = 0 facet is reachable from inside the cone.
struct FacetHitExample {
  StandardFormLP lp;    // lifted [0,1]^2
  PriorSet prior;       // the segment as a flat H-polytope in R^4
  Vec c_in;             // (1, eps, 0, 0)
  Vec c_out_endpoint;   // (-1, -1, 0, 0)
  double eps = 0.0;
};

FacetHitExample make_facet_hit_example(double eps = 0.1);

/// Random nondegenerate standard-form test LPs: bounded by construction
/// (rows x + ... + slack structure) with a known feasible interior.
StandardFormLP make_random_lp(Eigen::Index m, Eigen::Index d, Rng& rng);

}  // namespace sdd
