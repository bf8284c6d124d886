#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdd/instances.hpp"
#include "sdd/oracles.hpp"
#include "sdd/pointwise.hpp"
#include "sdd/rng.hpp"

using namespace sdd;

TEST_CASE("App C: one augmentation adds exactly the missing direction") {
  const HypercubeRareTypes inst = make_hypercube(4, 4, 0.1);
  const auto deltas = inst.delta_queries();
  for (std::size_t i = 1; i < inst.d_star; ++i) {
    // init holds every direction except delta_i
    std::vector<Vec> init;
    for (std::size_t j = 0; j < inst.d_star; ++j) {
      if (j != i) init.push_back(deltas[j]);
    }
    InMemoryCostOracle oracle(inst.types[i]);
    const PointwiseCertificate cert =
        run_pointwise(inst.lp, inst.prior, oracle, inst.types[i], init);
    CHECK(cert.queries_added == 1);
    CHECK(cert.dataset.size() == init.size() + 1);
    CHECK(cert.dataset.query(init.size()).isApprox(deltas[i], 1e-12));
    // decision is the vertex (e_i, 1 - e_i)
    CHECK(cert.decision[static_cast<Eigen::Index>(i)] == doctest::Approx(1.0));
  }
}

TEST_CASE("prior inside one cone: zero augmentations") {
  // tiny ball around an interior cost of the all-slack cone
  const Eigen::Index d = 3;
  Mat A(d, 2 * d);
  A.leftCols(d) = Mat::Identity(d, d);
  A.rightCols(d) = Mat::Identity(d, d);
  const StandardFormLP lp(std::move(A), Vec::Ones(d), true, true);
  Vec center = Vec::Zero(2 * d);
  center.head(d).setConstant(5.0);
  Vec diag = Vec::Constant(2 * d, 1e-4);
  const PriorSet prior =
      PriorSet::ellipsoid(center, diag.asDiagonal().toDenseMatrix());
  InMemoryCostOracle oracle(center);
  const PointwiseCertificate cert =
      run_pointwise(lp, prior, oracle, center, {});
  CHECK(cert.queries_added == 0);
  CHECK(cert.iterations == 1);
  CHECK(oracle.call_count() == 0);
}

TEST_CASE("facet_hit_select on the two-facet counterexample geometry") {
  std::vector<EdgeDirection> edges(2);
  edges[0].j = 0;
  edges[0].delta = Vec::Unit(2, 0);
  edges[1].j = 1;
  edges[1].delta = Vec::Unit(2, 1);
  Vec c_in(2), c_out(2);
  c_in << 1.0, 0.1;
  c_out << -1.0, -1.0;

  const auto [pos, alpha] = facet_hit_select(c_in, c_out, edges);
  CHECK(pos == 1);
  CHECK(alpha == doctest::Approx(0.1 / 1.1));

  // anchor on a facet: alpha = 0 selects that facet
  Vec on_facet(2);
  on_facet << 1.0, 0.0;
  const auto [pos0, alpha0] = facet_hit_select(on_facet, c_out, edges);
  CHECK(pos0 == 1);
  CHECK(alpha0 == doctest::Approx(0.0));

  // single violated facet wins regardless of magnitudes
  Vec half(2);
  half << -3.0, 0.5;
  const auto [pos1, alpha1] = facet_hit_select(c_in, half, edges);
  CHECK(pos1 == 0);
  CHECK(alpha1 == doctest::Approx(1.0 / 4.0));

  Vec inside(2);
  inside << 0.5, 0.5;
  CHECK_THROWS_AS(facet_hit_select(c_in, inside, edges), Error);
}

TEST_CASE("facet-hit picks the reachable facet on the segment prior") {
  const FacetHitExample ex = make_facet_hit_example(0.1);
  InMemoryCostOracle oracle(ex.c_in);
  const PointwiseCertificate cert =
      run_pointwise(ex.lp, ex.prior, oracle, ex.c_in, {});
  // one query: the normal of the c2 = 0 facet, i.e. delta(B, x2) = (0,1,0,-1)
  REQUIRE(cert.queries_added == 1);
  Vec expected(4);
  expected << 0, 1, 0, -1;
  CHECK(cert.dataset.query(0).isApprox(expected, 1e-12));
  REQUIRE(cert.hit_points.size() == 1);
  const Vec& hit = cert.hit_points[0];
  CHECK(hit[0] >= -1e-8);  // satisfies the other facet too
  CHECK(std::abs(hit[1]) <= 1e-8);

  // the naive rule (query the lowest-indexed violated facet, here x1's
  // c1 >= 0) hits the boundary outside the cone
  QueryDataset empty;
  const Fiber fiber{&ex.prior, &empty};
  const BasisSolution bs = solve_lp(ex.lp, ex.c_in);
  const auto edges = edge_directions(ex.lp, bs);
  const ContainmentReport report = containment_test(ex.lp, bs, edges, fiber);
  CHECK(report.m_min == doctest::Approx(-1.0));
  CHECK(report.facet_values[0] < 0.0);  // both facets are violated
  CHECK(report.facet_values[1] < 0.0);
  const Vec& delta_naive = edges[0].delta;
  const FiResult fi0 = face_intersection(fiber, delta_naive);
  const double in_val = ex.c_in.dot(delta_naive);
  const double alpha_naive = in_val / (in_val - fi0.min_value);
  const Vec naive_hit = ex.c_in + alpha_naive * (fi0.minimizer - ex.c_in);
  CHECK(naive_hit[1] < -1e-8);  // violates the c2 >= 0 facet
}

TEST_CASE("containment test issues one FI call per nonbasic index") {
  const HypercubeRareTypes inst = make_hypercube(3, 5, 0.1);
  InMemoryCostOracle oracle(inst.types[0]);
  const PointwiseCertificate cert =
      run_pointwise(inst.lp, inst.prior, oracle, inst.types[0], {});
  const auto d = static_cast<std::size_t>(inst.lp.cols());
  const auto m = static_cast<std::size_t>(inst.lp.rows());
  CHECK(cert.fi_calls == cert.iterations * (d - m));
}

TEST_CASE("query independence and oracle economy on random hidden costs") {
  const HypercubeRareTypes inst = make_hypercube(4, 6, 0.1);
  Rng rng(17);
  const Eigen::Index d = inst.lp.cols();
  for (int trial = 0; trial < 25; ++trial) {
    Vec hidden = Vec::Zero(d);
    hidden.head(d / 2) = inst.mu + rng.ball(d / 2);
    InMemoryCostOracle oracle(hidden);
    const PointwiseCertificate cert =
        run_pointwise(inst.lp, inst.prior, oracle, hidden, {});
    CHECK(cert.queries_added <= inst.d_star);
    CHECK(cert.iterations <= inst.d_star + 1);
    CHECK(oracle.call_count() == cert.queries_added);
    // decision relevance witness: each hit point is a prior member lying in
    // the fiber of its iteration and on the hyperplane of the added query
    for (std::size_t k = 0; k < cert.hit_points.size(); ++k) {
      const Vec& hit = cert.hit_points[k];
      CHECK(membership(inst.prior, hit, 1e-6));
      const Vec& added = cert.dataset.query(k);
      CHECK(std::abs(hit.dot(added)) <= 1e-7 * (1.0 + hit.norm()));
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(std::abs(hit.dot(cert.dataset.query(j)) -
                       cert.dataset.measurement(j)) <=
              1e-7 * (1.0 + hit.norm()));
      }
    }
  }
}

TEST_CASE("certificate decision is optimal for random fiber members") {
  const HypercubeRareTypes inst = make_hypercube(3, 4, 0.1);
  Rng rng(29);
  const Vec hidden = inst.types[1];
  InMemoryCostOracle oracle(hidden);
  const PointwiseCertificate cert =
      run_pointwise(inst.lp, inst.prior, oracle, hidden, {});
  const auto members =
      sample_fiber(inst.prior, cert.dataset, hidden, 1000, rng);
  for (const Vec& c : members) {
    const BasisSolution bs = solve_lp(inst.lp, c);
    CHECK(c.dot(cert.decision) <=
          bs.objective + 1e-8 * (1.0 + std::abs(bs.objective)));
  }
}

TEST_CASE("degenerate vertices are rejected unless explicitly allowed") {
  const GridCloInstance grid = make_grid_clo(3, 2);
  InMemoryCostOracle oracle(grid.c0);
  CHECK_THROWS_AS(run_pointwise(grid.lp, grid.prior, oracle, grid.c0, {}),
                  Error);

  PointwiseOptions options;
  options.require_nondegenerate = false;
  InMemoryCostOracle oracle2(grid.c0);
  const PointwiseCertificate cert =
      run_pointwise(grid.lp, grid.prior, oracle2, grid.c0, {}, options);
  CHECK(cert.dataset.size() >= 1);
  // the certificate is still sound: the fiber fits in the final basis cone
  CHECK(is_pointwise_sufficient(grid.lp, grid.prior, cert.dataset, grid.c0,
                                options));
}

TEST_CASE("anchor outside the prior is rejected") {
  const HypercubeRareTypes inst = make_hypercube(2, 2, 0.1);
  Vec anchor = Vec::Zero(inst.lp.cols());
  anchor.head(2).setConstant(100.0);
  InMemoryCostOracle oracle(anchor);
  CHECK_THROWS_AS(run_pointwise(inst.lp, inst.prior, oracle, anchor, {}),
                  Error);
}

TEST_CASE("unknown-cost mode still certifies") {
  const HypercubeRareTypes inst = make_hypercube(3, 3, 0.1);
  PointwiseOptions options;
  options.unknown_cost_mode = true;
  for (std::size_t i = 0; i < inst.d_star; ++i) {
    InMemoryCostOracle oracle(inst.types[i]);
    const PointwiseCertificate cert = run_pointwise(
        inst.lp, inst.prior, oracle, inst.types[i], {}, options);
    CHECK(is_pointwise_sufficient(inst.lp, inst.prior, cert.dataset,
                                  inst.types[i]));
  }
}
