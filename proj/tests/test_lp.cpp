#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sdd/instances.hpp"
#include "sdd/lp.hpp"
#include "sdd/oracles.hpp"
#include "sdd/rng.hpp"

using namespace sdd;

namespace {

StandardFormLP lifted_cube(Eigen::Index d) {
  Mat A(d, 2 * d);
  A.leftCols(d) = Mat::Identity(d, d);
  A.rightCols(d) = Mat::Identity(d, d);
  return StandardFormLP(std::move(A), Vec::Ones(d), true, true);
}

Vec lifted(std::initializer_list<double> x, std::initializer_list<double> s) {
  Vec v(static_cast<Eigen::Index>(x.size() + s.size()));
  Eigen::Index i = 0;
  for (double t : x) v[i++] = t;
  for (double t : s) v[i++] = t;
  return v;
}

}  // namespace

TEST_CASE("lifted cube: interior cost selects the all-slack vertex") {
  const StandardFormLP lp = lifted_cube(2);
  const Vec c = lifted({0.99, 0.99}, {0.0, 0.0});
  const BasisSolution bs = solve_lp(lp, c);
  CHECK(bs.vertex.isApprox(lifted({0, 0}, {1, 1}), 1e-12));
  CHECK(bs.objective == doctest::Approx(0.0));
}

TEST_CASE("zero cost is solved deterministically") {
  const StandardFormLP lp = lifted_cube(2);
  const BasisSolution a = solve_lp(lp, Vec::Zero(4));
  const BasisSolution b = solve_lp(lp, Vec::Zero(4));
  CHECK(a.basis == b.basis);
  CHECK(a.vertex == b.vertex);  // bit-for-bit
  CHECK(a.objective == doctest::Approx(0.0));
}

TEST_CASE("reduced costs are nonnegative at the returned basis") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const StandardFormLP lp = make_random_lp(3, 7, rng);
    const Vec c = rng.normal_vector(7);
    const BasisSolution bs = solve_lp(lp, c);
    for (const EdgeDirection& e : edge_directions(lp, bs)) {
      CHECK(c.dot(e.delta) >= -1e-9 * (1.0 + c.norm()));
    }
  }
}

TEST_CASE("random small LPs match brute-force vertex enumeration") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const StandardFormLP lp = make_random_lp(3, 8, rng);
    const Vec c = rng.normal_vector(8);
    const BasisSolution bs = solve_lp(lp, c);
    const std::vector<Vec> verts = enumerate_vertices(lp);
    REQUIRE(!verts.empty());
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& v : verts) best = std::min(best, c.dot(v));
    CHECK(bs.objective == doctest::Approx(best).epsilon(1e-8));
  }
}

TEST_CASE("grid corridor costs select a corridor path") {
  const GridCloInstance grid = make_grid_clo(5, 5);
  const BasisSolution bs = solve_lp(grid.lp, grid.c0);
  // every monotone path has 2(g-1) arcs; corridor-only paths cost 10 each arc
  CHECK(bs.objective == doctest::Approx(80.0));
  const std::vector<Vec> paths = grid.path_vertices();
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& p : paths) best = std::min(best, grid.c0.dot(p));
  CHECK(best == doctest::Approx(80.0));
}

TEST_CASE("edge directions of the lifted cube") {
  const StandardFormLP lp = lifted_cube(2);
  const BasisSolution bs = solve_lp(lp, lifted({0.99, 0.99}, {0, 0}));
  const auto edges = edge_directions(lp, bs);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].j == 0);
  CHECK(edges[0].delta.isApprox(lifted({1, 0}, {-1, 0}), 1e-12));
  CHECK(edges[1].delta.isApprox(lifted({0, 1}, {0, -1}), 1e-12));
  for (const auto& e : edges) {
    CHECK((lp.A() * e.delta).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(e.delta[e.j] == 1.0);
  }
}

TEST_CASE("App C basis has the slack edge direction (-e_i, e_i)") {
  const HypercubeRareTypes inst = make_hypercube(3, 3, 0.1);
  const std::size_t i = 1;
  const BasisSolution bs = solve_lp(inst.lp, inst.types[i]);
  Vec expected = lifted({0, 1, 0}, {1, 0, 1});
  CHECK(bs.vertex.isApprox(expected, 1e-12));
  const auto edges = edge_directions(inst.lp, bs);
  bool found = false;
  for (const auto& e : edges) {
    if (e.j == 3 + static_cast<Eigen::Index>(i)) {
      found = true;
      CHECK(e.delta.isApprox(lifted({0, -1, 0}, {0, 1, 0}), 1e-12));
    }
  }
  CHECK(found);
}

TEST_CASE("nondegeneracy check") {
  const StandardFormLP cube = lifted_cube(2);
  CHECK(check_nondegenerate(cube, solve_lp(cube, lifted({1, 1}, {0, 0}))));

  // b on a facet intersection: vertex (0,0,1,0) has m-1 positives
  Mat A(2, 4);
  A << 1, 0, 1, 0, 0, 1, 0, 1;
  Vec b(2);
  b << 1, 0;
  const StandardFormLP degenerate(std::move(A), std::move(b), true, false);
  const BasisSolution bs = solve_lp(degenerate, Vec::Ones(4));
  CHECK(!check_nondegenerate(degenerate, bs));

  // grid flow-polytope vertices carry 2(g-1) units against m = g^2 - 1 rows
  const GridCloInstance grid = make_grid_clo(5, 5);
  const BasisSolution gbs = solve_lp(grid.lp, grid.c0);
  Eigen::Index positives = 0;
  for (Eigen::Index a = 0; a < gbs.vertex.size(); ++a) {
    if (gbs.vertex[a] > 1e-9) ++positives;
  }
  CHECK(positives == 8);
  CHECK(!check_nondegenerate(grid.lp, gbs));
}

TEST_CASE("infeasible and rank-deficient inputs are rejected") {
  Mat A(2, 3);
  A << 1, 1, 0, 1, 1, 0;
  CHECK_THROWS_AS(StandardFormLP(std::move(A), Vec::Ones(2)), Error);

  Mat B(2, 3);
  B << 1, 1, 1, 1, 1, -1;
  Vec b(2);
  b << 1, 3;  // rows force x1+x2+x3 = 1 and x1+x2-x3 = 3: x3 = -1
  const StandardFormLP lp(std::move(B), std::move(b), true, false);
  CHECK_THROWS_AS(solve_lp(lp, Vec::Ones(3)), Error);
}

TEST_CASE("unbounded detection signals the violated invariant") {
  Mat A(1, 2);
  A << 1, -1;
  const StandardFormLP lp(std::move(A), Vec::Ones(1), true, false);
  Vec c(2);
  c << -1.0, 0.0;
  CHECK_THROWS_AS(solve_lp(lp, c), Error);
  try {
    solve_lp(lp, c);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unbounded);
  }
  CHECK_THROWS_AS(lp.verify_bounded(), Error);
  CHECK_NOTHROW(lifted_cube(2).verify_bounded());
}
