#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdd/sdd.h"

using Json = nlohmann::json;

namespace {

// lifted square {x + s = 1}
struct LpHandle {
  sdd_lp* lp = nullptr;
  LpHandle() {
    const double A[2 * 4] = {1, 0, 1, 0, 0, 1, 0, 1};
    const double b[2] = {1, 1};
    REQUIRE(sdd_lp_create(2, 4, A, b, 1, 1, &lp) == SDD_OK);
  }
  ~LpHandle() { sdd_lp_free(lp); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(sdd_version()) > 0);
  CHECK(std::string(sdd_status_name(SDD_OK)) == "SDD_OK");
  CHECK(std::string(sdd_status_name(SDD_ERR_INFEASIBLE)) ==
        "SDD_ERR_INFEASIBLE");
}

TEST_CASE("lp create, solve, serialize") {
  LpHandle h;
  int m = 0, d = 0;
  REQUIRE(sdd_lp_dims(h.lp, &m, &d) == SDD_OK);
  CHECK(m == 2);
  CHECK(d == 4);

  const double cost[4] = {0.99, 0.99, 0.0, 0.0};
  int basis[2];
  double vertex[4];
  double objective = -1.0;
  REQUIRE(sdd_lp_solve(h.lp, cost, basis, vertex, &objective) == SDD_OK);
  CHECK(objective == doctest::Approx(0.0));
  CHECK(vertex[0] == doctest::Approx(0.0));
  CHECK(vertex[2] == doctest::Approx(1.0));
  CHECK(basis[0] == 2);
  CHECK(basis[1] == 3);

  char* json = nullptr;
  REQUIRE(sdd_lp_to_json(h.lp, &json) == SDD_OK);
  sdd_lp* round = nullptr;
  REQUIRE(sdd_lp_from_json(json, &round) == SDD_OK);
  sdd_string_free(json);
  double objective2 = -1.0;
  REQUIRE(sdd_lp_solve(round, cost, nullptr, nullptr, &objective2) == SDD_OK);
  CHECK(objective2 == doctest::Approx(objective));
  sdd_lp_free(round);
}

TEST_CASE("error paths set codes and messages") {
  sdd_lp* lp = nullptr;
  CHECK(sdd_lp_create(2, 1, nullptr, nullptr, 1, 0, &lp) ==
        SDD_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sdd_last_error()) > 0);

  // duplicated rows: not full row rank
  const double A[2 * 3] = {1, 1, 0, 1, 1, 0};
  const double b[2] = {1, 1};
  CHECK(sdd_lp_create(2, 3, A, b, 1, 0, &lp) == SDD_ERR_BAD_PARAMS);

  sdd_lp* bad = nullptr;
  CHECK(sdd_lp_from_json("{not json", &bad) == SDD_ERR_PARSE);

  // infeasible: x1 + x2 = -1
  const double A2[1 * 2] = {1, 1};
  const double b2[1] = {-1};
  sdd_lp* neg = nullptr;
  REQUIRE(sdd_lp_create(1, 2, A2, b2, 1, 0, &neg) == SDD_OK);
  const double cost2[2] = {1, 1};
  double obj = 0;
  CHECK(sdd_lp_solve(neg, cost2, nullptr, nullptr, &obj) ==
        SDD_ERR_INFEASIBLE);
  sdd_lp_free(neg);
}

TEST_CASE("prior membership and FI through the C surface") {
  const int d = 3;
  std::vector<double> center{0, 0, 0};
  std::vector<double> sigma{1, 0, 0, 0, 1, 0, 0, 0, 1};
  sdd_prior* prior = nullptr;
  REQUIRE(sdd_prior_ellipsoid(d, center.data(), sigma.data(), &prior) == SDD_OK);

  int member = -1;
  const double origin[3] = {0, 0, 0};
  REQUIRE(sdd_prior_membership(prior, d, origin, &member) == SDD_OK);
  CHECK(member == 1);
  const double outside[3] = {1.5, 0, 0};
  REQUIRE(sdd_prior_membership(prior, d, outside, &member) == SDD_OK);
  CHECK(member == 0);

  const double delta[3] = {1, 0, 0};
  double value = 0;
  std::vector<double> minimizer(d);
  REQUIRE(sdd_fi_solve(prior, d, 0, nullptr, nullptr, delta, &value,
                       minimizer.data()) == SDD_OK);
  CHECK(value == doctest::Approx(-1.0));
  CHECK(minimizer[0] == doctest::Approx(-1.0));

  // one query pinning c_1 = 0: the objective becomes constant
  const double q[3] = {1, 0, 0};
  const double s[1] = {0.0};
  REQUIRE(sdd_fi_solve(prior, d, 1, q, s, delta, &value, minimizer.data()) ==
          SDD_OK);
  CHECK(value == doctest::Approx(0.0));
  sdd_prior_free(prior);
}

TEST_CASE("pointwise and cumulative runs emit well-formed JSON") {
  // rare-types instance at d* = d = 2 via the instance maker
  char* bundle_text = nullptr;
  REQUIRE(sdd_instance_make("hypercube",
                            R"({"d_star": 2, "d": 2, "epsilon": 0.1})",
                            &bundle_text) == SDD_OK);
  const Json bundle = Json::parse(bundle_text);
  sdd_string_free(bundle_text);
  CHECK(bundle.at("metadata").at("family") == "hypercube");
  CHECK(bundle.at("metadata").at("d_star_known") == 2);

  sdd_lp* lp = nullptr;
  REQUIRE(sdd_lp_from_json(bundle.at("lp").dump().c_str(), &lp) == SDD_OK);
  sdd_prior* prior = nullptr;
  REQUIRE(sdd_prior_from_json(bundle.at("prior").dump().c_str(), &prior) ==
          SDD_OK);

  // hidden cost: rare type (mu - e_2, 0)
  const std::vector<double> hidden{0.99, -0.01, 0.0, 0.0};
  char* cert_text = nullptr;
  REQUIRE(sdd_pointwise_run(lp, prior, hidden.data(), 0, nullptr, 0,
                            &cert_text) == SDD_OK);
  const Json cert = Json::parse(cert_text);
  sdd_string_free(cert_text);
  CHECK(cert.at("queries").size() == cert.at("measurements").size());
  CHECK(cert.at("iterations").get<int>() <= 3);
  CHECK(cert.at("oracle_calls").get<int>() == cert.at("queries").size());

  // two-sample cumulative run: both types get covered
  std::vector<double> costs{-0.01, 0.99, 0.0, 0.0, 0.99, -0.01, 0.0, 0.0};
  char* comp_text = nullptr;
  REQUIRE(sdd_cumulative_run(lp, prior, 2, costs.data(), 0, &comp_text) ==
          SDD_OK);
  const Json comp = Json::parse(comp_text);
  sdd_string_free(comp_text);
  CHECK(comp.at("n") == 2);
  CHECK(comp.at("hard_indices").size() == 2);
  const Json dataset = comp.at("final_dataset");
  CHECK(dataset.at("queries").size() == 2);

  double risk = -1.0;
  REQUIRE(sdd_empirical_risk(lp, prior, dataset.dump().c_str(), 2,
                             costs.data(), 0, &risk) == SDD_OK);
  CHECK(risk == doctest::Approx(0.0));

  double bound_t = 0, bound_d = 0;
  REQUIRE(sdd_certificate_bound(100, 3, 0.05, 6, &bound_t, &bound_d) == SDD_OK);
  CHECK(bound_t == doctest::Approx(0.04 * (18 + 1 + std::log(20.0))));
  CHECK(bound_d >= bound_t);
  CHECK(sdd_certificate_bound(0, 3, 0.05, -1, &bound_t, nullptr) ==
        SDD_ERR_BAD_PARAMS);

  sdd_prior_free(prior);
  sdd_lp_free(lp);
}

TEST_CASE("grid oracle and pispp check through the C surface") {
  int d_star = 0;
  REQUIRE(sdd_grid_oracle_dstar(R"({"g": 3, "p": 2})", &d_star) == SDD_OK);
  CHECK(d_star == 3);

  int satisfiable = -1, equivalence = -1;
  REQUIRE(sdd_pispp_check_cnf("p cnf 2 2\n1 2 0\n-1 2 0\n", &satisfiable,
                              &equivalence) == SDD_OK);
  CHECK(satisfiable == 1);
  CHECK(equivalence == 1);
  CHECK(sdd_pispp_check_cnf("p cnf 2 1\n1 7 0\n", &satisfiable,
                            &equivalence) == SDD_ERR_PARSE);
}

TEST_CASE("experiment drivers return summaries") {
  char* summary = nullptr;
  REQUIRE(sdd_learn_experiment(
              R"({"d_star": 3, "d": 3, "epsilon": 0.1, "n": 40,
                  "trials": 3, "fresh": 200, "seed": 5})",
              &summary) == SDD_OK);
  const Json learn = Json::parse(summary);
  sdd_string_free(summary);
  CHECK(learn.at("trials").size() == 3);
  CHECK(learn.at("fraction_exceeding_bound").get<double>() <= 1.0);
  for (const auto& row : learn.at("trials")) {
    CHECK(row.at("replay_ok") == true);
    CHECK(row.at("training_clean") == true);
    CHECK(row.at("dn_size").get<int>() <= 3);
  }

  char* clo_summary = nullptr;
  REQUIRE(sdd_clo_experiment(
              R"({"g": 3, "p": 2, "n_train_grid": [20], "n_test": 50,
                  "trials": 2, "n_stage1": 40, "epochs": 2, "seed": 5})",
              &clo_summary) == SDD_OK);
  const Json clo = Json::parse(clo_summary);
  sdd_string_free(clo_summary);
  CHECK(clo.at("oracle_d_star") == 3);
  CHECK(clo.at("trials").size() == 2);
  CHECK(clo.at("risk_stats").contains("full"));
  CHECK(clo.at("risk_stats").contains("compressed"));
}
