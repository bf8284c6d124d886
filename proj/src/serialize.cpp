#include "sdd/serialize.hpp"

namespace sdd {

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vec vec_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::Parse, "expected a numeric array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), ErrorCode::Parse, "expected a numeric array");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Json mat_to_json_rowmajor(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

namespace {

Mat mat_from_json_rowmajor(const Json& j, Eigen::Index rows, Eigen::Index cols,
                           const char* what) {
  require(j.is_array() &&
              j.size() == static_cast<std::size_t>(rows) *
                              static_cast<std::size_t>(cols),
          ErrorCode::Parse, std::string("bad row-major matrix for ") + what);
  Mat m(rows, cols);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      require(j[idx].is_number(), ErrorCode::Parse,
              std::string("bad row-major matrix for ") + what);
      m(r, c) = j[idx++].get<double>();
    }
  }
  return m;
}

}  // namespace

Json to_json(const StandardFormLP& lp) {
  return Json{{"m", lp.rows()},
              {"d", lp.cols()},
              {"A", mat_to_json_rowmajor(lp.A())},
              {"b", vec_to_json(lp.b())},
              {"bounded", lp.bounded_attested()},
              {"nondegenerate", lp.nondegenerate_hint()}};
}

StandardFormLP lp_from_json(const Json& j) {
  require(j.is_object() && j.contains("m") && j.contains("d") &&
              j.contains("A") && j.contains("b"),
          ErrorCode::Parse, "lp_from_json: missing fields");
  const auto m = j.at("m").get<Eigen::Index>();
  const auto d = j.at("d").get<Eigen::Index>();
  require(m >= 1 && d >= m, ErrorCode::Parse, "lp_from_json: bad dimensions");
  Mat A = mat_from_json_rowmajor(j.at("A"), m, d, "A");
  Vec b = vec_from_json(j.at("b"));
  require(b.size() == m, ErrorCode::Parse, "lp_from_json: b has wrong length");
  const bool bounded = j.value("bounded", true);
  const bool nondegen = j.value("nondegenerate", false);
  return StandardFormLP(std::move(A), std::move(b), bounded, nondegen);
}

Json to_json(const PriorSet& prior) {
  if (prior.is_ellipsoid()) {
    const auto& el = prior.as_ellipsoid();
    return Json{{"ellipsoid",
                 {{"c0", vec_to_json(el.c0)},
                  {"sigma", mat_to_json_rowmajor(el.sigma)}}}};
  }
  const auto& hp = prior.as_hpolytope();
  return Json{{"hpolytope",
               {{"r", hp.G.rows()},
                {"d", hp.G.cols()},
                {"G", mat_to_json_rowmajor(hp.G)},
                {"h", vec_to_json(hp.h)}}}};
}

PriorSet prior_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::Parse, "prior_from_json: expected object");
  if (j.contains("ellipsoid")) {
    const Json& e = j.at("ellipsoid");
    Vec c0 = vec_from_json(e.at("c0"));
    Mat sigma = mat_from_json_rowmajor(e.at("sigma"), c0.size(), c0.size(),
                                       "sigma");
    return PriorSet::ellipsoid(std::move(c0), std::move(sigma));
  }
  if (j.contains("hpolytope")) {
    const Json& p = j.at("hpolytope");
    const auto r = p.at("r").get<Eigen::Index>();
    const auto d = p.at("d").get<Eigen::Index>();
    Mat G = mat_from_json_rowmajor(p.at("G"), r, d, "G");
    Vec h = vec_from_json(p.at("h"));
    require(h.size() == r, ErrorCode::Parse, "prior_from_json: bad h length");
    return PriorSet::hpolytope(std::move(G), std::move(h));
  }
  fail(ErrorCode::Parse, "prior_from_json: expected ellipsoid or hpolytope");
}

Json to_json(const QueryDataset& dataset) {
  Json queries = Json::array();
  Json measurements = Json::array();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    queries.push_back(vec_to_json(dataset.query(i)));
    measurements.push_back(dataset.measurement(i));
  }
  return Json{{"queries", queries}, {"measurements", measurements}};
}

QueryDataset dataset_from_json(const Json& j) {
  require(j.is_object() && j.contains("queries") && j.contains("measurements"),
          ErrorCode::Parse, "dataset_from_json: missing fields");
  const Json& qs = j.at("queries");
  const Json& ms = j.at("measurements");
  require(qs.is_array() && ms.is_array() && qs.size() == ms.size(),
          ErrorCode::Parse, "dataset_from_json: size mismatch");
  std::vector<Vec> queries;
  std::vector<double> measurements;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    queries.push_back(vec_from_json(qs[i]));
    measurements.push_back(ms[i].get<double>());
  }
  return QueryDataset(std::move(queries), std::move(measurements));
}

Json to_json(const PointwiseCertificate& cert) {
  Json basis = Json::array();
  for (Eigen::Index b : cert.basis.basis) basis.push_back(b);
  Json j = to_json(cert.dataset);
  j["basis_indices"] = basis;
  j["decision"] = vec_to_json(cert.decision);
  j["iterations"] = cert.iterations;
  j["fi_calls"] = cert.fi_calls;
  j["oracle_calls"] = cert.oracle_calls;
  return j;
}

Json to_json(const CompressionResult& result) {
  Json hard = Json::array();
  for (std::size_t i : result.hard_indices) hard.push_back(i);
  Json added = Json::array();
  for (std::size_t a : result.per_sample_added) added.push_back(a);
  return Json{{"final_dataset", to_json(result.final_dataset)},
              {"hard_indices", hard},
              {"per_sample_added", added},
              {"n", result.n}};
}

Json to_json(const CertificateReport& report) {
  Json j{{"n", report.n},
         {"t_size", report.t_size},
         {"delta", report.delta},
         {"bound_T", report.bound_t}};
  if (report.bound_dstar) j["bound_dstar"] = *report.bound_dstar;
  return j;
}

Json instance_bundle(const StandardFormLP& lp, const PriorSet& prior,
                     const std::string& family, const Json& params,
                     std::optional<std::size_t> d_star_known) {
  Json metadata{{"family", family}, {"params", params}};
  if (d_star_known) {
    metadata["d_star_known"] = *d_star_known;
  } else {
    metadata["d_star_known"] = nullptr;
  }
  return Json{{"lp", to_json(lp)}, {"prior", to_json(prior)},
              {"metadata", metadata}};
}

}  // namespace sdd
