#pragma once

#include <string>

#include <json.hpp>

#include "sdd/cumulative.hpp"
#include "sdd/instances.hpp"
#include "sdd/lp.hpp"
#include "sdd/pointwise.hpp"
#include "sdd/prior.hpp"

namespace sdd {

using Json = nlohmann::json;

Json to_json(const StandardFormLP& lp);
StandardFormLP lp_from_json(const Json& j);

Json to_json(const PriorSet& prior);
PriorSet prior_from_json(const Json& j);

Json to_json(const QueryDataset& dataset);
QueryDataset dataset_from_json(const Json& j);

Json to_json(const PointwiseCertificate& cert);
Json to_json(const CompressionResult& result);
Json to_json(const CertificateReport& report);

/// Instance bundle {lp, prior, metadata:{family, params, d_star_known}}.
Json instance_bundle(const StandardFormLP& lp, const PriorSet& prior,
                     const std::string& family, const Json& params,
                     std::optional<std::size_t> d_star_known);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json mat_to_json_rowmajor(const Mat& m);

}  // namespace sdd
