#include "sdd/cumulative.hpp"

#include <cmath>

namespace sdd {

CompressionResult run_cumulative(const StandardFormLP& lp,
                                 const PriorSet& prior, std::size_t n,
                                 const SampleSource& samples,
                                 const PointwiseOptions& options) {
  CompressionResult result;
  result.n = n;
  result.per_sample_added.reserve(n);
  std::vector<Vec> queries;  // ordered prefix shared by every warm start
  for (std::size_t i = 0; i < n; ++i) {
    const Vec cost = samples(i);
    InMemoryCostOracle oracle(cost);
    PointwiseCertificate cert =
        run_pointwise(lp, prior, oracle, cost, queries, options);
    const std::size_t added = cert.queries_added;
    result.per_sample_added.push_back(added);
    if (added > 0) {
      result.hard_indices.push_back(i);
      for (std::size_t k = queries.size(); k < cert.dataset.size(); ++k) {
        queries.push_back(cert.dataset.query(k));
      }
    }
    result.final_dataset = std::move(cert.dataset);
  }
  if (n == 0) result.final_dataset = QueryDataset();
  return result;
}

CompressionResult run_cumulative(const StandardFormLP& lp,
                                 const PriorSet& prior,
                                 const std::vector<Vec>& samples,
                                 const PointwiseOptions& options) {
  return run_cumulative(
      lp, prior, samples.size(),
      [&samples](std::size_t i) { return samples[i]; }, options);
}

bool replay_check(const StandardFormLP& lp, const PriorSet& prior,
                  const std::vector<Vec>& samples,
                  const CompressionResult& result,
                  const PointwiseOptions& options) {
  std::vector<Vec> hard;
  hard.reserve(result.hard_indices.size());
  for (std::size_t i : result.hard_indices) {
    if (i >= samples.size()) return false;
    hard.push_back(samples[i]);
  }
  const CompressionResult replayed = run_cumulative(lp, prior, hard, options);
  return replayed.final_dataset.same_queries(result.final_dataset);
}

CertificateReport certificate(std::size_t n, std::size_t t_size, double delta,
                              std::optional<std::size_t> d_star) {
  require(n >= 1, ErrorCode::InvalidParams, "certificate: need n >= 1");
  require(delta > 0.0 && delta < 1.0, ErrorCode::InvalidDelta,
          "certificate: delta must lie in (0,1)");
  CertificateReport report;
  report.n = n;
  report.t_size = t_size;
  report.delta = delta;
  const double log_term = 1.0 + std::log(1.0 / delta);  // ln(e/delta)
  report.bound_t =
      4.0 / static_cast<double>(n) * (6.0 * static_cast<double>(t_size) + log_term);
  if (d_star) {
    report.bound_dstar = 4.0 / static_cast<double>(n) *
                         (6.0 * static_cast<double>(*d_star) + log_term);
  }
  return report;
}

double empirical_risk(const StandardFormLP& lp, const PriorSet& prior,
                      const QueryDataset& dataset,
                      const std::vector<Vec>& fresh,
                      const PointwiseOptions& options) {
  if (fresh.empty()) return 0.0;
  std::size_t failures = 0;
  for (const Vec& cost : fresh) {
    if (!is_pointwise_sufficient(lp, prior, dataset, cost, options)) {
      ++failures;
    }
  }
  return static_cast<double>(failures) / static_cast<double>(fresh.size());
}

}  // namespace sdd
