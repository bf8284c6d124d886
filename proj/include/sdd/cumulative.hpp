#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sdd/pointwise.hpp"

namespace sdd {

struct CompressionResult {
  QueryDataset final_dataset;
  std::vector<std::size_t> hard_indices;     // ascending
  std::vector<std::size_t> per_sample_added;  // one entry per sample
  std::size_t n = 0;
};

struct CertificateReport {
  std::size_t n = 0;
  std::size_t t_size = 0;
  double delta = 0.0;
  double bound_t = 0.0;
  /// Present when d* was supplied: the bound with |T| replaced by d*.
  std::optional<double> bound_dstar;
};

/// Streaming source of training samples: returns the i-th hidden cost.
using SampleSource = std::function<Vec(std::size_t)>;

/// Cumulative warm-started learning: runs the pointwise routine on each
/// sample with the current dataset as init and marks indices that grow it.
CompressionResult run_cumulative(const StandardFormLP& lp,
                                 const PriorSet& prior, std::size_t n,
                                 const SampleSource& samples,
                                 const PointwiseOptions& options = {});

CompressionResult run_cumulative(const StandardFormLP& lp,
                                 const PriorSet& prior,
                                 const std::vector<Vec>& samples,
                                 const PointwiseOptions& options = {});

/// Reruns the cumulative pass on the hard subsequence only and checks the
/// final dataset matches query-by-query (exact vector equality).
bool replay_check(const StandardFormLP& lp, const PriorSet& prior,
                  const std::vector<Vec>& samples,
                  const CompressionResult& result,
                  const PointwiseOptions& options = {});

/// Stable-compression certificate (4/n)(6|T| + ln(e/delta)).
CertificateReport certificate(std::size_t n, std::size_t t_size, double delta,
                              std::optional<std::size_t> d_star = std::nullopt);

/// Fraction of fresh costs at which the no-augmentation sufficiency check
/// fails for the frozen dataset.
double empirical_risk(const StandardFormLP& lp, const PriorSet& prior,
                      const QueryDataset& dataset,
                      const std::vector<Vec>& fresh,
                      const PointwiseOptions& options = {});

}  // namespace sdd
