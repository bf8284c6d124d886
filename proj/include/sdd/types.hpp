#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Io,
  Infeasible,
  Unbounded,
  Singular,
  DegenerateVertex,
  EmptyFiber,
  OutsideFiber,
  DegenerateRank,
  FiberInconsistent,
  NoProgress,
  NoViolatedFacet,
  RankDeficientDesign,
  TooLarge,
  NonConvergence,
  BadParams,
  BadCorridor,
  InvalidDelta,
  InvalidParams,
  Internal,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace sdd
