#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace perispec {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Relative tolerance used throughout unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;
// Absolute floor so tolerance bands never collapse to zero.
inline constexpr double kTolFloor = 1e-12;

enum class Errc {
  Parse,
  MissingIndex,
  NoUniqueOccurrence,
  OutOfRange,
  NoConvergence,
  DimensionMismatch,
  ZeroOperator,
  RankTooLow,
  ConstructionFailed,
  NotLinearConsistent,
  InconsistentWithLemma,
  SpanDeficient,
  InvalidArgument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

// Every matrix entering the library must be square with finite entries.
void require_square_finite(const CMat& a, const char* what);

}  // namespace perispec
