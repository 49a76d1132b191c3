#include "perispec/types.hpp"

#include <cmath>

namespace perispec {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::Parse: return "Parse";
    case Errc::MissingIndex: return "MissingIndex";
    case Errc::NoUniqueOccurrence: return "NoUniqueOccurrence";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroOperator: return "ZeroOperator";
    case Errc::RankTooLow: return "RankTooLow";
    case Errc::ConstructionFailed: return "ConstructionFailed";
    case Errc::NotLinearConsistent: return "NotLinearConsistent";
    case Errc::InconsistentWithLemma: return "InconsistentWithLemma";
    case Errc::SpanDeficient: return "SpanDeficient";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void require_square_finite(const CMat& a, const char* what) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(Errc::InvalidArgument,
                std::string(what) + ": matrix must be nonempty");
  }
  if (a.rows() != a.cols()) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + ": matrix must be square, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex v = a(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(Errc::OutOfRange,
                    std::string(what) + ": non-finite entry at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace perispec
