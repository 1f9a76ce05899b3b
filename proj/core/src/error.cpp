#include "tbt/error.hpp"

namespace tbt {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kRingMismatch: return "RingMismatch";
    case Errc::kNotAUnit: return "NotAUnit";
    case Errc::kPrecisionIncrease: return "PrecisionIncrease";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kNotInvertible: return "NotInvertible";
    case Errc::kPairNotInJMinus: return "PairNotInJMinus";
    case Errc::kNotCoprime: return "NotCoprime";
    case Errc::kInsufficientPrecision: return "InsufficientPrecision";
    case Errc::kInsufficientData: return "InsufficientData";
    case Errc::kSymplecticViolation: return "SymplecticViolation";
    case Errc::kNotAnAutomorphism: return "NotAnAutomorphism";
    case Errc::kEnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::kOrbitTooLarge: return "OrbitTooLarge";
    case Errc::kInvariantViolation: return "InvariantViolation";
    case Errc::kNonIntegralQuotient: return "NonIntegralQuotient";
  }
  return "Unknown";
}

ErrorCategory errc_category(Errc code) {
  switch (code) {
    case Errc::kEnumerationTooLarge:
    case Errc::kOrbitTooLarge:
      return ErrorCategory::kBudget;
    case Errc::kInvariantViolation:
    case Errc::kNonIntegralQuotient:
      return ErrorCategory::kInvariant;
    default:
      return ErrorCategory::kDomain;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code) {}

InsufficientPrecision::InsufficientPrecision(std::vector<int> uncertain,
                                             const std::string& what)
    : Error(Errc::kInsufficientPrecision, what),
      uncertain_(std::move(uncertain)) {}

OrbitTooLarge::OrbitTooLarge(std::uint64_t lower_bound, const std::string& what)
    : Error(Errc::kOrbitTooLarge, what), lower_bound_(lower_bound) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tbt
