#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbt {

enum class Errc {
  kInvalidArgument,
  kRingMismatch,
  kNotAUnit,
  kPrecisionIncrease,
  kShapeMismatch,
  kNotInvertible,
  kPairNotInJMinus,
  kNotCoprime,
  kInsufficientPrecision,
  kInsufficientData,
  kSymplecticViolation,
  kNotAnAutomorphism,
  kEnumerationTooLarge,
  kOrbitTooLarge,
  kInvariantViolation,
  kNonIntegralQuotient,
};

/// Coarse error class, used for CLI exit codes.
enum class ErrorCategory { kDomain, kBudget, kInvariant };

const char* errc_name(Errc code);
ErrorCategory errc_category(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const { return code_; }
  ErrorCategory category() const { return errc_category(code_); }

 private:
  Errc code_;
};

/// Raised by Newton-polygon extraction when censored coefficients leave the
/// hull undetermined. `uncertain()` lists the characteristic-polynomial
/// indices i (coefficient of x^{r-i}) that vanish modulo p^m.
class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(std::vector<int> uncertain, const std::string& what);
  const std::vector<int>& uncertain() const { return uncertain_; }

 private:
  std::vector<int> uncertain_;
};

/// Raised when an orbit exploration exceeds its state budget.
class OrbitTooLarge : public Error {
 public:
  OrbitTooLarge(std::uint64_t lower_bound, const std::string& what);
  std::uint64_t lower_bound() const { return lower_bound_; }

 private:
  std::uint64_t lower_bound_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) raise(code, what);
}

}  // namespace tbt
