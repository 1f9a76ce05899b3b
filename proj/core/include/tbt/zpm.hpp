#pragma once

// Linear systems over Z/p^m. The kernel of an integer matrix modulo p^m is
// computed from a diagonalization P*M*Q = diag(p^{v_1}, ..., p^{v_k}, 0...)
// in which only the column transformation Q is retained.

#include <cstdint>
#include <functional>
#include <vector>

namespace tbt {

using ZpmVector = std::vector<std::uint32_t>;

struct SolutionModule {
  int p = 0;
  int m = 0;
  int unknowns = 0;
  /// Independent generators; generators[t] has additive order p^{order_exponents[t]}.
  std::vector<ZpmVector> generators;
  std::vector<int> order_exponents;

  /// log_p of the number of solutions.
  int log_cardinality() const;
  /// Number of solutions, saturating at UINT64_MAX.
  std::uint64_t cardinality() const;
  bool contains(const ZpmVector& x, const std::vector<ZpmVector>& equations) const;

  /// Visits every solution exactly once, in odometer order over generator
  /// coefficients. Raises EnumerationTooLarge above `cap`.
  void enumerate(const std::function<void(const ZpmVector&)>& visit, std::uint64_t cap) const;
};

/// Solutions x in (Z/p^m)^N of equations[e] . x = 0 for every row e.
/// Entries of each equation are taken modulo p^m.
SolutionModule solve_linear_zpm(int p, int m, int unknowns, std::vector<ZpmVector> equations);

}  // namespace tbt
