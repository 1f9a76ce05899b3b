#pragma once

// Kraft normal forms of BT_1 groups: a cut c and a permutation pi of
// {1..r} with phi(e_i) = e_pi(i) for i <= c and phi(e_i) = 0 otherwise.

#include <optional>
#include <utility>
#include <vector>

#include "tbt/semilinear.hpp"

namespace tbt {

struct KraftDatum {
  int r = 0;
  int c = 0;
  /// 1-indexed image list: pi[i-1] = pi(i).
  std::vector<int> pi;

  int d() const { return r - c; }
  int apply(int i) const { return pi[i - 1]; }
  void validate() const;

  bool operator==(const KraftDatum&) const = default;
};

enum class PairRegion { kPlus, kZero, kMinus };

/// Region of (i, j) in J x J for the cut c: plus if j <= c < i,
/// minus if i <= c < j, zero otherwise.
PairRegion classify_pair(int i, int j, int c);

struct PairClassification {
  std::vector<std::pair<int, int>> plus, zero, minus;
};
PairClassification classify_pairs(int r, int c);

/// Smallest nu >= 1 with (pi^nu(i), pi^nu(j)) outside the zero region.
int nu_pi(const KraftDatum& datum, int i, int j);

/// Pairs of the minus region whose first exit lands in the plus region.
std::vector<std::pair<int, int>> j_minus_pi(const KraftDatum& datum);

int gamma1(const KraftDatum& datum);
int dim_orbit1(const KraftDatum& datum);

/// r = c + d, pi(i) = ((i + d - 1) mod r) + 1. Requires gcd(c, d) = 1.
KraftDatum minimal_datum(int c, int d);

/// Relabels as (F^0 of a, F^0 of b, F^1 of a, F^1 of b).
KraftDatum direct_sum(const KraftDatum& a, const KraftDatum& b);

/// #{i <= c : pi(i) > c}.
int a_number(const KraftDatum& datum);

/// Least common multiple of the cycle lengths of pi.
int cycle_lcm(const KraftDatum& datum);

/// Truncation with S the permutation matrix of pi and g = identity unless given.
DieudonneTruncation to_truncation(const KraftDatum& datum, const RingPtr& ring,
                                  const std::optional<MatrixW>& g = std::nullopt);

}  // namespace tbt
