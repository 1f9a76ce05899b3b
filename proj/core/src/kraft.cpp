#include "tbt/kraft.hpp"

#include <numeric>
#include <string>

#include "tbt/error.hpp"

namespace tbt {

void KraftDatum::validate() const {
  require(r >= 1, Errc::kInvalidArgument, "height must be positive");
  require(c >= 0 && c <= r, Errc::kInvalidArgument, "cut must satisfy 0 <= c <= r");
  require(static_cast<int>(pi.size()) == r, Errc::kInvalidArgument, "pi must list r images");
  std::vector<bool> seen(r + 1, false);
  for (int v : pi) {
    require(v >= 1 && v <= r && !seen[v], Errc::kInvalidArgument, "pi is not a permutation");
    seen[v] = true;
  }
}

PairRegion classify_pair(int i, int j, int c) {
  if (j <= c && i > c) return PairRegion::kPlus;
  if (i <= c && j > c) return PairRegion::kMinus;
  return PairRegion::kZero;
}

PairClassification classify_pairs(int r, int c) {
  PairClassification out;
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= r; ++j) {
      switch (classify_pair(i, j, c)) {
        case PairRegion::kPlus: out.plus.emplace_back(i, j); break;
        case PairRegion::kZero: out.zero.emplace_back(i, j); break;
        case PairRegion::kMinus: out.minus.emplace_back(i, j); break;
      }
    }
  }
  return out;
}

namespace {

// Returns (nu, landing region) for a pair already known to be in the minus region.
std::pair<int, PairRegion> first_exit(const KraftDatum& datum, int i, int j, long long bound) {
  int a = i, b = j;
  for (long long nu = 1; nu <= bound; ++nu) {
    a = datum.apply(a);
    b = datum.apply(b);
    const PairRegion region = classify_pair(a, b, datum.c);
    if (region != PairRegion::kZero) return {static_cast<int>(nu), region};
  }
  raise(Errc::kInvariantViolation, "pair orbit did not leave the zero region");
}

}  // namespace

int nu_pi(const KraftDatum& datum, int i, int j) {
  datum.validate();
  require(i >= 1 && i <= datum.r && j >= 1 && j <= datum.r, Errc::kInvalidArgument,
          "pair index out of range");
  if (classify_pair(i, j, datum.c) != PairRegion::kMinus) {
    raise(Errc::kPairNotInJMinus,
          "(" + std::to_string(i) + "," + std::to_string(j) + ") is not in the minus region");
  }
  return first_exit(datum, i, j, cycle_lcm(datum)).first;
}

std::vector<std::pair<int, int>> j_minus_pi(const KraftDatum& datum) {
  datum.validate();
  const long long bound = cycle_lcm(datum);
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= datum.c; ++i) {
    for (int j = datum.c + 1; j <= datum.r; ++j) {
      if (first_exit(datum, i, j, bound).second == PairRegion::kPlus) out.emplace_back(i, j);
    }
  }
  return out;
}

int gamma1(const KraftDatum& datum) { return static_cast<int>(j_minus_pi(datum).size()); }

int dim_orbit1(const KraftDatum& datum) { return datum.r * datum.r - gamma1(datum); }

KraftDatum minimal_datum(int c, int d) {
  require(c >= 0 && d >= 0 && c + d >= 1, Errc::kInvalidArgument, "need c, d >= 0 and c + d >= 1");
  if (std::gcd(c, d) != 1) {
    raise(Errc::kNotCoprime, "gcd(" + std::to_string(c) + "," + std::to_string(d) + ") != 1");
  }
  KraftDatum out{c + d, c, {}};
  for (int i = 1; i <= out.r; ++i) out.pi.push_back(((i + d - 1) % out.r) + 1);
  return out;
}

KraftDatum direct_sum(const KraftDatum& a, const KraftDatum& b) {
  a.validate();
  b.validate();
  const int c = a.c + b.c;
  const int r = a.r + b.r;
  auto label_a = [&](int i) { return i <= a.c ? i : c + (i - a.c); };
  auto label_b = [&](int i) { return i <= b.c ? a.c + i : c + a.d() + (i - b.c); };
  KraftDatum out{r, c, std::vector<int>(r, 0)};
  for (int i = 1; i <= a.r; ++i) out.pi[label_a(i) - 1] = label_a(a.apply(i));
  for (int i = 1; i <= b.r; ++i) out.pi[label_b(i) - 1] = label_b(b.apply(i));
  out.validate();
  return out;
}

int a_number(const KraftDatum& datum) {
  datum.validate();
  int count = 0;
  for (int i = 1; i <= datum.c; ++i) count += datum.apply(i) > datum.c ? 1 : 0;
  return count;
}

int cycle_lcm(const KraftDatum& datum) {
  datum.validate();
  std::vector<bool> seen(datum.r + 1, false);
  int out = 1;
  for (int i = 1; i <= datum.r; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = datum.apply(j)) {
      seen[j] = true;
      ++len;
    }
    out = std::lcm(out, len);
  }
  return out;
}

DieudonneTruncation to_truncation(const KraftDatum& datum, const RingPtr& ring,
                                  const std::optional<MatrixW>& g) {
  datum.validate();
  const MatrixW S = MatrixW::permutation(ring, datum.pi);
  return make_truncation(datum.c, datum.d(), ring, S, g ? *g : MatrixW::identity(ring, datum.r));
}

}  // namespace tbt
