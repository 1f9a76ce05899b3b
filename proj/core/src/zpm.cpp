#include "tbt/zpm.hpp"

#include <limits>
#include <utility>

#include "tbt/error.hpp"

namespace tbt {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int vp(std::uint64_t a, int p, int m) {
  if (a == 0) return m;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

// Inverse of a unit modulo p^m by extended Euclid.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(mod), nr = static_cast<std::int64_t>(a % mod);
  while (nr != 0) {
    const std::int64_t quot = r / nr;
    t = std::exchange(nt, t - quot * nt);
    r = std::exchange(nr, r - quot * nr);
  }
  if (t < 0) t += static_cast<std::int64_t>(mod);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

int SolutionModule::log_cardinality() const {
  int s = 0;
  for (int e : order_exponents) s += e;
  return s;
}

std::uint64_t SolutionModule::cardinality() const {
  const int e = log_cardinality();
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(p)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= static_cast<std::uint64_t>(p);
  }
  return r;
}

bool SolutionModule::contains(const ZpmVector& x, const std::vector<ZpmVector>& equations) const {
  const std::uint64_t mod = ipow(p, m);
  for (const auto& row : equations) {
    std::uint64_t acc = 0;
    for (int j = 0; j < unknowns; ++j) acc = (acc + (row[j] % mod) * x[j]) % mod;
    if (acc != 0) return false;
  }
  return true;
}

void SolutionModule::enumerate(const std::function<void(const ZpmVector&)>& visit,
                               std::uint64_t cap) const {
  const std::uint64_t total = cardinality();
  if (total > cap) {
    raise(Errc::kEnumerationTooLarge,
          "solution module has " + std::to_string(total) + " elements, cap " + std::to_string(cap));
  }
  const std::uint32_t mod = static_cast<std::uint32_t>(ipow(p, m));
  const std::size_t k = generators.size();
  std::vector<std::uint64_t> digit(k, 0), radix(k);
  for (std::size_t t = 0; t < k; ++t) radix[t] = ipow(p, order_exponents[t]);
  ZpmVector x(unknowns, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    visit(x);
    // Odometer: a wrapping digit returns to zero because radix * generator = 0.
    for (std::size_t t = 0; t < k; ++t) {
      const ZpmVector& g = generators[t];
      for (int j = 0; j < unknowns; ++j) x[j] = (x[j] + g[j]) % mod;
      if (++digit[t] < radix[t]) break;
      digit[t] = 0;
    }
  }
}

SolutionModule solve_linear_zpm(int p, int m, int unknowns, std::vector<ZpmVector> equations) {
  require(p >= 2 && m >= 1 && unknowns >= 0, Errc::kInvalidArgument, "bad solver parameters");
  const std::uint64_t mod = ipow(p, m);
  require(mod <= (std::uint64_t{1} << 31), Errc::kInvalidArgument, "p^m too large");
  const int rows = static_cast<int>(equations.size());
  for (auto& row : equations) {
    require(static_cast<int>(row.size()) == unknowns, Errc::kShapeMismatch, "equation length");
    for (auto& v : row) v = static_cast<std::uint32_t>(v % mod);
  }
  auto& a = equations;
  // Column transformation, stored column-major: q[j] is column j.
  std::vector<ZpmVector> q(unknowns, ZpmVector(unknowns, 0));
  for (int j = 0; j < unknowns; ++j) q[j][j] = 1;

  std::vector<int> pivot_val;
  int t = 0;
  for (; t < rows && t < unknowns; ++t) {
    int best_v = m, bi = -1, bj = -1;
    for (int i = t; i < rows && best_v > 0; ++i) {
      for (int j = t; j < unknowns; ++j) {
        const int v = vp(a[i][j], p, m);
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (bi < 0) break;
    std::swap(a[t], a[bi]);
    if (bj != t) {
      for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][bj]);
      std::swap(q[t], q[bj]);
    }
    const std::uint64_t pv = ipow(p, best_v);
    const std::uint64_t unit = a[t][t] / pv;
    const std::uint64_t uinv = inv_mod(unit, mod);
    for (int j = t; j < unknowns; ++j) a[t][j] = static_cast<std::uint32_t>((a[t][j] * uinv) % mod);
    // Now a[t][t] = p^v; every entry of the active block is divisible by p^v.
    for (int i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      const std::uint64_t f = a[i][t] / pv;
      for (int j = t; j < unknowns; ++j) {
        a[i][j] = static_cast<std::uint32_t>((a[i][j] + mod * mod - (f * a[t][j]) % mod) % mod);
      }
    }
    for (int j = t + 1; j < unknowns; ++j) {
      if (a[t][j] == 0) continue;
      const std::uint64_t f = a[t][j] / pv;
      a[t][j] = 0;
      for (int i = 0; i < unknowns; ++i) {
        q[j][i] = static_cast<std::uint32_t>((q[j][i] + mod - (f * q[t][i]) % mod) % mod);
      }
    }
    pivot_val.push_back(best_v);
  }

  SolutionModule out;
  out.p = p;
  out.m = m;
  out.unknowns = unknowns;
  const int rank = static_cast<int>(pivot_val.size());
  for (int k = 0; k < rank; ++k) {
    const int v = pivot_val[k];
    if (v == 0) continue;
    const std::uint64_t scale = ipow(p, m - v);
    ZpmVector g(unknowns);
    for (int i = 0; i < unknowns; ++i) g[i] = static_cast<std::uint32_t>((q[k][i] * scale) % mod);
    out.generators.push_back(std::move(g));
    out.order_exponents.push_back(v);
  }
  for (int k = rank; k < unknowns; ++k) {
    out.generators.push_back(q[k]);
    out.order_exponents.push_back(m);
  }
  return out;
}

}  // namespace tbt
