#include <gtest/gtest.h>

#include <set>

#include "tbt/error.hpp"
#include "tbt/zpm.hpp"

namespace tbt {
namespace {

std::set<ZpmVector> solutions(const SolutionModule& s) {
  std::set<ZpmVector> out;
  s.enumerate([&](const ZpmVector& x) { out.insert(x); }, 1'000'000);
  return out;
}

TEST(SolveZpm, SingleCongruence) {
  const auto s = solve_linear_zpm(2, 2, 1, {{1}});
  EXPECT_EQ(s.cardinality(), 1u);
  const auto t = solve_linear_zpm(2, 3, 1, {{2}});
  EXPECT_EQ(t.cardinality(), 2u);
  EXPECT_EQ(solutions(t), (std::set<ZpmVector>{{0}, {4}}));
}

TEST(SolveZpm, EvenResidues) {
  // x = 0 mod 2 in Z/4 is the kernel of multiplication by 2.
  const auto s = solve_linear_zpm(2, 2, 1, {{2}});
  EXPECT_EQ(solutions(s), (std::set<ZpmVector>{{0}, {2}}));
}

TEST(SolveZpm, EmptySystem) {
  const auto s = solve_linear_zpm(3, 2, 3, {});
  EXPECT_EQ(s.log_cardinality(), 6);
  EXPECT_EQ(solutions(s).size(), 729u);
}

TEST(SolveZpm, BudgetIsEnforced) {
  const auto s = solve_linear_zpm(2, 4, 6, {});
  try {
    s.enumerate([](const ZpmVector&) {}, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEnumerationTooLarge);
  }
}

// Brute force over all vectors for random small systems.
TEST(SolveZpm, MatchesBruteForce) {
  std::uint64_t seed = 99;
  auto next = [&] {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::uint32_t>(seed >> 33);
  };
  const int cases[][3] = {{2, 3, 3}, {3, 2, 3}, {2, 2, 4}, {5, 1, 3}, {2, 4, 2}};
  for (const auto& cs : cases) {
    const int p = cs[0], m = cs[1], N = cs[2];
    std::uint32_t mod = 1;
    for (int i = 0; i < m; ++i) mod *= p;
    for (int trial = 0; trial < 30; ++trial) {
      const int E = 1 + static_cast<int>(next() % 4);
      std::vector<ZpmVector> eqs(E, ZpmVector(N));
      for (auto& row : eqs) {
        for (auto& v : row) {
          // Bias towards entries of positive valuation.
          v = next() % mod;
          if (next() % 2) v = (v * p) % mod;
        }
      }
      const auto s = solve_linear_zpm(p, m, N, eqs);
      std::set<ZpmVector> brute;
      std::uint64_t total = 1;
      for (int i = 0; i < N; ++i) total *= mod;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        ZpmVector x(N);
        std::uint64_t t = idx;
        for (int i = 0; i < N; ++i) {
          x[i] = static_cast<std::uint32_t>(t % mod);
          t /= mod;
        }
        if (s.contains(x, eqs)) brute.insert(x);
      }
      EXPECT_EQ(solutions(s), brute);
      EXPECT_EQ(s.cardinality(), brute.size());
    }
  }
}

}  // namespace
}  // namespace tbt
