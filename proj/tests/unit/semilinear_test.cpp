#include <gtest/gtest.h>

#include <set>

#include "tbt/error.hpp"
#include "tbt/semilinear.hpp"

namespace tbt {
namespace {

struct Lcg {
  std::uint64_t s;
  std::uint64_t operator()() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 33;
  }
};

MatrixW random_gl(const RingPtr& R, int r, Lcg& rng) {
  for (;;) {
    MatrixW a(R, r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) a(i, j) = R->from_index(rng() % R->size());
    }
    if (a.residue_invertible()) return a;
  }
}

DieudonneTruncation ordinary(const RingPtr& R) {
  return make_truncation(1, 1, R, MatrixW::identity(R, 2), MatrixW::identity(R, 2));
}

DieudonneTruncation supersingular(const RingPtr& R) {
  return make_truncation(1, 1, R, MatrixW::permutation(R, {2, 1}), MatrixW::identity(R, 2));
}

TEST(Truncation, OrdinaryBase) {
  const auto R = WittRing::make(3, 1, 2);
  const auto D = ordinary(R);
  EXPECT_EQ(D.A(), MatrixW::from_ints(R, {{1, 0}, {0, 3}}));
  EXPECT_EQ(D.V(), MatrixW::from_ints(R, {{3, 0}, {0, 1}}));
}

TEST(Truncation, SupersingularBase) {
  const auto R = WittRing::make(2, 1, 3);
  const auto D = supersingular(R);
  EXPECT_EQ(D.A(), MatrixW::from_ints(R, {{0, 2}, {1, 0}}));
  // sigma^{-1}(diag(p,1) * P^{-1}) with P the transposition matrix.
  EXPECT_EQ(D.V(), MatrixW::from_ints(R, {{0, 2}, {1, 0}}));
  EXPECT_EQ(D.A() * D.V().frobenius(), MatrixW::identity(R, 2).scaled(2));
  EXPECT_EQ(linearize(D, 1), D.A());
  EXPECT_EQ(linearize(D, 2), MatrixW::identity(R, 2).scaled(2));
}

TEST(Truncation, RejectsSingularInput) {
  const auto R = WittRing::make(2, 1, 2);
  const auto bad = MatrixW::from_ints(R, {{1, 1}, {1, 1}});
  try {
    (void)make_truncation(1, 1, R, bad, MatrixW::identity(R, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNotInvertible);
  }
}

TEST(Truncation, RandomInvariants) {
  Lcg rng{7};
  for (const auto& [p, n, m] : std::vector<std::array<int, 3>>{{2, 1, 3}, {2, 2, 2}, {3, 2, 2}, {2, 3, 1}}) {
    const auto R = WittRing::make(p, n, m);
    for (int trial = 0; trial < 20; ++trial) {
      const int c = 1 + static_cast<int>(rng() % 2), d = 1 + static_cast<int>(rng() % 2);
      const auto D = make_truncation(c, d, R, random_gl(R, c + d, rng), random_gl(R, c + d, rng));
      EXPECT_NO_THROW(D.verify());
      const MatrixW pI = MatrixW::identity(R, c + d).scaled(p);
      EXPECT_EQ(D.A() * D.V().frobenius(), pI);
      EXPECT_EQ(D.V() * D.A().frobenius(-1), pI);
    }
  }
}

TEST(Hom, OrdinaryEndomorphismsAreDiagonal) {
  for (int p : {2, 3, 5}) {
    const auto R = WittRing::make(p, 1, 1);
    const auto D = ordinary(R);
    const auto mod = hom_module(D, D);
    EXPECT_EQ(mod.cardinality(), static_cast<std::uint64_t>(p * p));
    for_each_hom(D, D, [&](const MatrixW& x) {
      EXPECT_TRUE(x(0, 1) == R->zero() && x(1, 0) == R->zero());
    });
    EXPECT_EQ(aut_count(D), static_cast<std::uint64_t>((p - 1) * (p - 1)));
  }
}

TEST(Hom, ContainsScalars) {
  const auto R = WittRing::make(2, 2, 2);
  Lcg rng{3};
  const auto D = make_truncation(1, 2, R, random_gl(R, 3, rng), random_gl(R, 3, rng));
  std::set<std::string> keys;
  for_each_hom(D, D, [&](const MatrixW& x) { keys.insert(x.key()); });
  for (std::int64_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(keys.count(MatrixW::identity(R, 3).scaled(k).key())) << k;
  }
  EXPECT_GE(aut_count(D), R->count(ElementFilter::kUnits));
}

// Direct check of both commutation conditions over every r x r matrix.
TEST(Hom, MatchesBruteForce) {
  Lcg rng{11};
  for (const auto& [p, n, m] : std::vector<std::array<int, 3>>{{2, 1, 2}, {3, 1, 1}, {2, 2, 1}}) {
    const auto R = WittRing::make(p, n, m);
    for (int trial = 0; trial < 3; ++trial) {
      const auto D1 = make_truncation(1, 1, R, random_gl(R, 2, rng), random_gl(R, 2, rng));
      const auto D2 = make_truncation(1, 1, R, random_gl(R, 2, rng), random_gl(R, 2, rng));
      std::set<std::string> solver, brute;
      for_each_hom(D1, D2, [&](const MatrixW& x) { solver.insert(x.key()); });
      const std::uint64_t total = R->size() * R->size() * R->size() * R->size();
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        MatrixW x(R, 2, 2);
        std::uint64_t t = idx;
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            x(i, j) = R->from_index(t % R->size());
            t /= R->size();
          }
        }
        if (x * D1.A() == D2.A() * x.frobenius(1) && x * D1.V() == D2.V() * x.frobenius(-1)) {
          brute.insert(x.key());
        }
      }
      EXPECT_EQ(solver, brute);
    }
  }
}

TEST(Hom, EndomorphismsPreserveKernelOfFrobenius) {
  Lcg rng{5};
  const auto R = WittRing::make(2, 2, 2);
  const auto F = R->residue_field();
  const auto D = make_truncation(1, 2, R, MatrixW::permutation(R, {2, 3, 1}), random_gl(R, 3, rng));
  const MatrixW Abar = D.A().change_precision(F);
  // ker of v -> Abar sigma(v) over F_4^3.
  std::vector<MatrixW> kernel;
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    MatrixW v(F, 3, 1);
    std::uint64_t t = idx;
    for (int i = 0; i < 3; ++i) {
      v(i, 0) = F->from_index(t % 4);
      t /= 4;
    }
    if ((Abar * v.frobenius()).is_zero()) kernel.push_back(v);
  }
  EXPECT_EQ(kernel.size(), 16u);
  for_each_hom(D, D, [&](const MatrixW& x) {
    const MatrixW xb = x.change_precision(F);
    for (const auto& v : kernel) EXPECT_TRUE((Abar * (xb * v).frobenius()).is_zero());
  });
}

TEST(Hom, SolutionsReduceToLowerPrecision) {
  Lcg rng{17};
  const auto R = WittRing::make(2, 1, 3);
  const auto D = make_truncation(2, 1, R, random_gl(R, 3, rng), random_gl(R, 3, rng));
  const auto D1 = change_precision(D, 1);
  const auto D2 = change_precision(D, 2);
  for_each_hom(D, D, [&](const MatrixW& x) {
    for (const auto* Dl : {&D1, &D2}) {
      const MatrixW y = x.change_precision(Dl->ring());
      EXPECT_EQ(y * Dl->A(), Dl->A() * y.frobenius());
      EXPECT_EQ(y * Dl->V(), Dl->V() * y.frobenius(-1));
    }
  });
}

TEST(Dual, DoubleDualIsIdentity) {
  Lcg rng{23};
  const auto R = WittRing::make(3, 2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 2), d = 1 + static_cast<int>(rng() % 3);
    const auto D = make_truncation(c, d, R, random_gl(R, c + d, rng), random_gl(R, c + d, rng));
    const auto E = cartier_dual(D);
    EXPECT_EQ(E.c(), d);
    EXPECT_EQ(E.d(), c);
    const auto F = cartier_dual(E);
    EXPECT_EQ(F.A(), D.A());
    EXPECT_EQ(F.V(), D.V());
  }
}

TEST(Dual, MatricesAreTransposedAndShifted) {
  Lcg rng{29};
  const auto R = WittRing::make(2, 2, 2);
  const auto D = make_truncation(1, 2, R, random_gl(R, 3, rng), random_gl(R, 3, rng));
  const auto E = cartier_dual(D);
  // Reordering: the new F^0 is the old F^1.
  const auto Q = MatrixW::permutation(R, {3, 1, 2});
  EXPECT_EQ(E.A(), Q * D.V().frobenius().transpose() * Q.transpose());
  EXPECT_EQ(E.V(), Q * D.A().frobenius(-1).transpose() * Q.transpose());
}

TEST(Dual, HomCardinalitiesMatch) {
  Lcg rng{31};
  for (const auto& [p, n, m] : std::vector<std::array<int, 3>>{{2, 1, 2}, {2, 2, 1}, {3, 1, 2}}) {
    const auto R = WittRing::make(p, n, m);
    for (int trial = 0; trial < 4; ++trial) {
      const auto D1 = make_truncation(1, 2, R, random_gl(R, 3, rng), random_gl(R, 3, rng));
      const auto D2 = make_truncation(1, 2, R, random_gl(R, 3, rng), random_gl(R, 3, rng));
      EXPECT_EQ(hom_module(D1, D2).cardinality(),
                hom_module(cartier_dual(D2), cartier_dual(D1)).cardinality());
      EXPECT_EQ(aut_count(D1), aut_count(cartier_dual(D1)));
    }
  }
  const auto R = WittRing::make(2, 1, 1);
  EXPECT_EQ(aut_count(cartier_dual(ordinary(R))), aut_count(ordinary(R)));
}

TEST(BaseChange, EmbedsConstants) {
  const auto R1 = WittRing::make(2, 1, 2);
  const auto R2 = WittRing::make(2, 3, 2);
  const auto D = base_change(supersingular(R1), R2);
  EXPECT_EQ(D.A(), MatrixW::from_ints(R2, {{0, 2}, {1, 0}}));
  try {
    (void)base_change(D, WittRing::make(2, 2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidArgument);
  }
}

}  // namespace
}  // namespace tbt
