#include <gtest/gtest.h>

#include "tbt/error.hpp"
#include "tbt/matrix.hpp"

namespace tbt {
namespace {

TEST(MatrixW, InverseOfIdentity) {
  const auto R = WittRing::make(2, 2, 2);
  EXPECT_EQ(MatrixW::identity(R, 3).inverse(), MatrixW::identity(R, 3));
}

TEST(MatrixW, UnipotentInverseModFour) {
  const auto R = WittRing::make(2, 1, 2);
  const auto a = MatrixW::from_ints(R, {{1, 2}, {0, 1}});
  EXPECT_EQ(a.inverse(), a);
}

TEST(MatrixW, SingularResidue) {
  const auto R = WittRing::make(3, 1, 2);
  const auto a = MatrixW::from_ints(R, {{1, 2}, {2, 4}});
  try {
    (void)a.inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNotInvertible);
  }
  EXPECT_FALSE(a.residue_invertible());
  EXPECT_EQ(a.residue_rank(), 1);
}

TEST(MatrixW, ShapeMismatch) {
  const auto R = WittRing::make(2, 1, 1);
  try {
    (void)(MatrixW::identity(R, 2) * MatrixW::identity(R, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kShapeMismatch);
  }
}

TEST(MatrixW, SigmaOverPrimeFieldIsTrivial) {
  const auto R = WittRing::make(3, 1, 2);
  const auto a = MatrixW::from_ints(R, {{1, 5}, {7, 2}});
  EXPECT_EQ(a.frobenius(1), a);
}

TEST(MatrixW, InverseRandomized) {
  const auto R = WittRing::make(3, 2, 2);
  std::uint64_t seed = 12345;
  auto next = [&] {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    return seed >> 33;
  };
  int inverted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    MatrixW a(R, 3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = R->from_index(next() % R->size());
    }
    if (!a.residue_invertible()) continue;
    ++inverted;
    const auto b = a.inverse();
    EXPECT_TRUE((a * b).is_identity());
    EXPECT_TRUE((b * a).is_identity());
    EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
  }
  EXPECT_GT(inverted, 50);
}

TEST(MatrixW, KeyRoundTripAndOrder) {
  const auto R = WittRing::make(3, 2, 2);
  const auto a = MatrixW::from_ints(R, {{1, 5}, {7, 2}});
  EXPECT_EQ(MatrixW::from_key(R, 2, 2, a.key()), a);
  const auto b = MatrixW::from_ints(R, {{1, 5}, {7, 3}});
  EXPECT_LT(a.key(), b.key());
}

TEST(MatrixW, PermutationConvention) {
  const auto R = WittRing::make(2, 1, 1);
  const auto P = MatrixW::permutation(R, {2, 3, 1});
  EXPECT_EQ(P(1, 0), R->one());
  EXPECT_EQ(P(2, 1), R->one());
  EXPECT_EQ(P(0, 2), R->one());
}

}  // namespace
}  // namespace tbt
