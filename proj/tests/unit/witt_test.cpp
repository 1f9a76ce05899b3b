#include <gtest/gtest.h>

#include <ostream>
#include <vector>

#include "tbt/error.hpp"
#include "tbt/witt.hpp"

namespace tbt {
namespace {

WittElement elem(const RingPtr& R, std::vector<std::int64_t> c) {
  return WittElement::from_coeffs(R, c);
}

TEST(WittRing, DefaultModuli) {
  EXPECT_EQ(WittRing::default_modulus(2, 2), (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(WittRing::default_modulus(2, 3), (std::vector<std::int64_t>{1, 1, 0, 1}));
  EXPECT_EQ(WittRing::default_modulus(3, 3), (std::vector<std::int64_t>{1, 2, 0, 1}));
  EXPECT_EQ(WittRing::default_modulus(3, 2), (std::vector<std::int64_t>{1, 0, 1}));
}

TEST(WittRing, RejectsBadDescriptors) {
  EXPECT_THROW(WittRing::make(4, 1, 1), Error);
  EXPECT_THROW(WittRing::make(RingDescriptor{2, 2, 1, {1, 0, 1}}), Error);
  EXPECT_THROW(WittRing::make(RingDescriptor{2, 2, 1, {1, 1, 2}}), Error);
  EXPECT_THROW(WittRing::make(2, 1, 40), Error);
}

TEST(WittRing, IntegerArithmetic) {
  const auto R = WittRing::make(2, 1, 3);
  EXPECT_EQ(WittElement::from_int(R, 5) + WittElement::from_int(R, 6), WittElement::from_int(R, 3));
  const auto a = WittElement::from_int(R, 7);
  EXPECT_EQ(a * WittElement::from_int(R, 1), a);
  EXPECT_EQ(WittElement::from_int(R, 3).inverse(), WittElement::from_int(R, 3));
  try {
    (void)WittElement::from_int(R, 2).inverse();
    FAIL() << "expected NotAUnit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNotAUnit);
  }
}

TEST(WittRing, QuadraticExtension) {
  const auto R = WittRing::make(2, 2, 2);
  const auto x = elem(R, {0, 1});
  EXPECT_EQ(x * x, elem(R, {3, 3}));
  EXPECT_EQ(x.inverse(), elem(R, {3, 3}));
  EXPECT_EQ(x * x.inverse(), WittElement::from_int(R, 1));
  EXPECT_EQ(x.frobenius(), elem(R, {3, 3}));
  EXPECT_EQ(x.frobenius(-1), elem(R, {3, 3}));
  EXPECT_EQ(teichmuller(R, elem(R->residue_field(), {0, 1})), x);
  EXPECT_EQ(elem(R, {3, 3}).change_precision(1), elem(R->residue_field(), {1, 1}));
}

TEST(WittRing, RingMismatch) {
  const auto a = WittElement::from_int(WittRing::make(2, 1, 2), 1);
  const auto b = WittElement::from_int(WittRing::make(2, 1, 3), 1);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kRingMismatch);
  }
}

TEST(WittRing, Valuation) {
  const auto R = WittRing::make(2, 1, 3);
  EXPECT_EQ(WittElement::from_int(R, 4).valuation(), 2);
  EXPECT_EQ(WittElement::from_int(R, 1).valuation(), 0);
  EXPECT_EQ(WittElement::from_int(R, 0).valuation(), kInfiniteValuation);
  const auto R2 = WittRing::make(3, 2, 3);
  EXPECT_EQ(elem(R2, {3, 6}).valuation(), 1);
  EXPECT_EQ(elem(R2, {9, 0}).valuation(), 2);
}

TEST(WittRing, ChangePrecision) {
  const auto R = WittRing::make(2, 1, 3);
  EXPECT_EQ(WittElement::from_int(R, 5).change_precision(1).to_vector(), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(WittElement::from_int(R, 5).change_precision(3), WittElement::from_int(R, 5));
  try {
    (void)WittElement::from_int(R, 5).change_precision(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kPrecisionIncrease);
  }
}

TEST(WittRing, Enumeration) {
  const auto F2 = WittRing::make(2, 1, 1);
  const auto all = enumerate_ring(F2, ElementFilter::kAll);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].to_vector()[0], 0);
  EXPECT_EQ(all[1].to_vector()[0], 1);
  const auto units = enumerate_ring(WittRing::make(2, 1, 2), ElementFilter::kUnits);
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0].to_vector()[0], 1);
  EXPECT_EQ(units[1].to_vector()[0], 3);
  EXPECT_EQ(enumerate_ring(WittRing::make(2, 2, 1), ElementFilter::kAll).size(), 4u);
  EXPECT_EQ(WittRing::make(3, 2, 2)->count(ElementFilter::kUnits), 9u * 8u);
  try {
    (void)enumerate_ring(WittRing::make(2, 1, 5), ElementFilter::kAll, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEnumerationTooLarge);
  }
}

TEST(WittRing, IndexRoundTrip) {
  const auto R = WittRing::make(3, 2, 2);
  for (std::uint64_t i = 0; i < R->size(); ++i) EXPECT_EQ(R->index_of(R->from_index(i)), i);
}

struct RingCase {
  int p, n, m;
};

void PrintTo(const RingCase& c, std::ostream* os) { *os << c.p << '^' << c.n << " m=" << c.m; }

class WittProperties : public ::testing::TestWithParam<RingCase> {};

TEST_P(WittProperties, SigmaIsPeriodicAndLiftsPthPower) {
  const auto [p, n, m] = GetParam();
  const auto R = WittRing::make(p, n, m);
  R->for_each(ElementFilter::kAll, [&](const Coeffs& a) {
    EXPECT_EQ(R->frobenius(a, n), a);
    EXPECT_EQ(R->frobenius(R->frobenius(a, 1), -1), a);
    EXPECT_EQ(R->residue(R->frobenius(a, 1)), R->residue(R->pow(a, static_cast<std::uint64_t>(p))));
    EXPECT_EQ(R->frobenius(R->from_int(a[0]), 1), R->from_int(a[0]));
  });
}

TEST_P(WittProperties, SigmaIsAdditiveAndMultiplicative) {
  const auto [p, n, m] = GetParam();
  const auto R = WittRing::make(p, n, m);
  if (R->size() > 256) GTEST_SKIP();
  R->for_each(ElementFilter::kAll, [&](const Coeffs& a) {
    R->for_each(ElementFilter::kAll, [&](const Coeffs& b) {
      EXPECT_EQ(R->frobenius(R->add(a, b)), R->add(R->frobenius(a), R->frobenius(b)));
      EXPECT_EQ(R->frobenius(R->mul(a, b)), R->mul(R->frobenius(a), R->frobenius(b)));
    });
  });
}

TEST_P(WittProperties, TeichmullerIsMultiplicative) {
  const auto [p, n, m] = GetParam();
  const auto R = WittRing::make(p, n, m);
  const auto F = R->residue_field();
  F->for_each(ElementFilter::kAll, [&](const Coeffs& a) {
    const Coeffs ta = R->teichmuller(a);
    EXPECT_EQ(R->residue(ta), a);
    EXPECT_EQ(R->pow(ta, R->residue_size()), ta);
    F->for_each(ElementFilter::kAll, [&](const Coeffs& b) {
      EXPECT_EQ(R->teichmuller(F->mul(a, b)), R->mul(ta, R->teichmuller(b)));
    });
  });
}

TEST_P(WittProperties, InverseAndValuation) {
  const auto [p, n, m] = GetParam();
  const auto R = WittRing::make(p, n, m);
  if (R->size() > 1024) GTEST_SKIP();
  R->for_each(ElementFilter::kUnits, [&](const Coeffs& a) {
    EXPECT_EQ(R->mul(a, R->inverse(a)), R->one());
  });
  R->for_each(ElementFilter::kAll, [&](const Coeffs& a) {
    R->for_each(ElementFilter::kAll, [&](const Coeffs& b) {
      const int va = R->valuation(a), vb = R->valuation(b);
      if (va != kInfiniteValuation && vb != kInfiniteValuation && va + vb < m) {
        EXPECT_EQ(R->valuation(R->mul(a, b)), va + vb);
      }
    });
  });
}

TEST_P(WittProperties, ReductionCommutesWithOperations) {
  const auto [p, n, m] = GetParam();
  if (m == 1) GTEST_SKIP();
  const auto R = WittRing::make(p, n, m);
  if (R->size() > 256) GTEST_SKIP();
  const auto R1 = R->reduced(m - 1);
  auto red = [&](const Coeffs& a) {
    return WittElement(R, a).change_precision(m - 1).coeffs();
  };
  R->for_each(ElementFilter::kAll, [&](const Coeffs& a) {
    EXPECT_EQ(red(R->frobenius(a)), R1->frobenius(red(a)));
    R->for_each(ElementFilter::kAll, [&](const Coeffs& b) {
      EXPECT_EQ(red(R->add(a, b)), R1->add(red(a), red(b)));
      EXPECT_EQ(red(R->mul(a, b)), R1->mul(red(a), red(b)));
    });
  });
}

INSTANTIATE_TEST_SUITE_P(SmallRings, WittProperties,
                         ::testing::Values(RingCase{2, 1, 1}, RingCase{2, 1, 3}, RingCase{2, 2, 1},
                                           RingCase{2, 2, 2}, RingCase{2, 3, 2}, RingCase{3, 1, 2},
                                           RingCase{3, 2, 2}, RingCase{3, 3, 1}, RingCase{5, 2, 1},
                                           RingCase{2, 4, 1}),
                         [](const auto& info) {
                           return "p" + std::to_string(info.param.p) + "n" +
                                  std::to_string(info.param.n) + "m" + std::to_string(info.param.m);
                         });

}  // namespace
}  // namespace tbt
