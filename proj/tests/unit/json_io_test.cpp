#include <gtest/gtest.h>

#include "tbt/error.hpp"
#include "tbt/json_io.hpp"

namespace tbt::io {
namespace {

Json reparse(const Json& j) { return Json::parse(j.dump()); }

TEST(JsonIo, RingRoundTrip) {
  for (const auto& [p, n, m] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {3, 3, 2}, {5, 2, 3}}) {
    const auto R = WittRing::make(p, n, m);
    const Json j = reparse(to_json(R->descriptor()));
    EXPECT_EQ(j["p"], p);
    EXPECT_TRUE(ring_from_json(j)->same_as(*R));
  }
  EXPECT_TRUE(ring_from_json(Json{{"p", 2}, {"n", 2}, {"m", 1}})->same_as(*WittRing::make(2, 2, 1)));
}

TEST(JsonIo, ElementFormat) {
  const auto R = WittRing::make(3, 2, 2);
  const Coeffs a = R->from_coeffs(std::vector<std::int64_t>{4, 8});
  EXPECT_EQ(element_to_json(*R, a), Json::array({4, 8}));
  EXPECT_EQ(element_from_json(*R, Json::array({4, 8})), a);
  EXPECT_THROW((void)element_from_json(*R, Json::array({9, 0})), Error);
  EXPECT_THROW((void)element_from_json(*R, Json::array({1})), Error);
}

TEST(JsonIo, MatrixAndTruncationRoundTrip) {
  const auto R = WittRing::make(2, 2, 2);
  const auto D = to_truncation(minimal_datum(2, 1), R, std::nullopt);
  const MatrixW g = MatrixW::from_ints(R, {{1, 2, 0}, {1, 1, 0}, {3, 0, 1}});
  EXPECT_EQ(matrix_from_json(reparse(to_json(g))), g);
  const auto E = make_truncation(2, 1, R, D.S(), g);
  const auto back = truncation_from_json(reparse(to_json(E)));
  EXPECT_EQ(back.A(), E.A());
  EXPECT_EQ(back.V(), E.V());
  EXPECT_EQ(to_json(back), to_json(E));
}

TEST(JsonIo, TruncationLoadReverifies) {
  const auto R = WittRing::make(2, 1, 1);
  Json j = to_json(make_truncation(1, 1, R, MatrixW::identity(R, 2), MatrixW::identity(R, 2)));
  j["g"] = to_json(MatrixW::from_ints(R, {{1, 1}, {1, 1}}));
  try {
    (void)truncation_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNotInvertible);
  }
}

TEST(JsonIo, KraftAndPolygon) {
  const KraftDatum k = direct_sum(minimal_datum(2, 1), minimal_datum(1, 1));
  EXPECT_EQ(kraft_from_json(reparse(to_json(k))), k);
  EXPECT_THROW((void)kraft_from_json(Json{{"r", 2}, {"c", 1}, {"pi", {1, 1}}}), Error);

  const NewtonPolygon np({{1, 1}, {2, 1}});
  const Json j = reparse(to_json(np));
  EXPECT_EQ(j["blocks"], Json::parse("[[2,1],[1,1]]"));
  EXPECT_EQ(j["slopes"], Json::parse(R"(["1/3","1/2"])"));
  EXPECT_EQ(polygon_from_json(j), np);
}

TEST(JsonIo, Rationals) {
  EXPECT_EQ(rational_from_string("2/4"), Rational(1, 2));
  EXPECT_EQ(rational_from_string("-3"), Rational(-3));
  EXPECT_EQ(rational_to_string(Rational(6, 4)), "3/2");
  for (const char* bad : {"1/0", "a/b", "1/2x", ""}) EXPECT_THROW((void)rational_from_string(bad), Error);
}

TEST(JsonIo, OrbitReportAndContext) {
  const auto R = WittRing::make(2, 1, 1);
  const auto ctx = minimal_context(1, 1, R);
  const auto report = orbit_bfs(ctx, MatrixW::identity(R, 2));
  const Json j = reparse(orbit_report_to_json(ctx, report, stabilizer_count(ctx, report.seed),
                                              group_order(ctx)));
  EXPECT_EQ(j["orbit_size"].get<std::uint64_t>() * j["stabilizer_count"].get<std::uint64_t>(),
            j["group_order"].get<std::uint64_t>());
  EXPECT_EQ(matrix_from_json(j["canonical"]), report.canonical);
  const auto back = context_from_json(j["context"]);
  EXPECT_EQ(back.S, ctx.S);
  EXPECT_EQ(to_json(back), to_json(ctx));
}

TEST(JsonIo, LevelReport) {
  const auto R = WittRing::make(2, 1, 2);
  const auto ctx = ordinary_context(1, 1, R);
  const auto report = level_experiment(ctx, 1, enumerate_gl(R, 2));
  const Json j = reparse(to_json(report));
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(j["classes"].size(), report.classes.size());
  for (const auto& cls : j["classes"]) {
    EXPECT_EQ(cls["polygons"].size(), 1u);
    EXPECT_FALSE(cls["violation"].get<bool>());
  }
}

}  // namespace
}  // namespace tbt::io
