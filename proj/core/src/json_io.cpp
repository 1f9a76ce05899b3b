#include "tbt/json_io.hpp"

#include <fstream>

#include "tbt/error.hpp"

namespace tbt::io {

namespace {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    raise(Errc::kInvalidArgument, std::string("missing field \"") + name + "\"");
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::kInvalidArgument, std::string("bad field \"") + name + "\": " + e.what());
  }
}

}  // namespace

Json to_json(const RingDescriptor& ring) {
  return {{"p", ring.p}, {"n", ring.n}, {"m", ring.m}, {"modulus", ring.modulus}};
}

RingPtr ring_from_json(const Json& j) {
  RingDescriptor desc;
  desc.p = field<int>(j, "p");
  desc.n = field<int>(j, "n");
  desc.m = field<int>(j, "m");
  if (j.contains("modulus")) {
    desc.modulus = field<std::vector<std::int64_t>>(j, "modulus");
  } else {
    desc.modulus = WittRing::default_modulus(desc.p, desc.n);
  }
  return WittRing::make(desc);
}

Json element_to_json(const WittRing& ring, const Coeffs& a) {
  Json out = Json::array();
  for (int k = 0; k < ring.n(); ++k) out.push_back(a[k]);
  return out;
}

Coeffs element_from_json(const WittRing& ring, const Json& j) {
  if (j.is_number_integer()) return ring.from_int(j.get<std::int64_t>());
  require(j.is_array() && static_cast<int>(j.size()) == ring.n(), Errc::kInvalidArgument,
          "element must be an array of n integers");
  std::vector<std::int64_t> values;
  for (const auto& v : j) {
    require(v.is_number_integer(), Errc::kInvalidArgument, "element coefficients must be integers");
    const auto x = v.get<std::int64_t>();
    require(x >= 0 && x < static_cast<std::int64_t>(ring.characteristic()), Errc::kInvalidArgument,
            "element coefficient out of range [0, p^m)");
    values.push_back(x);
  }
  return ring.from_coeffs(values);
}

Json to_json(const MatrixW& x) {
  Json entries = Json::array();
  for (int i = 0; i < x.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < x.cols(); ++j) row.push_back(element_to_json(x.r(), x(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"ring", to_json(x.r().descriptor())}, {"rows", x.rows()}, {"cols", x.cols()},
          {"entries", std::move(entries)}};
}

MatrixW matrix_from_json(const Json& j) {
  const RingPtr ring = ring_from_json(field<Json>(j, "ring"));
  const int rows = field<int>(j, "rows");
  const int cols = field<int>(j, "cols");
  const Json entries = field<Json>(j, "entries");
  require(rows >= 0 && cols >= 0, Errc::kInvalidArgument, "negative matrix shape");
  require(entries.is_array() && static_cast<int>(entries.size()) == rows, Errc::kShapeMismatch,
          "entries do not match rows");
  MatrixW out(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(entries[i].is_array() && static_cast<int>(entries[i].size()) == cols,
            Errc::kShapeMismatch, "entries do not match cols");
    for (int c = 0; c < cols; ++c) out(i, c) = element_from_json(*ring, entries[i][c]);
  }
  return out;
}

Json to_json(const DieudonneTruncation& D) {
  return {{"c", D.c()}, {"d", D.d()}, {"ring", to_json(D.ring()->descriptor())},
          {"S", to_json(D.S())}, {"g", to_json(D.g())}};
}

DieudonneTruncation truncation_from_json(const Json& j) {
  const RingPtr ring = ring_from_json(field<Json>(j, "ring"));
  const MatrixW S = matrix_from_json(field<Json>(j, "S")).change_precision(ring);
  const MatrixW g = matrix_from_json(field<Json>(j, "g")).change_precision(ring);
  return make_truncation(field<int>(j, "c"), field<int>(j, "d"), ring, S, g);
}

Json to_json(const KraftDatum& datum) {
  return {{"r", datum.r}, {"c", datum.c}, {"pi", datum.pi}};
}

KraftDatum kraft_from_json(const Json& j) {
  KraftDatum out{field<int>(j, "r"), field<int>(j, "c"), field<std::vector<int>>(j, "pi")};
  out.validate();
  return out;
}

std::string rational_to_string(const Rational& x) {
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const auto v = std::stoll(s, &used);
      require(used == s.size(), Errc::kInvalidArgument, "bad rational: " + s);
      return Rational(v);
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    const auto a = std::stoll(num, &used);
    require(used == num.size(), Errc::kInvalidArgument, "bad rational: " + s);
    const auto b = std::stoll(den, &used);
    require(used == den.size() && b != 0, Errc::kInvalidArgument, "bad rational: " + s);
    return Rational(a, b);
  } catch (const std::logic_error&) {
    raise(Errc::kInvalidArgument, "bad rational: " + s);
  }
}

Json to_json(const NewtonPolygon& np) {
  Json blocks = Json::array();
  for (const auto& [c, d] : np.blocks()) blocks.push_back({c, d});
  Json slopes = Json::array();
  for (const auto& s : np.slopes()) slopes.push_back(rational_to_string(s));
  return {{"blocks", std::move(blocks)}, {"slopes", std::move(slopes)}};
}

NewtonPolygon polygon_from_json(const Json& j) {
  std::vector<std::pair<int, int>> blocks;
  for (const auto& b : field<Json>(j, "blocks")) {
    require(b.is_array() && b.size() == 2, Errc::kInvalidArgument, "block must be [c, d]");
    blocks.emplace_back(b[0].get<int>(), b[1].get<int>());
  }
  return NewtonPolygon(std::move(blocks));
}

Json to_json(const ActionContext& ctx) {
  return {{"c", ctx.c}, {"d", ctx.d}, {"ring", to_json(ctx.ring->descriptor())},
          {"S", to_json(ctx.S)}, {"symplectic", ctx.symplectic.has_value()}};
}

ActionContext context_from_json(const Json& j) {
  const RingPtr ring = ring_from_json(field<Json>(j, "ring"));
  const MatrixW S = matrix_from_json(field<Json>(j, "S")).change_precision(ring);
  const bool symplectic = j.contains("symplectic") && field<bool>(j, "symplectic");
  return make_context(field<int>(j, "c"), field<int>(j, "d"), ring, S, symplectic);
}

Json orbit_report_to_json(const ActionContext& ctx, const OrbitReport& report,
                          std::uint64_t stabilizer_count, std::uint64_t group_order) {
  return {{"context", to_json(ctx)},
          {"seed", to_json(report.seed)},
          {"orbit_size", report.size},
          {"canonical", to_json(report.canonical)},
          {"stabilizer_count", stabilizer_count},
          {"group_order", group_order}};
}

Json to_json(const DimFit& fit) {
  return {{"estimate", fit.estimate}, {"slope", fit.slope}, {"residual", fit.residual},
          {"reliable", fit.reliable}};
}

Json to_json(const LevelExperimentReport& report) {
  Json classes = Json::array();
  for (const auto& cls : report.classes) {
    Json polys = Json::array();
    for (const auto& np : cls.polygons) polys.push_back(to_json(np));
    classes.push_back({{"canonical", cls.canonical.rows() == 0 ? Json(nullptr) : to_json(cls.canonical)},
                       {"members", cls.members},
                       {"polygons", std::move(polys)},
                       {"uncertain", cls.uncertain},
                       {"violation", cls.violation}});
  }
  Json polys = Json::array();
  for (const auto& np : report.polygons) polys.push_back(to_json(np));
  return {{"level", report.level},
          {"precision", report.precision},
          {"elements", report.elements},
          {"violations", report.violations},
          {"minimal_separating_level", report.minimal_separating_level},
          {"polygons", std::move(polys)},
          {"classes", std::move(classes)}};
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::kInvalidArgument, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::kInvalidArgument, "cannot parse " + path + ": " + e.what());
  }
}

}  // namespace tbt::io
