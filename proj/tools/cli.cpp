#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tbt/acceptance.hpp"
#include "tbt/error.hpp"
#include "tbt/json_io.hpp"
#include "tbt/kraft.hpp"
#include "tbt/newton.hpp"
#include "tbt/orbit.hpp"

namespace tbt::cli {

namespace {

using io::Json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  raise(Errc::kInvalidArgument, "not an integer: \"" + s + "\"");
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
  return out;
}

// "2/1,1/1" -> {(2,1),(1,1)}; each entry is c/d.
std::vector<std::pair<int, int>> parse_blocks(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& part : split(s, ',')) {
    const auto cd = split(part, '/');
    require(cd.size() == 2, Errc::kInvalidArgument, "block must be written c/d: \"" + part + "\"");
    out.emplace_back(parse_int(cd[0]), parse_int(cd[1]));
  }
  require(!out.empty(), Errc::kInvalidArgument, "empty block list");
  return out;
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

// Rows come from the first top-level array of objects, else the document is one row.
std::string to_csv(const Json& doc) {
  std::vector<Json> rows;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      rows.assign(value.begin(), value.end());
      break;
    }
  }
  if (rows.empty()) rows.push_back(doc);
  std::ostringstream os;
  std::vector<std::string> columns;
  for (const auto& [key, value] : rows.front().items()) columns.push_back(key);
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << (row.contains(columns[i]) ? csv_cell(row[columns[i]]) : "");
    }
    os << '\n';
  }
  return os.str();
}

struct Global {
  std::string format = "json";
  std::optional<std::uint64_t> budget;
  std::string out_path;

  std::uint64_t orbit_budget() const { return budget.value_or(kDefaultOrbitBudget); }
  std::uint64_t enumeration_cap() const { return budget.value_or(kDefaultEnumerationCap); }
};

struct RingOpts {
  int p = 2;
  int n = 1;
  int m = 1;

  void add(CLI::App* app, int default_m = 1) {
    m = default_m;
    app->add_option("--p", p, "residue characteristic")->capture_default_str();
    app->add_option("--n", n, "residue degree, q = p^n")->capture_default_str();
    app->add_option("--m", m, "truncation level / precision")->capture_default_str();
  }
  RingPtr make() const { return WittRing::make(p, n, m); }
};

struct DatumOpts {
  std::optional<int> c, d;
  bool minimal = false;
  std::string pi;
  std::string blocks;

  void add(CLI::App* app) {
    app->add_option("--c", c, "dimension of F^0");
    app->add_option("--d", d, "dimension of F^1");
    app->add_flag("--minimal", minimal, "minimal datum for (c, d)");
    app->add_option("--pi", pi, "permutation as a 1-indexed image list, e.g. 3,1,2 (needs --c)");
    app->add_option("--blocks", blocks, "direct sum of minimal data, e.g. 2/1,1/1");
  }

  KraftDatum make() const {
    if (!pi.empty()) {
      require(c.has_value(), Errc::kInvalidArgument, "--pi needs --c");
      const auto perm = parse_int_list(pi);
      KraftDatum out{static_cast<int>(perm.size()), *c, perm};
      out.validate();
      return out;
    }
    if (!blocks.empty()) {
      const auto list = parse_blocks(blocks);
      KraftDatum out = minimal_datum(list.front().first, list.front().second);
      for (std::size_t i = 1; i < list.size(); ++i) {
        out = direct_sum(out, minimal_datum(list[i].first, list[i].second));
      }
      return out;
    }
    require(c.has_value() && d.has_value(), Errc::kInvalidArgument,
            "give --c and --d (with --minimal), --pi, or --blocks");
    return minimal_datum(*c, *d);
  }
};

void emit(const Global& g, const Json& doc, std::ostream& out) {
  std::string text;
  if (g.format == "csv") {
    text = to_csv(doc);
  } else {
    text = doc.dump(2) + "\n";
  }
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out_path);
  require(static_cast<bool>(file), Errc::kInvalidArgument, "cannot write " + g.out_path);
  file << text;
}

DieudonneTruncation load_truncation(const std::string& file, const std::string& g_file, const DatumOpts& datum,
                                    const RingOpts& ring) {
  if (!file.empty()) {
    DieudonneTruncation D = io::truncation_from_json(io::read_file(file));
    if (!g_file.empty()) {
      const MatrixW g = io::matrix_from_json(io::read_file(g_file)).change_precision(D.ring());
      return make_truncation(D.c(), D.d(), D.ring(), D.S(), g);
    }
    return D;
  }
  const RingPtr R = ring.make();
  std::optional<MatrixW> g;
  if (!g_file.empty()) g = io::matrix_from_json(io::read_file(g_file)).change_precision(R);
  return to_truncation(datum.make(), R, g);
}

Json polygon_or_uncertain(const DieudonneTruncation& D) {
  try {
    return {{"newton_polygon", io::to_json(np_from_matrix(D))}, {"uncertain", Json::array()}};
  } catch (const InsufficientPrecision& e) {
    return {{"newton_polygon", nullptr}, {"uncertain", e.uncertain()}};
  }
}

ActionContext make_action_context(const RingOpts& ring, int c, int d, const std::string& base,
                                  const std::string& S_file, bool symplectic) {
  const RingPtr R = ring.make();
  if (base == "minimal") return minimal_context(c, d, R, symplectic);
  if (base == "ordinary") return ordinary_context(c, d, R, symplectic);
  require(base == "file" && !S_file.empty(), Errc::kInvalidArgument,
          "--base must be minimal, ordinary, or file (with --S)");
  return make_context(c, d, R, io::matrix_from_json(io::read_file(S_file)).change_precision(R), symplectic);
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::kDomain: return kDomain;
    case ErrorCategory::kBudget: return kBudget;
    case ErrorCategory::kInvariant: return kInvariant;
  }
  return kInvariant;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of truncated Barsotti-Tate groups", "tbt"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--budget", global.budget, "orbit state budget and enumeration cap");
  app.add_option("--out", global.out_path, "write the report to this path");

  std::function<Json()> action;

  // kraft
  auto* kraft = app.add_subcommand("kraft", "Kraft normal-form combinatorics");
  kraft->require_subcommand(1);
  DatumOpts kraft_datum;
  auto* kraft_gamma = kraft->add_subcommand("gamma", "gamma_1 and dim O_1 of a datum");
  kraft_datum.add(kraft_gamma);
  kraft_gamma->callback([&] {
    action = [&] {
      const KraftDatum k = kraft_datum.make();
      return Json{{"gamma1", gamma1(k)}, {"dim_orbit1", dim_orbit1(k)}};
    };
  });
  auto* kraft_info = kraft->add_subcommand("datum", "datum, a-number and the set J_-^pi");
  kraft_info->add_option("--c", kraft_datum.c);
  kraft_info->add_option("--d", kraft_datum.d);
  kraft_info->add_flag("--minimal", kraft_datum.minimal);
  kraft_info->add_option("--pi", kraft_datum.pi);
  kraft_info->add_option("--blocks", kraft_datum.blocks);
  kraft_info->callback([&] {
    action = [&] {
      const KraftDatum k = kraft_datum.make();
      Json pairs = Json::array();
      for (const auto& [i, j] : j_minus_pi(k)) pairs.push_back({i, j});
      return Json{{"datum", io::to_json(k)},       {"a_number", a_number(k)},
                  {"gamma1", gamma1(k)},          {"dim_orbit1", dim_orbit1(k)},
                  {"j_minus", std::move(pairs)},  {"cycle_lcm", cycle_lcm(k)}};
    };
  });

  // traverso
  auto* traverso = app.add_subcommand("traverso", "codimension, specializing height and level of a polygon");
  std::string traverso_blocks;
  traverso->add_option("--blocks", traverso_blocks, "blocks c/d, comma-separated")->required();
  traverso->callback([&] {
    action = [&] {
      const NewtonPolygon np(parse_blocks(traverso_blocks));
      return Json{{"codim", traverso_codim(np)},
                  {"s_D", specializing_height(np)},
                  {"level", traverso_level(np.c(), np.d())}};
    };
  });

  // truncation
  auto* truncation = app.add_subcommand("truncation", "build and verify a truncated Dieudonne module");
  RingOpts trunc_ring;
  DatumOpts trunc_datum;
  std::string trunc_file, trunc_g;
  trunc_ring.add(truncation);
  trunc_datum.add(truncation);
  truncation->add_option("--file", trunc_file, "truncation JSON instead of a datum");
  truncation->add_option("--g", trunc_g, "matrix JSON for g (default identity)");
  truncation->callback([&] {
    action = [&] {
      const DieudonneTruncation D = load_truncation(trunc_file, trunc_g, trunc_datum, trunc_ring);
      Json doc = polygon_or_uncertain(D);
      doc["truncation"] = io::to_json(D);
      doc["A"] = io::to_json(D.A());
      doc["V"] = io::to_json(D.V());
      return doc;
    };
  });

  // orbit
  auto* orbit = app.add_subcommand("orbit", "orbit of g under H(W_m) by breadth-first search");
  RingOpts orbit_ring;
  int orbit_c = 1, orbit_d = 1;
  std::string orbit_base = "minimal", orbit_S, orbit_seed = "identity", orbit_stab = "count";
  bool orbit_symplectic = false;
  orbit_ring.add(orbit);
  orbit->add_option("--c", orbit_c)->capture_default_str();
  orbit->add_option("--d", orbit_d)->capture_default_str();
  orbit->add_option("--base", orbit_base, "minimal, ordinary or file")->capture_default_str();
  orbit->add_option("--S", orbit_S, "matrix JSON for S when --base file");
  orbit->add_option("--seed", orbit_seed, "identity or a matrix JSON path")->capture_default_str();
  orbit->add_option("--stabilizer", orbit_stab, "count (orbit-stabilizer) or enumerate")
      ->check(CLI::IsMember({"count", "enumerate"}))
      ->capture_default_str();
  orbit->add_flag("--symplectic", orbit_symplectic, "restrict to Sp_2d and H^G");
  orbit->callback([&] {
    action = [&] {
      const ActionContext ctx =
          make_action_context(orbit_ring, orbit_c, orbit_d, orbit_base, orbit_S, orbit_symplectic);
      const MatrixW g0 = orbit_seed == "identity"
                             ? MatrixW::identity(ctx.ring, ctx.r())
                             : io::matrix_from_json(io::read_file(orbit_seed)).change_precision(ctx.ring);
      const OrbitReport report = orbit_bfs(ctx, g0, false, global.orbit_budget());
      const std::uint64_t order = group_order(ctx);
      std::uint64_t stab = 0;
      if (orbit_stab == "enumerate") {
        stab = stabilizer_elements(ctx, g0, global.enumeration_cap()).size();
        require(stab * report.size == order, Errc::kInvariantViolation,
                "orbit-stabilizer identity fails");
      } else {
        require(order % report.size == 0, Errc::kNonIntegralQuotient,
                "orbit size does not divide the group order");
        stab = order / report.size;
      }
      return io::orbit_report_to_json(ctx, report, stab, order);
    };
  });

  // aut
  auto* aut = app.add_subcommand("aut", "automorphism counts of a truncation");
  RingOpts aut_ring;
  DatumOpts aut_datum;
  std::string aut_file, aut_g, aut_degrees;
  bool aut_chi = false;
  aut_ring.add(aut);
  aut_datum.add(aut);
  aut->add_option("--file", aut_file, "truncation JSON instead of a datum");
  aut->add_option("--g", aut_g, "matrix JSON for g (default identity)");
  aut->add_flag("--chi", aut_chi, "also count the image of chi");
  aut->add_option("--fit-degrees", aut_degrees,
                  "residue degrees for a dimension fit, e.g. 1,2,3 (datum input only)");
  aut->callback([&] {
    action = [&] {
      const DieudonneTruncation D = load_truncation(aut_file, aut_g, aut_datum, aut_ring);
      Json doc{{"truncation", io::to_json(D)}, {"aut_count", aut_count(D, global.enumeration_cap())}};
      if (aut_chi) doc["chi_image_count"] = chi_image_count(D, global.enumeration_cap());
      if (!aut_degrees.empty()) {
        require(aut_file.empty() && aut_g.empty(), Errc::kInvalidArgument,
                "--fit-degrees needs a Kraft datum with g = identity");
        const KraftDatum k = aut_datum.make();
        std::vector<std::pair<int, double>> counts;
        Json rows = Json::array();
        for (const int n : parse_int_list(aut_degrees)) {
          const auto Dn = to_truncation(k, WittRing::make(aut_ring.p, n, aut_ring.m));
          const std::uint64_t count = aut_count(Dn, global.enumeration_cap());
          counts.emplace_back(n, static_cast<double>(count));
          rows.push_back({{"n", n}, {"aut_count", count}});
        }
        doc["counts"] = std::move(rows);
        doc["fit"] = io::to_json(dim_fit(aut_ring.p, counts));
      }
      return doc;
    };
  });

  // level-exp
  auto* level = app.add_subcommand("level-exp", "orbit classes at a level versus Newton polygons");
  RingOpts level_ring;
  int level_c = 1, level_d = 1;
  std::optional<int> level_value;
  std::string level_base = "ordinary";
  level_ring.add(level, 2);
  level->add_option("--c", level_c)->capture_default_str();
  level->add_option("--d", level_d)->capture_default_str();
  level->add_option("--level", level_value, "truncation level (default: ceil(cd/(c+d)))");
  level->add_option("--base", level_base, "minimal or ordinary")->capture_default_str();
  level->callback([&] {
    action = [&] {
      const ActionContext ctx = make_action_context(level_ring, level_c, level_d, level_base, "", false);
      const int l = level_value.value_or(traverso_level(level_c, level_d));
      const auto all = enumerate_gl(ctx.ring, ctx.r(), false, global.enumeration_cap());
      return io::to_json(level_experiment(ctx, l, all, global.orbit_budget()));
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::string verify_only;
  acceptance::Options verify_opts;
  verify->add_option("--only", verify_only, "comma-separated criterion ids");
  verify->add_option("--seed", verify_opts.seed, "seed for the random polygon corpus")->capture_default_str();
  bool verify_failed = false;
  verify->callback([&] {
    action = [&] {
      if (!verify_only.empty()) verify_opts.only = parse_int_list(verify_only);
      verify_opts.orbit_budget = global.orbit_budget();
      verify_opts.enumeration_cap = global.enumeration_cap();
      Json rows = Json::array();
      bool all = true;
      for (const auto& r : acceptance::run_all(verify_opts)) {
        all = all && r.passed;
        err << acceptance::format_line(r) << '\n';
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"seconds", r.seconds},
                        {"limit_seconds", r.limit_seconds},
                        {"detail", r.detail}});
      }
      verify_failed = !all;
      return Json{{"criteria", std::move(rows)}, {"passed", all}};
    };
  });

  std::vector<std::string> argv_storage{"tbt"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'tbt --help' for usage\n";
    return kDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  try {
    require(static_cast<bool>(action), Errc::kInvalidArgument, "no command given");
    emit(global, action(), out);
    return verify_failed ? kInvariant : kOk;
  } catch (const OrbitTooLarge& e) {
    err << "error: " << e.what() << " (at least " << e.lower_bound() << " states)\n";
    return kBudget;
  } catch (const InsufficientPrecision& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
}

}  // namespace tbt::cli
