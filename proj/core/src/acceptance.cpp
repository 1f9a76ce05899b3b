#include "tbt/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "tbt/error.hpp"
#include "tbt/kraft.hpp"
#include "tbt/newton.hpp"

namespace tbt::acceptance {

namespace {

using Pair = std::pair<int, int>;

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string pair_str(const Pair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

Rational alpha(const Pair& p) { return Rational(p.second, p.first + p.second); }

CriterionResult kraft_minimal(const Options&) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  for (const Pair& cd : std::vector<Pair>{{1, 1}, {1, 2}, {2, 3}, {3, 5}, {2, 7}, {4, 9}}) {
    const int g = gamma1(minimal_datum(cd.first, cd.second));
    out.passed = out.passed && g == cd.first * cd.second;
    os << pair_str(cd) << "->" << g << ' ';
  }
  out.detail = os.str();
  return out;
}

CriterionResult two_block(const Options&) {
  std::vector<Pair> blocks;
  for (int r = 1; r <= 5; ++r) {
    for (int c = 0; c <= r; ++c) {
      if (std::gcd(c, r - c) == 1) blocks.emplace_back(c, r - c);
    }
  }
  CriterionResult out;
  out.passed = true;
  int checked = 0;
  bool saw_ordinary = false;
  bool saw_example = false;
  for (const Pair& a : blocks) {
    for (const Pair& b : blocks) {
      if (!(alpha(a) < alpha(b))) continue;
      const int expected = a.first * a.second + b.first * b.second + 2 * b.first * a.second;
      const int got = gamma1(direct_sum(minimal_datum(a.first, a.second), minimal_datum(b.first, b.second)));
      ++checked;
      if (got != expected) {
        out.passed = false;
        out.detail += pair_str(a) + "+" + pair_str(b) + " got " + std::to_string(got) + " want " +
                      std::to_string(expected) + "; ";
      }
      if (a == Pair{1, 0} && b == Pair{0, 1}) saw_ordinary = got == 0;
      if (a == Pair{2, 1} && b == Pair{1, 1}) saw_example = got == 5;
    }
  }
  out.passed = out.passed && checked >= 10 && saw_ordinary && saw_example;
  out.detail += std::to_string(checked) + " block pairs; (1,0)+(0,1)->0 " +
                (saw_ordinary ? "ok" : "MISSING") + "; (2,1)+(1,1)->5 " + (saw_example ? "ok" : "MISSING");
  return out;
}

CriterionResult traverso_consistency(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> count_dist(1, 4);
  std::uniform_int_distribution<int> part_dist(0, 6);
  CriterionResult out;
  out.passed = true;
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<Pair> blocks;
    const int k = count_dist(rng);
    while (static_cast<int>(blocks.size()) < k) {
      const int c = part_dist(rng);
      const int d = part_dist(rng);
      if (c + d == 0 || std::gcd(c, d) != 1) continue;
      blocks.emplace_back(c, d);
    }
    const NewtonPolygon np(blocks);
    const Rational slope_form = traverso_codim_slope_form(np);
    const Rational cross_form = traverso_codim_cross_form(np);
    const Rational cd(static_cast<std::int64_t>(np.c()) * np.d());
    if (slope_form != cross_form || cd - cross_form != Rational(specializing_height_min_form(np))) {
      ++mismatches;
    }
  }
  std::ostringstream os;
  os << "1000 polygons, " << mismatches << " mismatches; single block s_D=cd=gamma1:";
  for (const Pair& cd : std::vector<Pair>{{1, 1}, {1, 2}, {2, 3}, {3, 5}, {2, 7}, {4, 9}}) {
    const std::int64_t s = specializing_height(NewtonPolygon({cd}));
    const bool ok = s == cd.first * cd.second && s == gamma1(minimal_datum(cd.first, cd.second));
    out.passed = out.passed && ok;
    os << ' ' << pair_str(cd) << (ok ? "ok" : "FAIL");
  }
  out.passed = out.passed && mismatches == 0;
  out.detail = os.str();
  return out;
}

struct Instance {
  int p, n, m, c, d;
};

const std::vector<Instance>& small_grid() {
  static const std::vector<Instance> grid{{2, 1, 1, 1, 1}, {3, 1, 1, 1, 1}, {2, 1, 2, 1, 1}, {2, 2, 1, 1, 1}};
  return grid;
}

std::string instance_str(const Instance& k, bool ordinary) {
  return "(" + std::to_string(k.p) + "," + std::to_string(k.n) + "," + std::to_string(k.m) + "," +
         std::to_string(k.c) + "," + std::to_string(k.d) + (ordinary ? ",ord)" : ",ss)");
}

ActionContext base_context(const Instance& k, bool ordinary, bool symplectic = false) {
  const RingPtr R = WittRing::make(k.p, k.n, k.m);
  return ordinary ? ordinary_context(k.c, k.d, R, symplectic) : minimal_context(k.c, k.d, R, symplectic);
}

CriterionResult orbit_stabilizer(const Options& opt) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  for (const Instance& k : small_grid()) {
    for (const bool ordinary : {false, true}) {
      const ActionContext ctx = base_context(k, ordinary);
      const MatrixW g0 = MatrixW::identity(ctx.ring, ctx.r());
      const std::uint64_t order = group_order(ctx);
      const std::uint64_t orbit = orbit_bfs(ctx, g0, false, opt.orbit_budget).size;
      const std::uint64_t enumerated = stabilizer_elements(ctx, g0, opt.enumeration_cap).size();
      const std::uint64_t counted = stabilizer_count(ctx, g0, opt.orbit_budget);
      const bool ok = orbit * enumerated == order && enumerated == counted;
      out.passed = out.passed && ok;
      os << instance_str(k, ordinary) << ' ' << orbit << "*" << enumerated << "=" << order
         << (ok ? "" : " FAIL") << "; ";
    }
  }
  out.detail = os.str();
  return out;
}

CriterionResult crystalline_cross_check(const Options& opt) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  for (const Instance& k : small_grid()) {
    for (const bool ordinary : {false, true}) {
      const ActionContext ctx = base_context(k, ordinary);
      const MatrixW g0 = MatrixW::identity(ctx.ring, ctx.r());
      const DieudonneTruncation D = ctx.truncation(g0);
      std::set<std::string> images;
      const auto stab = stabilizer_elements(ctx, g0, opt.enumeration_cap);
      for (const auto& h : stab) images.insert(stabilizer_to_aut(ctx, h, g0).key());
      std::set<std::string> auts;
      for (const auto& x : automorphisms(D, opt.enumeration_cap)) auts.insert(x.key());
      const std::uint64_t count = aut_count(D, opt.enumeration_cap);
      const bool ok = images == auts && images.size() == stab.size() && stab.size() == count;
      out.passed = out.passed && ok;
      os << instance_str(k, ordinary) << " #stab=" << stab.size() << " #aut=" << count
         << (ok ? "" : " FAIL") << "; ";
    }
  }
  out.detail = os.str();
  return out;
}

CriterionResult dimension_fits(const Options& opt) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  constexpr int p = 2;
  constexpr int m = 1;
  constexpr int r = 2;
  for (const bool ordinary : {false, true}) {
    const int gamma = ordinary ? gamma1(direct_sum(minimal_datum(1, 0), minimal_datum(0, 1)))
                               : gamma1(minimal_datum(1, 1));
    std::vector<std::pair<int, double>> stab_counts, orbit_counts, raw_orbit_counts;
    bool exact = true;
    for (int n = 1; n <= 3; ++n) {
      const ActionContext ctx = base_context({p, n, m, 1, 1}, ordinary);
      const MatrixW g0 = MatrixW::identity(ctx.ring, r);
      const auto stab = static_cast<double>(stabilizer_elements(ctx, g0, opt.enumeration_cap).size());
      const auto orbit = static_cast<double>(orbit_bfs(ctx, g0, false, opt.orbit_budget).size);
      const auto order = static_cast<double>(group_order(ctx));
      exact = exact && orbit * stab == order;
      const double q = std::pow(2.0, n);
      stab_counts.emplace_back(n, stab);
      raw_orbit_counts.emplace_back(n, orbit);
      // Replace |H(F_q)| by q^{dim H} so torus factors (q-1)^k do not bias the slope.
      orbit_counts.emplace_back(n, orbit * std::pow(q, m * r * r) / order);
    }
    const DimFit sf = dim_fit(p, stab_counts);
    const DimFit of = dim_fit(p, orbit_counts);
    const DimFit raw = dim_fit(p, raw_orbit_counts);
    const bool ok = exact && sf.estimate == gamma && of.estimate == m * r * r - gamma &&
                    sf.estimate + of.estimate == m * r * r && sf.residual < kDimFitTolerance &&
                    of.residual < kDimFitTolerance;
    out.passed = out.passed && ok;
    os << (ordinary ? "ordinary" : "supersingular") << ": stabilizer " << sf.estimate << " (res "
       << fmt(sf.residual) << ", want " << gamma << "), orbit " << of.estimate << " (res "
       << fmt(of.residual) << ", want " << m * r * r - gamma << ", unnormalized slope "
       << fmt(raw.slope) << ")" << (ok ? "" : " FAIL") << "; ";
  }
  out.detail = os.str();
  return out;
}

CriterionResult level_separation(const Options& opt) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  for (const int q : {2, 3}) {
    const RingPtr R = WittRing::make(q, 1, 2);
    const ActionContext ctx = ordinary_context(1, 1, R);
    const auto all = enumerate_gl(R, 2, false, opt.enumeration_cap);
    const auto report = level_experiment(ctx, traverso_level(1, 1), all, opt.orbit_budget);
    std::uint64_t uncertain = 0;
    for (const auto& cls : report.classes) uncertain += cls.uncertain;
    const bool ok = report.violations == 0 && report.polygons.size() == 2 && uncertain == 0;
    out.passed = out.passed && ok;
    os << "q=" << q << ": " << all.size() << " lifts, " << report.classes.size() << " level-1 classes, "
       << report.violations << " violations, " << report.polygons.size()
       << " polygons, minimal separating level " << report.minimal_separating_level
       << (ok ? "" : " FAIL") << "; ";
  }
  out.detail = os.str();
  return out;
}

// Distinct (i <= j) positions touched by generator blocks selected by `pick`.
int generator_positions(const ActionContext& ctx, const std::function<const MatrixW*(const ActionTriple&)>& pick) {
  std::set<Pair> positions;
  const ActionTriple id = ActionTriple::identity(ctx);
  for (const auto& h : h_generators(ctx)) {
    const MatrixW* block = pick(h);
    const MatrixW* base = pick(id);
    if (block == nullptr) continue;
    for (int i = 0; i < block->rows(); ++i) {
      for (int j = 0; j < block->cols(); ++j) {
        if ((*block)(i, j) != (*base)(i, j)) positions.emplace(std::min(i, j), std::max(i, j));
      }
    }
  }
  return static_cast<int>(positions.size());
}

CriterionResult symplectic(const Options& opt) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  for (const int p : {2, 3}) {
    std::vector<std::pair<int, double>> counts;
    bool exact = true;
    for (int n = 1; n <= 3; ++n) {
      const ActionContext ctx = base_context({p, n, 1, 1, 1}, false, true);
      const MatrixW g0 = MatrixW::identity(ctx.ring, 2);
      const std::uint64_t orbit = orbit_bfs(ctx, g0, false, opt.orbit_budget).size;
      std::uint64_t direct = 0;
      for_each_triple(
          ctx, [&](const ActionTriple& h) { direct += act(ctx, h, g0) == g0; }, opt.enumeration_cap);
      std::uint64_t filtered = 0;
      for_each_symplectic_triple_by_filter(
          ctx, [&](const ActionTriple& h) { filtered += act(ctx, h, g0) == g0; }, opt.enumeration_cap);
      exact = exact && direct == filtered && orbit * direct == group_order(ctx);
      counts.emplace_back(n, static_cast<double>(direct));
      os << "p=" << p << " n=" << n << " " << orbit << "*" << direct << "=" << group_order(ctx) << "; ";
    }
    const DimFit fit = dim_fit(p, counts);
    const bool ok = exact && fit.estimate == 1 && fit.residual < kDimFitTolerance;
    out.passed = out.passed && ok;
    os << "p=" << p << " fit " << fit.estimate << " (res " << fmt(fit.residual) << ")"
       << (ok ? "" : " FAIL") << "; ";
  }
  for (int d = 1; d <= 3; ++d) {
    const ActionContext ctx = ordinary_context(d, d, WittRing::make(3, 1, 2), true);
    const SymplecticDescriptor& desc = *ctx.symplectic;
    const int plus = generator_positions(ctx, [](const ActionTriple& h) { return &h.L; });
    const int minus = generator_positions(ctx, [](const ActionTriple& h) { return &h.U; });
    std::set<Pair> zero;
    for (const auto& h : h_generators(ctx)) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (h.u0(i, j) != (i == j ? ctx.ring->one() : ctx.ring->zero())) zero.emplace(i, j);
        }
      }
    }
    const int e = d * (d + 1) / 2;
    const bool ok = plus == e && minus == e && desc.e_plus() == e && desc.e_minus() == e &&
                    static_cast<int>(zero.size()) == d * d && desc.e_zero() == d * d;
    out.passed = out.passed && ok;
    os << "d=" << d << " e+=" << plus << " e-=" << minus << " e0=" << zero.size() << (ok ? "" : " FAIL")
       << "; ";
  }
  out.detail = os.str();
  return out;
}

CriterionResult witt_substrate(const Options&) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  std::uint64_t checks = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 2; ++m) {
      const RingPtr ring = WittRing::make(2, n, m);
      const WittRing& R = *ring;
      const RingPtr field = R.residue_field();
      std::vector<Coeffs> all;
      R.for_each(ElementFilter::kAll, [&](const Coeffs& a) { all.push_back(a); });
      const std::uint64_t q = R.residue_size();
      bool ok = true;
      for (const auto& a : all) {
        ok = ok && R.add(a, R.zero()) == a && R.mul(a, R.one()) == a && R.is_zero(R.add(a, R.neg(a)));
        ok = ok && R.frobenius(a, n) == a;
        ok = ok && R.residue(R.frobenius(a)) == R.residue(R.pow(a, 2));
        const Coeffs t = R.teichmuller(a);
        ok = ok && R.residue(t) == R.residue(a) && R.pow(t, q) == t;
        if (R.is_unit(a)) ok = ok && R.mul(a, R.inverse(a)) == R.one();
        for (const auto& b : all) {
          ok = ok && R.add(a, b) == R.add(b, a) && R.mul(a, b) == R.mul(b, a);
          ok = ok && R.frobenius(R.add(a, b)) == R.add(R.frobenius(a), R.frobenius(b));
          ok = ok && R.frobenius(R.mul(a, b)) == R.mul(R.frobenius(a), R.frobenius(b));
          ok = ok && R.teichmuller(R.mul(a, b)) == R.mul(t, R.teichmuller(b));
          for (const auto& c : all) {
            ok = ok && R.add(R.add(a, b), c) == R.add(a, R.add(b, c));
            ok = ok && R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c));
            ok = ok && R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c));
            ++checks;
          }
        }
      }
      out.passed = out.passed && ok;
      os << "W_" << m << "(F_" << q << ")" << (ok ? " ok" : " FAIL") << "; ";
    }
  }
  os << checks << " triples";
  out.detail = os.str();
  return out;
}

struct GridEntry {
  std::string name;
  KraftDatum datum;
  std::vector<Pair> blocks;
};

CriterionResult centralizing_sequence(const Options& opt) {
  const auto sum = [](const Pair& a, const Pair& b) {
    return direct_sum(minimal_datum(a.first, a.second), minimal_datum(b.first, b.second));
  };
  const std::vector<GridEntry> grid{
      {"(1,1)", minimal_datum(1, 1), {{1, 1}}},
      {"(1,0)+(0,1)", sum({1, 0}, {0, 1}), {{1, 0}, {0, 1}}},
      {"(2,1)", minimal_datum(2, 1), {{2, 1}}},
      {"(1,2)", minimal_datum(1, 2), {{1, 2}}},
      {"(1,0)+(1,1)", sum({1, 0}, {1, 1}), {{1, 0}, {1, 1}}},
      {"(1,1)+(0,1)", sum({1, 1}, {0, 1}), {{1, 1}, {0, 1}}},
  };
  constexpr int p = 2;
  CriterionResult out;
  out.passed = true;
  std::ostringstream os;
  for (const auto& entry : grid) {
    std::vector<std::pair<int, std::int64_t>> seq;
    bool reliable = true;
    // Components of Aut become rational over F_{p^L}, L = cycle_lcm; residue
    // degrees sharing a factor with L pick up extra finite factors.
    const int L = cycle_lcm(entry.datum);
    std::vector<int> degrees;
    for (int n = 1; degrees.size() < 2 || n <= 3; ++n) {
      if (std::gcd(n, L) == 1) degrees.push_back(n);
    }
    for (int m = 1; m <= 2; ++m) {
      std::vector<std::pair<int, double>> counts;
      for (const int n : degrees) {
        const auto D = to_truncation(entry.datum, WittRing::make(p, n, m));
        counts.emplace_back(n, static_cast<double>(aut_count(D, opt.enumeration_cap)));
      }
      const DimFit fit = dim_fit(p, counts);
      reliable = reliable && fit.reliable;
      seq.emplace_back(m, fit.estimate);
    }
    const std::int64_t s_D = specializing_height(NewtonPolygon(entry.blocks));
    const SequenceReport report = validate_centralizing_sequence(seq, s_D);
    const bool ok = reliable && report.ok && seq[0].second == gamma1(entry.datum);
    out.passed = out.passed && ok;
    os << entry.name << " n in {";
    for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    os << "}: gamma(1)=" << seq[0].second << " gamma(2)=" << seq[1].second << " s_D=" << s_D
       << " [kraft " << gamma1(entry.datum) << "]" << (ok ? "" : " FAIL") << "; ";
  }
  out.detail = os.str();
  return out;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "kraft-minimal-gamma", 1.0, kraft_minimal},
      {2, "two-block-formula", 0.0, two_block},
      {3, "traverso-consistency", 5.0, traverso_consistency},
      {4, "orbit-stabilizer", 300.0, orbit_stabilizer},
      {5, "crystalline-cross-check", 0.0, crystalline_cross_check},
      {6, "dimension-fits", 600.0, dimension_fits},
      {7, "level-separation", 0.0, level_separation},
      {8, "symplectic", 0.0, symplectic},
      {9, "witt-substrate", 60.0, witt_substrate},
      {10, "centralizing-sequence", 0.0, centralizing_sequence},
  };
  return list;
}

std::vector<CriterionResult> run_all(const Options& options,
                                     const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (const Criterion& c : criteria()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = c.run(options);
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("error: ") + e.what();
    }
    result.id = c.id;
    result.name = c.name;
    result.limit_seconds = c.limit_seconds;
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && result.seconds > c.limit_seconds) {
      result.passed = false;
      result.detail += " (time limit " + fmt(c.limit_seconds, 0) + " s exceeded)";
    }
    if (on_result) on_result(result);
    results.push_back(std::move(result));
  }
  return results;
}

std::string format_line(const CriterionResult& result) {
  std::ostringstream os;
  os << (result.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << result.id << "  " << std::left
     << std::setw(24) << result.name << std::right << ' ' << std::setw(8) << fmt(result.seconds) << " s  "
     << result.detail;
  return os.str();
}

}  // namespace tbt::acceptance
