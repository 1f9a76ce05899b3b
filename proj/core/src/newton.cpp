#include "tbt/newton.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tbt/error.hpp"

namespace tbt {

Rational slope_of(const std::pair<int, int>& block) {
  return Rational(block.second, block.first + block.second);
}

NewtonPolygon::NewtonPolygon(std::vector<std::pair<int, int>> blocks) : blocks_(std::move(blocks)) {
  for (const auto& [c, d] : blocks_) {
    require(c >= 0 && d >= 0 && c + d > 0, Errc::kInvalidArgument, "block needs c, d >= 0, c + d > 0");
    if (std::gcd(c, d) != 1) {
      raise(Errc::kNotCoprime, "block (" + std::to_string(c) + "," + std::to_string(d) + ") not coprime");
    }
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) {
    const Rational sa = slope_of(a), sb = slope_of(b);
    if (sa != sb) return sa < sb;
    return a.first < b.first;
  });
}

int NewtonPolygon::c() const {
  int s = 0;
  for (const auto& b : blocks_) s += b.first;
  return s;
}

int NewtonPolygon::d() const {
  int s = 0;
  for (const auto& b : blocks_) s += b.second;
  return s;
}

std::vector<Rational> NewtonPolygon::slopes() const {
  std::vector<Rational> out;
  for (const auto& b : blocks_) out.push_back(slope_of(b));
  return out;
}

std::string NewtonPolygon::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << ", ";
    os << '(' << blocks_[i].first << ',' << blocks_[i].second << ')';
  }
  os << '}';
  return os.str();
}

Rational traverso_codim_slope_form(const NewtonPolygon& np) {
  Rational sum(0);
  for (const auto& s : np.blocks()) {
    for (const auto& t : np.blocks()) {
      const Rational rs(s.first + s.second), rt(t.first + t.second);
      sum += rs * rt * abs(slope_of(s) - slope_of(t));
    }
  }
  return sum / 2;
}

Rational traverso_codim_cross_form(const NewtonPolygon& np) {
  std::int64_t sum = 0;
  for (const auto& s : np.blocks()) {
    for (const auto& t : np.blocks()) {
      sum += std::abs(static_cast<std::int64_t>(s.first) * t.second -
                      static_cast<std::int64_t>(t.first) * s.second);
    }
  }
  return Rational(sum, 2);
}

std::int64_t traverso_codim(const NewtonPolygon& np) {
  const Rational a = traverso_codim_slope_form(np);
  const Rational b = traverso_codim_cross_form(np);
  require(a == b, Errc::kInvariantViolation, "codimension forms disagree");
  require(a.denominator() == 1 && a >= 0, Errc::kInvariantViolation, "codimension not a natural number");
  return a.numerator();
}

std::int64_t specializing_height_min_form(const NewtonPolygon& np) {
  const auto& b = np.blocks();
  std::int64_t sum = 0;
  for (std::size_t s = 0; s < b.size(); ++s) {
    sum += static_cast<std::int64_t>(b[s].first) * b[s].second;
    for (std::size_t t = s + 1; t < b.size(); ++t) {
      sum += 2 * std::min(static_cast<std::int64_t>(b[s].first) * b[t].second,
                          static_cast<std::int64_t>(b[t].first) * b[s].second);
    }
  }
  return sum;
}

std::int64_t specializing_height(const NewtonPolygon& np) {
  const std::int64_t value = static_cast<std::int64_t>(np.c()) * np.d() - traverso_codim(np);
  require(value == specializing_height_min_form(np), Errc::kInvariantViolation,
          "specializing height forms disagree");
  return value;
}

SequenceReport validate_centralizing_sequence(std::vector<std::pair<int, std::int64_t>> seq,
                                              std::int64_t s_D) {
  std::sort(seq.begin(), seq.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SequenceReport report;
  auto flag = [&](const std::string& msg) {
    report.ok = false;
    report.violations.push_back(msg);
  };
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto [m, g] = seq[i];
    if (g < 0) flag("gamma(" + std::to_string(m) + ") < 0");
    if (g > s_D) flag("gamma(" + std::to_string(m) + ") > s_D");
    if (i > 0 && g < seq[i - 1].second) {
      flag("gamma(" + std::to_string(m) + ") < gamma(" + std::to_string(seq[i - 1].first) + ")");
    }
  }
  return report;
}

int traverso_level(int c, int d) {
  require(c >= 0 && d >= 0 && c + d >= 1, Errc::kInvalidArgument, "need c, d >= 0 and c + d >= 1");
  return (c * d + (c + d) - 1) / (c + d);
}

std::vector<Coeffs> characteristic_polynomial(const MatrixW& B) {
  require(B.square(), Errc::kShapeMismatch, "characteristic polynomial of a non-square matrix");
  const WittRing& R = B.r();
  const int n = B.rows();
  // Berkowitz: fold in principal submatrices from the bottom-right corner.
  std::vector<Coeffs> poly{R.one()};
  for (int k = n - 1; k >= 0; --k) {
    const int sub = n - 1 - k;  // size of the trailing block below/right of (k,k)
    // col_j = B[k+1+j][k], row_j = B[k][k+1+j]
    std::vector<Coeffs> toeplitz(sub + 2);
    toeplitz[0] = R.one();
    toeplitz[1] = R.neg(B(k, k));
    std::vector<Coeffs> v(sub);
    for (int j = 0; j < sub; ++j) v[j] = B(k + 1 + j, k);
    for (int e = 0; e < sub; ++e) {
      // toeplitz[e+2] = -row . (A'^e col)
      Coeffs dot = R.zero();
      for (int j = 0; j < sub; ++j) dot = R.add(dot, R.mul(B(k, k + 1 + j), v[j]));
      toeplitz[e + 2] = R.neg(dot);
      std::vector<Coeffs> next(sub, R.zero());
      for (int i = 0; i < sub; ++i) {
        for (int j = 0; j < sub; ++j) next[i] = R.add(next[i], R.mul(B(k + 1 + i, k + 1 + j), v[j]));
      }
      v = std::move(next);
    }
    std::vector<Coeffs> out(poly.size() + 1, R.zero());
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) {
        if (i - j < toeplitz.size()) out[i] = R.add(out[i], R.mul(toeplitz[i - j], poly[j]));
      }
    }
    poly = std::move(out);
  }
  return poly;
}

namespace {

struct Point {
  std::int64_t x, y;
};

// Lower convex hull vertices, collinear points removed; input sorted by x.
std::vector<Point> lower_hull(const std::vector<Point>& pts) {
  std::vector<Point> h;
  for (const Point& pt : pts) {
    while (h.size() >= 2) {
      const Point& a = h[h.size() - 2];
      const Point& b = h.back();
      // Drop b unless it lies strictly below segment a-pt.
      const std::int64_t cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
      if (cross <= 0) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(pt);
  }
  return h;
}

}  // namespace

NewtonPolygon np_from_matrix(const DieudonneTruncation& D) {
  const WittRing& R = *D.ring();
  const int n = R.n();
  const int m = R.m();
  const int r = D.r();
  const MatrixW B = linearize(D, n);
  const std::vector<Coeffs> poly = characteristic_polynomial(B);

  std::vector<Point> censored_at_m, censored_out;
  std::vector<int> uncertain;
  for (int i = 0; i <= r; ++i) {
    const int v = R.valuation(poly[i]);
    if (v == kInfiniteValuation) {
      uncertain.push_back(i);
      censored_at_m.push_back({i, m});
    } else {
      censored_at_m.push_back({i, v});
      censored_out.push_back({i, v});
    }
  }
  const auto h_low = lower_hull(censored_at_m);
  const auto h_high = lower_hull(censored_out);
  auto same = [](const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
    }
    return true;
  };
  if (!same(h_low, h_high) || h_high.back().x != r) {
    std::ostringstream os;
    os << "Newton polygon undetermined at precision m=" << m << "; uncertain coefficients:";
    for (int i : uncertain) os << ' ' << i;
    throw InsufficientPrecision(uncertain, os.str());
  }

  std::vector<std::pair<int, int>> blocks;
  int total_d = 0;
  for (std::size_t s = 1; s < h_high.size(); ++s) {
    const std::int64_t len = h_high[s].x - h_high[s - 1].x;
    const Rational alpha(h_high[s].y - h_high[s - 1].y, len * n);
    require(alpha >= 0 && alpha <= 1, Errc::kInvariantViolation, "slope outside [0,1]");
    const std::int64_t rs = alpha.denominator();
    const std::int64_t ds = alpha.numerator();
    require(len % rs == 0, Errc::kInvariantViolation, "segment length not divisible by block height");
    for (std::int64_t k = 0; k < len / rs; ++k) {
      blocks.emplace_back(static_cast<int>(rs - ds), static_cast<int>(ds));
      total_d += static_cast<int>(ds);
    }
  }
  require(total_d == D.d(), Errc::kInvariantViolation, "sum of block dimensions differs from d");
  return NewtonPolygon(std::move(blocks));
}

}  // namespace tbt
