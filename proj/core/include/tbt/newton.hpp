#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "tbt/semilinear.hpp"

namespace tbt {

using Rational = boost::rational<std::int64_t>;

/// Multiset of coprime blocks (c_s, d_s); slope alpha_s = d_s / (c_s + d_s).
class NewtonPolygon {
 public:
  NewtonPolygon() = default;
  explicit NewtonPolygon(std::vector<std::pair<int, int>> blocks);

  /// Blocks sorted by slope, then by c.
  const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }
  int c() const;
  int d() const;
  int r() const { return c() + d(); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  std::vector<Rational> slopes() const;

  bool operator==(const NewtonPolygon& other) const { return blocks_ == other.blocks_; }
  std::string to_string() const;

 private:
  std::vector<std::pair<int, int>> blocks_;
};

Rational slope_of(const std::pair<int, int>& block);

/// 1/2 sum_{s,t} r_s r_t |alpha_s - alpha_t|, in exact arithmetic.
Rational traverso_codim_slope_form(const NewtonPolygon& np);
/// 1/2 sum_{s,t} |c_s d_t - c_t d_s|.
Rational traverso_codim_cross_form(const NewtonPolygon& np);
/// Both forms, checked equal and integral.
std::int64_t traverso_codim(const NewtonPolygon& np);

/// sum_s c_s d_s + 2 sum_{s<t} min(c_s d_t, c_t d_s).
std::int64_t specializing_height_min_form(const NewtonPolygon& np);
/// cd - traverso_codim, checked against the min form.
std::int64_t specializing_height(const NewtonPolygon& np);

struct SequenceReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks 0 <= gamma_1 <= gamma_2 <= ... <= s_D; entries are (m, gamma_m).
SequenceReport validate_centralizing_sequence(std::vector<std::pair<int, std::int64_t>> seq,
                                              std::int64_t s_D);

/// ceil(cd / (c + d)).
int traverso_level(int c, int d);

/// Coefficients a_0 = 1, a_1, ..., a_r of det(x I - B) = sum a_i x^{r-i},
/// computed without division.
std::vector<Coeffs> characteristic_polynomial(const MatrixW& B);

/// Slopes from the characteristic polynomial of the linearized Frobenius.
/// Throws InsufficientPrecision if coefficients that vanish mod p^m could
/// change the lower hull.
NewtonPolygon np_from_matrix(const DieudonneTruncation& D);

}  // namespace tbt
