#pragma once

// The action of H(W_m) = W_+ x W_0 x W_- on GL_r(W_m):
//   h . g = X g phi(X)^{-1},  X = h1 h2 h3^p,
// where phi(X) = S Delta sigma(X) Delta^{-1} S^{-1}. Elements of H are kept
// in divided form (B, Y) with B = X and Y the upper-right block of X over p.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tbt/kraft.hpp"
#include "tbt/newton.hpp"
#include "tbt/semilinear.hpp"

namespace tbt {

inline constexpr std::uint64_t kDefaultOrbitBudget = 5'000'000;

/// Standard alternating form J = [[0, I_d], [-I_d, 0]] in the F^0-first basis.
struct SymplecticDescriptor {
  int d = 0;

  MatrixW form(const RingPtr& ring) const;
  /// x^T J x == J.
  bool preserves(const MatrixW& x) const;
  /// Multiplier lambda with x^T J x = lambda J, if x is a similitude with unit lambda.
  std::optional<Coeffs> multiplier(const MatrixW& x) const;

  /// Free parameters of W_+^G, W_-^G and W_0^G, counted from the generator recipe.
  int e_plus() const;
  int e_minus() const;
  int e_zero() const;
};

struct ActionContext {
  int c = 0;
  int d = 0;
  RingPtr ring;
  MatrixW S;
  MatrixW S_inv;
  std::optional<SymplecticDescriptor> symplectic;

  int r() const { return c + d; }
  /// Same data over W_{m'} (m' >= 1).
  ActionContext reduced(int m_prime) const;
  DieudonneTruncation truncation(const MatrixW& g) const;
};

/// Validates S (invertible; a similitude when symplectic).
ActionContext make_context(int c, int d, const RingPtr& ring, const MatrixW& S,
                           bool symplectic = false);
/// S = permutation matrix of the minimal datum (requires gcd(c,d) = 1).
ActionContext minimal_context(int c, int d, const RingPtr& ring, bool symplectic = false);
/// S = identity.
ActionContext ordinary_context(int c, int d, const RingPtr& ring, bool symplectic = false);

/// h1 = I + L (L: d x c, lower-left), h2 = diag(u0, u1), h3 = I + U (U: c x d, upper-right).
struct ActionTriple {
  MatrixW L, u0, u1, U;

  static ActionTriple identity(const ActionContext& ctx);
  MatrixW h1() const;
  MatrixW h2() const;
  MatrixW h3() const;
  /// h1^p = I + pL and h3^p = I + pU.
  MatrixW h1_pow_p() const;
  MatrixW h3_pow_p() const;

  bool operator==(const ActionTriple&) const = default;
};

/// B with upper-right block p*Y, stored together with Y.
struct DividedMatrix {
  int c = 0;
  MatrixW B, Y;

  static DividedMatrix from_triple(const ActionTriple& h);
  ActionTriple to_triple(int d) const;
  DividedMatrix operator*(const DividedMatrix& o) const;
  bool operator==(const DividedMatrix&) const = default;
};

/// phi(X) for X in divided form.
MatrixW phi_divided(const ActionContext& ctx, const DividedMatrix& X);

/// h . g. Checks g invertible; symplectic contexts also check membership.
MatrixW act(const ActionContext& ctx, const ActionTriple& h, const MatrixW& g);

ActionTriple compose_triples(const ActionContext& ctx, const ActionTriple& h, const ActionTriple& h2);
ActionTriple inverse_triple(const ActionContext& ctx, const ActionTriple& h);

/// Elementary and diagonal-unit generators of H(W_m) (or H^G(W_m)).
std::vector<ActionTriple> h_generators(const ActionContext& ctx);

/// |H(W_m(F_q))|; throws EnumerationTooLarge past 64 bits.
std::uint64_t group_order(const ActionContext& ctx);
std::uint64_t gl_order(std::uint64_t q, int n);

/// Visits every element of H(W_m) (H^G when symplectic).
void for_each_triple(const ActionContext& ctx, const std::function<void(const ActionTriple&)>& visit,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Every triple of the full group H, keeping only those satisfying the
/// symplectic block conditions. Validation path for the generator recipe.
void for_each_symplectic_triple_by_filter(const ActionContext& ctx,
                                          const std::function<void(const ActionTriple&)>& visit,
                                          std::uint64_t cap = kDefaultEnumerationCap);
bool is_symplectic_triple(const ActionTriple& h);

struct OrbitReport {
  MatrixW seed;
  std::uint64_t size = 0;
  MatrixW canonical;
  /// Keys of all orbit elements when requested.
  std::vector<std::string> elements;
};

/// Breadth-first closure under h_generators; the canonical representative is
/// the element with the smallest MatrixW::key.
OrbitReport orbit_bfs(const ActionContext& ctx, const MatrixW& g0, bool collect = false,
                      std::uint64_t budget = kDefaultOrbitBudget);

bool same_orbit(const ActionContext& ctx, const MatrixW& g1, const MatrixW& g2,
                std::uint64_t budget = kDefaultOrbitBudget);

/// group_order / orbit size, with exact divisibility enforced.
std::uint64_t stabilizer_count(const ActionContext& ctx, const MatrixW& g0,
                               std::uint64_t budget = kDefaultOrbitBudget);
/// Brute-force filter of all triples.
std::vector<ActionTriple> stabilizer_elements(const ActionContext& ctx, const MatrixW& g0,
                                              std::uint64_t cap = kDefaultEnumerationCap);

/// h1 h2 h3^p for h fixing g0 (InvalidArgument otherwise), checked to be an
/// automorphism of the truncation of g0.
MatrixW stabilizer_to_aut(const ActionContext& ctx, const ActionTriple& h, const MatrixW& g0);

/// Distinct diagonal-block pairs of the residues of automorphisms of D.
std::uint64_t chi_image_count(const DieudonneTruncation& D,
                              std::uint64_t cap = kDefaultEnumerationCap);

struct DimFit {
  int estimate = 0;
  /// Least-squares slope of log_p(count) against n.
  double slope = 0.0;
  /// Distance from slope to the nearest integer.
  double residual = 0.0;
  bool reliable = false;
};
inline constexpr double kDimFitTolerance = 0.2;

/// Dimension estimate from (possibly normalized) point counts over F_{p^n};
/// needs two distinct n.
DimFit dim_fit(int p, const std::vector<std::pair<int, double>>& counts);

/// All invertible r x r matrices over the ring (symplectic ones when asked).
std::vector<MatrixW> enumerate_gl(const RingPtr& ring, int r, bool symplectic = false,
                                  std::uint64_t cap = kDefaultEnumerationCap);

struct LevelClass {
  MatrixW canonical;
  std::uint64_t members = 0;
  std::vector<NewtonPolygon> polygons;
  std::uint64_t uncertain = 0;
  bool violation = false;
};

struct LevelExperimentReport {
  int level = 0;
  int precision = 0;
  std::uint64_t elements = 0;
  std::vector<LevelClass> classes;
  int violations = 0;
  /// Smallest level <= `level` with no violations, or -1.
  int minimal_separating_level = -1;
  std::vector<NewtonPolygon> polygons;
};

/// Partitions g_list (over ctx.ring) by orbits of the level-`level`
/// reductions and compares with Newton polygons at full precision.
LevelExperimentReport level_experiment(const ActionContext& ctx, int level,
                                       const std::vector<MatrixW>& g_list,
                                       std::uint64_t budget = kDefaultOrbitBudget);

}  // namespace tbt
