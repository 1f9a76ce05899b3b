#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tbt/matrix.hpp"
#include "tbt/zpm.hpp"

namespace tbt {

/// A sigma^twist-semilinear map y -> matrix * sigma^twist(y).
struct SemiLinearMap {
  MatrixW matrix;
  int twist = 1;

  MatrixW apply(const MatrixW& y) const { return matrix * y.frobenius(twist); }
};

/// Truncated Dieudonne module M/p^m M over W_m(F_q) with
///   A = g S Delta,  V = sigma^{-1}(Delta~ S^{-1} g^{-1}),
/// Delta = diag(1_c, p 1_d), Delta~ = diag(p 1_c, 1_d). Coordinates 1..c span
/// F^0 and c+1..r span F^1.
class DieudonneTruncation {
 public:
  int c() const { return c_; }
  int d() const { return d_; }
  int r() const { return c_ + d_; }
  const RingPtr& ring() const { return ring_; }
  const MatrixW& S() const { return S_; }
  const MatrixW& g() const { return g_; }
  const MatrixW& A() const { return A_; }
  const MatrixW& V() const { return V_; }

  SemiLinearMap phi() const { return {A_, 1}; }
  SemiLinearMap theta() const { return {V_, -1}; }

  /// Re-checks every structural invariant; throws InvariantViolation.
  void verify() const;

 private:
  friend DieudonneTruncation make_truncation(int, int, const RingPtr&, const MatrixW&, const MatrixW&);
  int c_ = 0;
  int d_ = 0;
  RingPtr ring_;
  MatrixW S_, g_, A_, V_;
};

/// diag(1_c, p 1_d) when `frobenius_side`, otherwise diag(p 1_c, 1_d).
MatrixW hodge_diagonal(const RingPtr& ring, int c, int d, bool frobenius_side);

DieudonneTruncation make_truncation(int c, int d, const RingPtr& ring, const MatrixW& S,
                                    const MatrixW& g);

/// A sigma(A) ... sigma^{j-1}(A).
MatrixW linearize(const DieudonneTruncation& D, int j);

/// Matrices x with x A1 = A2 sigma(x) and x V1 = V2 sigma^{-1}(x), as a Z/p^m
/// module in the coordinates of the r*r entries (n coordinates per entry).
SolutionModule hom_module(const DieudonneTruncation& D1, const DieudonneTruncation& D2);

/// Linear equations (rows over Z/p^m) that define hom_module.
std::vector<ZpmVector> hom_equations(const DieudonneTruncation& D1, const DieudonneTruncation& D2);

/// Converts a flattened solution vector back to an r x r matrix.
MatrixW unflatten(const RingPtr& ring, int r, const ZpmVector& x);
ZpmVector flatten(const MatrixW& x);

/// Visits each element of hom_module(D1, D2) as a matrix.
void for_each_hom(const DieudonneTruncation& D1, const DieudonneTruncation& D2,
                  const std::function<void(const MatrixW&)>& visit,
                  std::uint64_t cap = kDefaultEnumerationCap);

/// Number of endomorphisms of D that are invertible mod p.
std::uint64_t aut_count(const DieudonneTruncation& D, std::uint64_t cap = kDefaultEnumerationCap);
std::vector<MatrixW> automorphisms(const DieudonneTruncation& D,
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// True iff some element of hom_module(D1, D2) is invertible.
bool isomorphic(const DieudonneTruncation& D1, const DieudonneTruncation& D2,
                std::uint64_t cap = kDefaultEnumerationCap);

/// Dual with (c, d) swapped: Frobenius sigma(V)^T and Verschiebung
/// sigma^{-1}(A)^T, conjugated so that the new F^0 coordinates come first.
DieudonneTruncation cartier_dual(const DieudonneTruncation& D);

DieudonneTruncation change_precision(const DieudonneTruncation& D, int m_prime);

/// Extension of scalars from the prime field W_m(F_p) to `target`
/// (same p and m, any residue degree).
DieudonneTruncation base_change(const DieudonneTruncation& D, const RingPtr& target);
MatrixW base_change(const MatrixW& x, const RingPtr& target);

}  // namespace tbt
