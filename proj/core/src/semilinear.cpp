#include "tbt/semilinear.hpp"

#include <string>

#include "tbt/error.hpp"

namespace tbt {

MatrixW hodge_diagonal(const RingPtr& ring, int c, int d, bool frobenius_side) {
  MatrixW out(ring, c + d, c + d);
  const Coeffs one = ring->one();
  const Coeffs p = ring->from_int(ring->p());
  for (int i = 0; i < c + d; ++i) {
    const bool in_f0 = i < c;
    out(i, i) = (in_f0 == frobenius_side) ? one : p;
  }
  return out;
}

DieudonneTruncation make_truncation(int c, int d, const RingPtr& ring, const MatrixW& S,
                                    const MatrixW& g) {
  require(c >= 0 && d >= 0 && c + d >= 1, Errc::kInvalidArgument, "need c, d >= 0 and c + d >= 1");
  const int r = c + d;
  require(S.rows() == r && S.cols() == r && g.rows() == r && g.cols() == r,
          Errc::kShapeMismatch, "S and g must be r x r");
  check_same_ring(*ring, *S.ring());
  check_same_ring(*ring, *g.ring());
  DieudonneTruncation D;
  D.c_ = c;
  D.d_ = d;
  D.ring_ = ring;
  D.S_ = S;
  D.g_ = g;
  const MatrixW Sinv = S.inverse();
  const MatrixW ginv = g.inverse();
  D.A_ = g * S * hodge_diagonal(ring, c, d, true);
  D.V_ = (hodge_diagonal(ring, c, d, false) * Sinv * ginv).frobenius(-1);
  D.verify();
  return D;
}

void DieudonneTruncation::verify() const {
  const int rr = r();
  const MatrixW pI = MatrixW::identity(ring_, rr).scaled(ring_->p());
  require(A_ * V_.frobenius(1) == pI, Errc::kInvariantViolation, "A sigma(V) != p");
  require(V_ * A_.frobenius(-1) == pI, Errc::kInvariantViolation, "V sigma^{-1}(A) != p");
  if (ring_->m() >= 1) {
    require(A_.residue_rank() == c_, Errc::kInvariantViolation, "rank of A mod p != c");
    require(V_.residue_rank() == d_, Errc::kInvariantViolation, "rank of V mod p != d");
  }
}

MatrixW linearize(const DieudonneTruncation& D, int j) {
  require(j >= 1, Errc::kInvalidArgument, "linearize needs j >= 1");
  MatrixW out = D.A();
  for (int e = 1; e < j; ++e) out = out * D.A().frobenius(e);
  return out;
}

namespace {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b, std::int64_t mod) {
  const std::size_t n = a.size();
  IntMatrix out(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % mod;
    }
  }
  return out;
}

}  // namespace

std::vector<ZpmVector> hom_equations(const DieudonneTruncation& D1, const DieudonneTruncation& D2) {
  check_same_ring(*D1.ring(), *D2.ring());
  require(D1.r() == D2.r(), Errc::kShapeMismatch, "hom_module needs equal heights");
  const WittRing& R = *D1.ring();
  const int r = D1.r();
  const int n = R.n();
  const std::int64_t mod = R.characteristic();
  const int unknowns = n * r * r;
  const IntMatrix fwd = R.frobenius_matrix(1);
  const IntMatrix bwd = R.frobenius_matrix(-1);
  auto var = [&](int i, int j) { return (i * r + j) * n; };

  std::vector<ZpmVector> rows;
  // left(x) = x * M1, right(x) = M2 * tw(x), tw the sigma^{+-1} coordinate map.
  auto add_condition = [&](const MatrixW& M1, const MatrixW& M2, const IntMatrix& tw) {
    for (int i = 0; i < r; ++i) {
      for (int l = 0; l < r; ++l) {
        std::vector<std::vector<std::int64_t>> block(n, std::vector<std::int64_t>(unknowns, 0));
        for (int j = 0; j < r; ++j) {
          const IntMatrix left = R.multiplication_matrix(M1(j, l));
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) block[a][var(i, j) + b] += left[a][b];
          }
          const IntMatrix right = matmul(R.multiplication_matrix(M2(i, j)), tw, mod);
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) block[a][var(j, l) + b] -= right[a][b];
          }
        }
        for (int a = 0; a < n; ++a) {
          ZpmVector row(unknowns);
          bool nonzero = false;
          for (int u = 0; u < unknowns; ++u) {
            std::int64_t v = block[a][u] % mod;
            if (v < 0) v += mod;
            row[u] = static_cast<std::uint32_t>(v);
            nonzero = nonzero || v != 0;
          }
          if (nonzero) rows.push_back(std::move(row));
        }
      }
    }
  };
  add_condition(D1.A(), D2.A(), fwd);
  add_condition(D1.V(), D2.V(), bwd);
  return rows;
}

SolutionModule hom_module(const DieudonneTruncation& D1, const DieudonneTruncation& D2) {
  const WittRing& R = *D1.ring();
  const int unknowns = R.n() * D1.r() * D1.r();
  return solve_linear_zpm(R.p(), R.m(), unknowns, hom_equations(D1, D2));
}

MatrixW unflatten(const RingPtr& ring, int r, const ZpmVector& x) {
  const int n = ring->n();
  require(static_cast<int>(x.size()) == n * r * r, Errc::kShapeMismatch, "flattened size");
  MatrixW out(ring, r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      Coeffs c{};
      for (int k = 0; k < n; ++k) c[k] = x[(i * r + j) * n + k];
      out(i, j) = c;
    }
  }
  return out;
}

ZpmVector flatten(const MatrixW& x) {
  const int n = x.ring()->n();
  ZpmVector out;
  out.reserve(static_cast<std::size_t>(n) * x.rows() * x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      for (int k = 0; k < n; ++k) out.push_back(x(i, j)[k]);
    }
  }
  return out;
}

void for_each_hom(const DieudonneTruncation& D1, const DieudonneTruncation& D2,
                  const std::function<void(const MatrixW&)>& visit, std::uint64_t cap) {
  const SolutionModule mod = hom_module(D1, D2);
  const RingPtr& ring = D1.ring();
  const int r = D1.r();
  mod.enumerate([&](const ZpmVector& x) { visit(unflatten(ring, r, x)); }, cap);
}

std::uint64_t aut_count(const DieudonneTruncation& D, std::uint64_t cap) {
  std::uint64_t count = 0;
  for_each_hom(D, D, [&](const MatrixW& x) {
    if (x.residue_invertible()) ++count;
  }, cap);
  return count;
}

std::vector<MatrixW> automorphisms(const DieudonneTruncation& D, std::uint64_t cap) {
  std::vector<MatrixW> out;
  for_each_hom(D, D, [&](const MatrixW& x) {
    if (x.residue_invertible()) out.push_back(x);
  }, cap);
  return out;
}

bool isomorphic(const DieudonneTruncation& D1, const DieudonneTruncation& D2, std::uint64_t cap) {
  if (D1.c() != D2.c() || D1.d() != D2.d()) return false;
  bool found = false;
  // Enumeration cannot be interrupted early; the module is small at desk scale.
  for_each_hom(D1, D2, [&](const MatrixW& x) {
    if (!found && x.residue_invertible()) found = true;
  }, cap);
  return found;
}

namespace {

// Permutation matrix moving the last `d` coordinates in front of the first `c`.
MatrixW block_swap(const RingPtr& ring, int c, int d) {
  std::vector<int> perm(c + d);
  for (int j = 0; j < c; ++j) perm[j] = d + j + 1;
  for (int j = 0; j < d; ++j) perm[c + j] = j + 1;
  return MatrixW::permutation(ring, perm);
}

}  // namespace

DieudonneTruncation cartier_dual(const DieudonneTruncation& D) {
  const MatrixW Q = block_swap(D.ring(), D.c(), D.d());
  const MatrixW Qt = Q.transpose();
  const MatrixW S = Q * D.S().inverse().transpose() * Qt;
  const MatrixW g = Q * D.g().inverse().transpose() * Qt;
  return make_truncation(D.d(), D.c(), D.ring(), S, g);
}

DieudonneTruncation change_precision(const DieudonneTruncation& D, int m_prime) {
  if (m_prime > D.ring()->m()) raise(Errc::kPrecisionIncrease, "cannot raise truncation precision");
  const RingPtr ring = D.ring()->reduced(m_prime);
  return make_truncation(D.c(), D.d(), ring, D.S().change_precision(ring),
                         D.g().change_precision(ring));
}

MatrixW base_change(const MatrixW& x, const RingPtr& target) {
  const WittRing& src = *x.ring();
  require(src.n() == 1, Errc::kInvalidArgument, "base change is defined from the prime field only");
  require(src.p() == target->p() && src.m() == target->m(), Errc::kRingMismatch,
          "base change needs equal p and m");
  MatrixW out(target, x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) out(i, j) = target->from_int(x(i, j)[0]);
  }
  return out;
}

DieudonneTruncation base_change(const DieudonneTruncation& D, const RingPtr& target) {
  return make_truncation(D.c(), D.d(), target, base_change(D.S(), target),
                         base_change(D.g(), target));
}

}  // namespace tbt
