#include "tbt/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "tbt/error.hpp"

namespace tbt {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) raise(Errc::kEnumerationTooLarge, "group order exceeds 64 bits");
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out = checked_mul(out, base);
  return out;
}

// Visits all tuples in [0, base)^k, last coordinate fastest.
void for_each_tuple(std::size_t k, std::size_t base,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k, 0);
  if (base == 0 && k > 0) return;
  while (true) {
    visit(idx);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < base) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (k == 0) return;
  }
}

MatrixW with_block(const RingPtr& ring, int r, int row, int col, const MatrixW& b) {
  MatrixW out = MatrixW::identity(ring, r);
  out.set_block(row, col, b);
  return out;
}

MatrixW block_diag(const MatrixW& a, const MatrixW& b) {
  MatrixW out = MatrixW::zero(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

bool is_symmetric(const MatrixW& x) { return x == x.transpose(); }

void check_triple_shape(const ActionContext& ctx, const ActionTriple& h) {
  require(h.L.rows() == ctx.d && h.L.cols() == ctx.c && h.U.rows() == ctx.c && h.U.cols() == ctx.d &&
              h.u0.rows() == ctx.c && h.u0.cols() == ctx.c && h.u1.rows() == ctx.d &&
              h.u1.cols() == ctx.d,
          Errc::kShapeMismatch, "triple blocks do not match (c, d)");
  check_same_ring(*ctx.ring, *h.L.ring());
  check_same_ring(*ctx.ring, *h.u0.ring());
  require(h.u0.residue_invertible() && h.u1.residue_invertible(), Errc::kNotInvertible,
          "diagonal part of the triple is not invertible");
}

void check_g(const ActionContext& ctx, const MatrixW& g) {
  require(g.rows() == ctx.r() && g.cols() == ctx.r(), Errc::kShapeMismatch, "g has the wrong size");
  check_same_ring(*ctx.ring, *g.ring());
  require(g.residue_invertible(), Errc::kNotInvertible, "g is not invertible");
  if (ctx.symplectic && !ctx.symplectic->preserves(g)) {
    raise(Errc::kSymplecticViolation, "g is not symplectic");
  }
}

// Left and right factors of h: h . g = X g R.
struct ActionFactors {
  MatrixW X, R;
};

ActionFactors factors(const ActionContext& ctx, const ActionTriple& h) {
  const RingPtr& ring = ctx.ring;
  const int r = ctx.r();
  const MatrixW X = DividedMatrix::from_triple(h).B;
  const MatrixW h3_inv = with_block(ring, r, 0, ctx.c, MatrixW::zero(ring, ctx.c, ctx.d) - h.U);
  const MatrixW h2_inv = block_diag(h.u0.inverse(), h.u1.inverse());
  const MatrixW h1p_inv =
      with_block(ring, r, ctx.c, 0, MatrixW::zero(ring, ctx.d, ctx.c) - h.L.scaled(ring->p()));
  const MatrixW R = ctx.S * (h3_inv * h2_inv * h1p_inv).frobenius(1) * ctx.S_inv;
  return {X, R};
}

std::vector<Coeffs> additive_generators(const WittRing& ring) {
  std::vector<Coeffs> out;
  for (int a = 0; a < ring.m(); ++a) {
    for (int b = 0; b < ring.n(); ++b) {
      const Coeffs tau = ring.teichmuller(ring.pow(ring.generator(), static_cast<std::uint64_t>(b)));
      std::int64_t pa = 1;
      for (int i = 0; i < a; ++i) pa *= ring.p();
      out.push_back(ring.scale(tau, pa));
    }
  }
  return out;
}

std::vector<Coeffs> unit_generators(const WittRing& ring) {
  std::vector<Coeffs> out;
  const Coeffs prim = ring.teichmuller(ring.residue_primitive_element());
  if (prim != ring.one()) out.push_back(prim);
  for (int a = 1; a < ring.m(); ++a) {
    for (int b = 0; b < ring.n(); ++b) {
      const Coeffs tau = ring.teichmuller(ring.pow(ring.generator(), static_cast<std::uint64_t>(b)));
      std::int64_t pa = 1;
      for (int i = 0; i < a; ++i) pa *= ring.p();
      out.push_back(ring.add(ring.one(), ring.scale(tau, pa)));
    }
  }
  return out;
}

// Generators of GL_k(W_m): elementary transvections and diagonal units.
std::vector<MatrixW> gl_generators(const RingPtr& ring, int k) {
  std::vector<MatrixW> out;
  const auto adds = additive_generators(*ring);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      for (const auto& t : adds) {
        MatrixW e = MatrixW::identity(ring, k);
        e(i, j) = t;
        out.push_back(std::move(e));
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    for (const auto& u : unit_generators(*ring)) {
      MatrixW e = MatrixW::identity(ring, k);
      e(i, i) = u;
      out.push_back(std::move(e));
    }
  }
  return out;
}

// Off-diagonal block generators; symmetric ones when `symmetric`.
std::vector<MatrixW> block_generators(const RingPtr& ring, int rows, int cols, bool symmetric) {
  std::vector<MatrixW> out;
  const auto adds = additive_generators(*ring);
  for (int i = 0; i < rows; ++i) {
    for (int j = symmetric ? i : 0; j < cols; ++j) {
      for (const auto& t : adds) {
        MatrixW e = MatrixW::zero(ring, rows, cols);
        e(i, j) = t;
        if (symmetric) e(j, i) = t;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

void check_cap(std::uint64_t count, std::uint64_t cap, const char* what) {
  if (count > cap) {
    raise(Errc::kEnumerationTooLarge,
          std::string(what) + ": " + std::to_string(count) + " elements exceed the cap of " +
              std::to_string(cap));
  }
}

std::vector<Coeffs> all_elements(const WittRing& ring) {
  std::vector<Coeffs> out;
  ring.for_each(ElementFilter::kAll, [&](const Coeffs& a) { out.push_back(a); });
  return out;
}

// Index tuples for matrices with `entries` free coordinates.
void for_each_matrix(const RingPtr& ring, std::size_t entries,
                     const std::function<void(const std::vector<std::size_t>&)>& visit,
                     std::uint64_t cap) {
  check_cap(checked_pow(ring->size(), entries), cap, "matrix enumeration");
  for_each_tuple(entries, ring->size(), visit);
}

MatrixW symmetric_from(const RingPtr& ring, int k, const std::vector<Coeffs>& elems,
                       const std::vector<std::size_t>& idx, std::size_t offset) {
  MatrixW out = MatrixW::zero(ring, k, k);
  std::size_t pos = offset;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      out(i, j) = elems[idx[pos]];
      out(j, i) = elems[idx[pos]];
      ++pos;
    }
  }
  return out;
}

MatrixW dense_from(const RingPtr& ring, int rows, int cols, const std::vector<Coeffs>& elems,
                   const std::vector<std::size_t>& idx, std::size_t offset) {
  MatrixW out = MatrixW::zero(ring, rows, cols);
  std::size_t pos = offset;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = elems[idx[pos++]];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

MatrixW SymplecticDescriptor::form(const RingPtr& ring) const {
  MatrixW J = MatrixW::zero(ring, 2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    J(i, d + i) = ring->one();
    J(d + i, i) = ring->from_int(-1);
  }
  return J;
}

bool SymplecticDescriptor::preserves(const MatrixW& x) const {
  if (x.rows() != 2 * d || x.cols() != 2 * d) return false;
  const MatrixW J = form(x.ring());
  return x.transpose() * J * x == J;
}

std::optional<Coeffs> SymplecticDescriptor::multiplier(const MatrixW& x) const {
  if (x.rows() != 2 * d || x.cols() != 2 * d || d == 0) return std::nullopt;
  const RingPtr& ring = x.ring();
  const MatrixW J = form(ring);
  const MatrixW M = x.transpose() * J * x;
  const Coeffs lambda = M(0, d);
  if (!ring->is_unit(lambda)) return std::nullopt;
  if (!(M == MatrixW::scalar(ring, 2 * d, lambda) * J)) return std::nullopt;
  return lambda;
}

int SymplecticDescriptor::e_plus() const {
  int count = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) ++count;
  }
  return count;
}

int SymplecticDescriptor::e_minus() const { return e_plus(); }

int SymplecticDescriptor::e_zero() const { return d * d; }

ActionContext ActionContext::reduced(int m_prime) const {
  ActionContext out = *this;
  out.ring = ring->reduced(m_prime);
  out.S = S.change_precision(out.ring);
  out.S_inv = S_inv.change_precision(out.ring);
  return out;
}

DieudonneTruncation ActionContext::truncation(const MatrixW& g) const {
  return make_truncation(c, d, ring, S, g);
}

ActionContext make_context(int c, int d, const RingPtr& ring, const MatrixW& S, bool symplectic) {
  require(c >= 0 && d >= 0 && c + d >= 1, Errc::kInvalidArgument, "need c, d >= 0 and c + d >= 1");
  require(ring != nullptr, Errc::kInvalidArgument, "null ring");
  require(S.rows() == c + d && S.cols() == c + d, Errc::kShapeMismatch, "S must be r x r");
  check_same_ring(*ring, *S.ring());
  require(S.residue_invertible(), Errc::kNotInvertible, "S is not invertible");
  ActionContext ctx;
  ctx.c = c;
  ctx.d = d;
  ctx.ring = ring;
  ctx.S = S;
  ctx.S_inv = S.inverse();
  if (symplectic) {
    require(c == d, Errc::kSymplecticViolation, "symplectic contexts need c = d");
    SymplecticDescriptor desc{d};
    require(desc.multiplier(S).has_value(), Errc::kSymplecticViolation,
            "S is not a symplectic similitude");
    ctx.symplectic = desc;
  }
  return ctx;
}

ActionContext minimal_context(int c, int d, const RingPtr& ring, bool symplectic) {
  const KraftDatum datum = minimal_datum(c, d);
  return make_context(c, d, ring, MatrixW::permutation(ring, datum.pi), symplectic);
}

ActionContext ordinary_context(int c, int d, const RingPtr& ring, bool symplectic) {
  return make_context(c, d, ring, MatrixW::identity(ring, c + d), symplectic);
}

// ---------------------------------------------------------------------------

ActionTriple ActionTriple::identity(const ActionContext& ctx) {
  return {MatrixW::zero(ctx.ring, ctx.d, ctx.c), MatrixW::identity(ctx.ring, ctx.c),
          MatrixW::identity(ctx.ring, ctx.d), MatrixW::zero(ctx.ring, ctx.c, ctx.d)};
}

MatrixW ActionTriple::h1() const { return with_block(L.ring(), L.rows() + L.cols(), L.cols(), 0, L); }

MatrixW ActionTriple::h2() const { return block_diag(u0, u1); }

MatrixW ActionTriple::h3() const { return with_block(U.ring(), U.rows() + U.cols(), 0, U.rows(), U); }

MatrixW ActionTriple::h1_pow_p() const {
  return with_block(L.ring(), L.rows() + L.cols(), L.cols(), 0, L.scaled(L.ring()->p()));
}

MatrixW ActionTriple::h3_pow_p() const {
  return with_block(U.ring(), U.rows() + U.cols(), 0, U.rows(), U.scaled(U.ring()->p()));
}

DividedMatrix DividedMatrix::from_triple(const ActionTriple& h) {
  const int c = h.u0.rows();
  const int d = h.u1.rows();
  const int p = h.u0.ring()->p();
  const MatrixW Y = h.u0 * h.U;
  const MatrixW Lu0 = h.L * h.u0;
  MatrixW B = MatrixW::zero(h.u0.ring(), c + d, c + d);
  B.set_block(0, 0, h.u0);
  B.set_block(0, c, Y.scaled(p));
  B.set_block(c, 0, Lu0);
  B.set_block(c, c, h.u1 + (Lu0 * h.U).scaled(p));
  return {c, B, Y};
}

ActionTriple DividedMatrix::to_triple(int d) const {
  const int p = B.ring()->p();
  const MatrixW u0 = B.block(0, 0, c, c);
  const MatrixW u0_inv = u0.inverse();
  const MatrixW B10 = B.block(c, 0, d, c);
  return {B10 * u0_inv, u0, B.block(c, c, d, d) - (B10 * u0_inv * Y).scaled(p), u0_inv * Y};
}

DividedMatrix DividedMatrix::operator*(const DividedMatrix& o) const {
  const int d = B.rows() - c;
  return {c, B * o.B, B.block(0, 0, c, c) * o.Y + Y * o.B.block(c, c, d, d)};
}

MatrixW phi_divided(const ActionContext& ctx, const DividedMatrix& X) {
  const int c = ctx.c;
  const int d = ctx.d;
  const int p = ctx.ring->p();
  MatrixW Z = MatrixW::zero(ctx.ring, ctx.r(), ctx.r());
  Z.set_block(0, 0, X.B.block(0, 0, c, c).frobenius(1));
  Z.set_block(0, c, X.Y.frobenius(1));
  Z.set_block(c, 0, X.B.block(c, 0, d, c).frobenius(1).scaled(p));
  Z.set_block(c, c, X.B.block(c, c, d, d).frobenius(1));
  return ctx.S * Z * ctx.S_inv;
}

bool is_symplectic_triple(const ActionTriple& h) {
  if (h.u0.rows() != h.u1.rows()) return false;
  return is_symmetric(h.L) && is_symmetric(h.U) && h.u1 == h.u0.inverse().transpose();
}

MatrixW act(const ActionContext& ctx, const ActionTriple& h, const MatrixW& g) {
  check_triple_shape(ctx, h);
  check_g(ctx, g);
  if (ctx.symplectic && !is_symplectic_triple(h)) {
    raise(Errc::kSymplecticViolation, "triple is outside the symplectic subgroup");
  }
  const ActionFactors f = factors(ctx, h);
  return f.X * g * f.R;
}

ActionTriple compose_triples(const ActionContext& ctx, const ActionTriple& h, const ActionTriple& h2) {
  check_triple_shape(ctx, h);
  check_triple_shape(ctx, h2);
  return (DividedMatrix::from_triple(h) * DividedMatrix::from_triple(h2)).to_triple(ctx.d);
}

ActionTriple inverse_triple(const ActionContext& ctx, const ActionTriple& h) {
  check_triple_shape(ctx, h);
  const int c = ctx.c;
  const int p = ctx.ring->p();
  const MatrixW u0_inv = h.u0.inverse();
  const MatrixW u1_inv = h.u1.inverse();
  MatrixW B = MatrixW::zero(ctx.ring, ctx.r(), ctx.r());
  const MatrixW Y = MatrixW::zero(ctx.ring, c, ctx.d) - h.U * u1_inv;
  B.set_block(0, 0, u0_inv + (h.U * u1_inv * h.L).scaled(p));
  B.set_block(0, c, Y.scaled(p));
  B.set_block(c, 0, MatrixW::zero(ctx.ring, ctx.d, c) - u1_inv * h.L);
  B.set_block(c, c, u1_inv);
  return DividedMatrix{c, B, Y}.to_triple(ctx.d);
}

std::vector<ActionTriple> h_generators(const ActionContext& ctx) {
  const RingPtr& ring = ctx.ring;
  const bool sym = ctx.symplectic.has_value();
  std::vector<ActionTriple> out;
  const ActionTriple id = ActionTriple::identity(ctx);
  for (auto& L : block_generators(ring, ctx.d, ctx.c, sym)) {
    ActionTriple h = id;
    h.L = std::move(L);
    out.push_back(std::move(h));
  }
  for (auto& U : block_generators(ring, ctx.c, ctx.d, sym)) {
    ActionTriple h = id;
    h.U = std::move(U);
    out.push_back(std::move(h));
  }
  if (sym) {
    for (auto& u : gl_generators(ring, ctx.d)) {
      ActionTriple h = id;
      h.u1 = u.inverse().transpose();
      h.u0 = std::move(u);
      out.push_back(std::move(h));
    }
  } else {
    for (auto& u : gl_generators(ring, ctx.c)) {
      ActionTriple h = id;
      h.u0 = std::move(u);
      out.push_back(std::move(h));
    }
    for (auto& u : gl_generators(ring, ctx.d)) {
      ActionTriple h = id;
      h.u1 = std::move(u);
      out.push_back(std::move(h));
    }
  }
  return out;
}

std::uint64_t gl_order(std::uint64_t q, int n) {
  std::uint64_t out = 1;
  const std::uint64_t qn = checked_pow(q, static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) out = checked_mul(out, qn - checked_pow(q, static_cast<std::uint64_t>(i)));
  return out;
}

std::uint64_t group_order(const ActionContext& ctx) {
  const std::uint64_t q = ctx.ring->residue_size();
  const auto m = static_cast<std::uint64_t>(ctx.ring->m());
  const auto c = static_cast<std::uint64_t>(ctx.c);
  const auto d = static_cast<std::uint64_t>(ctx.d);
  if (ctx.symplectic) {
    return checked_mul(checked_mul(checked_pow(q, m * d * (d + 1)), checked_pow(q, (m - 1) * d * d)),
                       gl_order(q, ctx.d));
  }
  std::uint64_t out = checked_pow(q, 2 * c * d * m);
  out = checked_mul(out, checked_pow(q, (m - 1) * (c * c + d * d)));
  out = checked_mul(out, gl_order(q, ctx.c));
  return checked_mul(out, gl_order(q, ctx.d));
}

std::vector<MatrixW> enumerate_gl(const RingPtr& ring, int r, bool symplectic, std::uint64_t cap) {
  require(r >= 0, Errc::kInvalidArgument, "negative size");
  require(!symplectic || r % 2 == 0, Errc::kSymplecticViolation, "symplectic size must be even");
  const auto elems = all_elements(*ring);
  const SymplecticDescriptor desc{r / 2};
  std::vector<MatrixW> out;
  for_each_matrix(
      ring, static_cast<std::size_t>(r) * r,
      [&](const std::vector<std::size_t>& idx) {
        MatrixW x = dense_from(ring, r, r, elems, idx, 0);
        if (!x.residue_invertible()) return;
        if (symplectic && !desc.preserves(x)) return;
        out.push_back(std::move(x));
      },
      cap);
  return out;
}

void for_each_triple(const ActionContext& ctx, const std::function<void(const ActionTriple&)>& visit,
                     std::uint64_t cap) {
  check_cap(group_order(ctx), cap, "triple enumeration");
  const RingPtr& ring = ctx.ring;
  const auto elems = all_elements(*ring);
  if (ctx.symplectic) {
    const int d = ctx.d;
    const std::size_t sym_entries = static_cast<std::size_t>(d) * (d + 1) / 2;
    const auto units = enumerate_gl(ring, d, false, cap);
    for (const auto& u : units) {
      const MatrixW u1 = u.inverse().transpose();
      for_each_tuple(2 * sym_entries, elems.size(), [&](const std::vector<std::size_t>& idx) {
        visit({symmetric_from(ring, d, elems, idx, 0), u, u1,
               symmetric_from(ring, d, elems, idx, sym_entries)});
      });
    }
    return;
  }
  const std::size_t cd = static_cast<std::size_t>(ctx.c) * ctx.d;
  const auto gl_c = enumerate_gl(ring, ctx.c, false, cap);
  const auto gl_d = enumerate_gl(ring, ctx.d, false, cap);
  for (const auto& u0 : gl_c) {
    for (const auto& u1 : gl_d) {
      for_each_tuple(2 * cd, elems.size(), [&](const std::vector<std::size_t>& idx) {
        visit({dense_from(ring, ctx.d, ctx.c, elems, idx, 0), u0, u1,
               dense_from(ring, ctx.c, ctx.d, elems, idx, cd)});
      });
    }
  }
}

void for_each_symplectic_triple_by_filter(const ActionContext& ctx,
                                          const std::function<void(const ActionTriple&)>& visit,
                                          std::uint64_t cap) {
  require(ctx.c == ctx.d, Errc::kSymplecticViolation, "symplectic contexts need c = d");
  ActionContext full = ctx;
  full.symplectic.reset();
  for_each_triple(
      full,
      [&](const ActionTriple& h) {
        if (is_symplectic_triple(h)) visit(h);
      },
      cap);
}

// ---------------------------------------------------------------------------

OrbitReport orbit_bfs(const ActionContext& ctx, const MatrixW& g0, bool collect, std::uint64_t budget) {
  check_g(ctx, g0);
  std::vector<ActionFactors> gens;
  for (const auto& h : h_generators(ctx)) gens.push_back(factors(ctx, h));

  std::unordered_set<std::string> seen;
  std::deque<MatrixW> queue;
  std::string best = g0.key();
  seen.insert(best);
  queue.push_back(g0);
  while (!queue.empty()) {
    const MatrixW g = std::move(queue.front());
    queue.pop_front();
    for (const auto& f : gens) {
      MatrixW next = f.X * g * f.R;
      std::string key = next.key();
      if (!seen.insert(key).second) continue;
      if (seen.size() > budget) {
        throw OrbitTooLarge(seen.size(), "orbit exceeds the budget of " + std::to_string(budget) +
                                             " states");
      }
      if (key < best) best = key;
      queue.push_back(std::move(next));
    }
  }
  OrbitReport report;
  report.seed = g0;
  report.size = seen.size();
  report.canonical = MatrixW::from_key(ctx.ring, ctx.r(), ctx.r(), best);
  if (collect) {
    report.elements.assign(seen.begin(), seen.end());
    std::sort(report.elements.begin(), report.elements.end());
  }
  return report;
}

bool same_orbit(const ActionContext& ctx, const MatrixW& g1, const MatrixW& g2, std::uint64_t budget) {
  return orbit_bfs(ctx, g1, false, budget).canonical == orbit_bfs(ctx, g2, false, budget).canonical;
}

std::uint64_t stabilizer_count(const ActionContext& ctx, const MatrixW& g0, std::uint64_t budget) {
  const std::uint64_t order = group_order(ctx);
  const std::uint64_t size = orbit_bfs(ctx, g0, false, budget).size;
  if (order % size != 0) {
    raise(Errc::kNonIntegralQuotient, "orbit size " + std::to_string(size) +
                                          " does not divide the group order " + std::to_string(order));
  }
  return order / size;
}

std::vector<ActionTriple> stabilizer_elements(const ActionContext& ctx, const MatrixW& g0,
                                              std::uint64_t cap) {
  check_g(ctx, g0);
  std::vector<ActionTriple> out;
  for_each_triple(
      ctx,
      [&](const ActionTriple& h) {
        const ActionFactors f = factors(ctx, h);
        if (f.X * g0 * f.R == g0) out.push_back(h);
      },
      cap);
  return out;
}

MatrixW stabilizer_to_aut(const ActionContext& ctx, const ActionTriple& h, const MatrixW& g0) {
  check_triple_shape(ctx, h);
  check_g(ctx, g0);
  const ActionFactors f = factors(ctx, h);
  require(f.X * g0 * f.R == g0, Errc::kInvalidArgument, "triple does not fix g0");
  const DieudonneTruncation D = ctx.truncation(g0);
  const MatrixW& X = f.X;
  const bool ok = X.residue_invertible() && X * D.A() == D.A() * X.frobenius(1) &&
                  X * D.V() == D.V() * X.frobenius(-1);
  require(ok, Errc::kNotAnAutomorphism, "h1 h2 h3^p is not an automorphism of the truncation");
  return X;
}

std::uint64_t chi_image_count(const DieudonneTruncation& D, std::uint64_t cap) {
  std::unordered_set<std::string> image;
  const RingPtr field = D.ring()->residue_field();
  for_each_hom(
      D, D,
      [&](const MatrixW& x) {
        if (!x.residue_invertible()) return;
        const MatrixW xbar = x.change_precision(field);
        image.insert(xbar.block(0, 0, D.c(), D.c()).key() + '|' +
                     xbar.block(D.c(), D.c(), D.d(), D.d()).key());
      },
      cap);
  return image.size();
}

DimFit dim_fit(int p, const std::vector<std::pair<int, double>>& counts) {
  require(p >= 2, Errc::kInvalidArgument, "p must be at least 2");
  std::vector<int> ns;
  for (const auto& [n, count] : counts) {
    require(count > 0, Errc::kInvalidArgument, "counts must be positive");
    ns.push_back(n);
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  require(ns.size() >= 2, Errc::kInsufficientData, "need counts for at least two residue degrees");

  const double k = static_cast<double>(counts.size());
  double sx = 0, sy = 0;
  for (const auto& [n, count] : counts) {
    sx += n;
    sy += std::log(count) / std::log(static_cast<double>(p));
  }
  const double mx = sx / k;
  const double my = sy / k;
  double sxy = 0, sxx = 0;
  for (const auto& [n, count] : counts) {
    const double y = std::log(count) / std::log(static_cast<double>(p));
    sxy += (n - mx) * (y - my);
    sxx += (n - mx) * (n - mx);
  }
  DimFit fit;
  fit.slope = sxy / sxx;
  fit.estimate = static_cast<int>(std::lround(fit.slope));
  fit.residual = std::fabs(fit.slope - fit.estimate);
  fit.reliable = fit.residual <= kDimFitTolerance;
  return fit;
}

// ---------------------------------------------------------------------------

LevelExperimentReport level_experiment(const ActionContext& ctx, int level,
                                       const std::vector<MatrixW>& g_list, std::uint64_t budget) {
  const int M = ctx.ring->m();
  require(level >= 0 && level <= M, Errc::kInvalidArgument, "level must lie in [0, m]");

  // Polygons at full precision; nullopt when precision does not determine them.
  std::vector<std::optional<NewtonPolygon>> polys;
  polys.reserve(g_list.size());
  LevelExperimentReport report;
  report.level = level;
  report.precision = M;
  report.elements = g_list.size();
  for (const auto& g : g_list) {
    try {
      polys.emplace_back(np_from_matrix(ctx.truncation(g)));
      if (std::find(report.polygons.begin(), report.polygons.end(), *polys.back()) ==
          report.polygons.end()) {
        report.polygons.push_back(*polys.back());
      }
    } catch (const InsufficientPrecision&) {
      polys.emplace_back(std::nullopt);
    }
  }

  for (int l = 0; l <= level; ++l) {
    std::vector<LevelClass> classes;
    std::vector<std::size_t> class_of(g_list.size(), 0);
    if (l == 0) {
      classes.emplace_back();
    } else {
      const ActionContext reduced = ctx.reduced(l);
      std::unordered_map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < g_list.size(); ++i) {
        const MatrixW gl = g_list[i].change_precision(reduced.ring);
        const std::string key = gl.key();
        auto it = index.find(key);
        if (it == index.end()) {
          const OrbitReport orbit = orbit_bfs(reduced, gl, true, budget);
          LevelClass cls;
          cls.canonical = orbit.canonical;
          for (const auto& member : orbit.elements) index.emplace(member, classes.size());
          classes.push_back(std::move(cls));
          it = index.find(key);
        }
        class_of[i] = it->second;
      }
    }
    for (std::size_t i = 0; i < g_list.size(); ++i) {
      LevelClass& cls = classes[class_of[i]];
      ++cls.members;
      if (!polys[i]) {
        ++cls.uncertain;
        continue;
      }
      if (std::find(cls.polygons.begin(), cls.polygons.end(), *polys[i]) == cls.polygons.end()) {
        cls.polygons.push_back(*polys[i]);
      }
    }
    int violations = 0;
    for (auto& cls : classes) {
      cls.violation = cls.polygons.size() > 1;
      if (cls.violation) ++violations;
    }
    if (violations == 0 && report.minimal_separating_level < 0) report.minimal_separating_level = l;
    if (l == level) {
      report.violations = violations;
      report.classes = std::move(classes);
    }
  }
  return report;
}

}  // namespace tbt
