#include "tbt/witt.hpp"

#include <algorithm>
#include <sstream>

#include "tbt/error.hpp"

namespace tbt {
namespace {

using Poly = std::vector<std::int64_t>;  // lowest degree first, over F_p

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g over F_p.
Poly poly_rem(Poly f, const Poly& g, std::int64_t p) {
  const std::size_t dg = g.size() - 1;
  trim(f);
  while (f.size() > dg) {
    const std::int64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = mod(f[shift + i] - lead * g[i], p);
    }
    trim(f);
  }
  return f;
}

bool irreducible_mod_p(const Poly& f, std::int64_t p) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return n == 1;
  // Trial division by every monic polynomial of degree <= n/2.
  for (int k = 1; k <= n / 2; ++k) {
    std::int64_t total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (std::int64_t code = 0; code < total; ++code) {
      Poly g(k + 1, 0);
      std::int64_t c = code;
      for (int i = 0; i < k; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[k] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> prime_factors(std::uint64_t v) {
  std::vector<std::int64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(static_cast<std::int64_t>(d));
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void check_same_ring(const WittRing& a, const WittRing& b) {
  if (!a.same_as(b)) raise(Errc::kRingMismatch, "operands live in different rings");
}

std::vector<std::int64_t> WittRing::default_modulus(int p, int n) {
  require(is_prime(p), Errc::kInvalidArgument, "p must be prime");
  require(n >= 1 && n <= kMaxResidueDegree, Errc::kInvalidArgument,
          "residue degree out of range");
  if (n == 1) return {0, 1};
  // Codes enumerate (a_{n-1}, ..., a_0) with a_{n-1} most significant.
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t code = 0; code < total; ++code) {
    Poly f(n + 1, 0);
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      f[i] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p));
      c /= static_cast<std::uint64_t>(p);
    }
    f[n] = 1;
    if (irreducible_mod_p(f, p)) return f;
  }
  raise(Errc::kInvariantViolation, "no irreducible polynomial found");
}

RingPtr WittRing::make(int p, int n, int m) {
  RingDescriptor d;
  d.p = p;
  d.n = n;
  d.m = m;
  d.modulus = default_modulus(p, n);
  return make(d);
}

RingPtr WittRing::make(const RingDescriptor& descriptor) {
  const auto& d = descriptor;
  require(is_prime(d.p), Errc::kInvalidArgument, "p must be prime");
  require(d.n >= 1 && d.n <= kMaxResidueDegree, Errc::kInvalidArgument,
          "residue degree must lie in [1, " + std::to_string(kMaxResidueDegree) + "]");
  require(d.m >= 1, Errc::kInvalidArgument, "truncation length must be >= 1");
  std::uint64_t pm = 1;
  for (int i = 0; i < d.m; ++i) {
    pm *= static_cast<std::uint64_t>(d.p);
    require(pm <= (std::uint64_t{1} << 31), Errc::kInvalidArgument, "p^m exceeds 2^31");
  }
  require(static_cast<int>(d.modulus.size()) == d.n + 1, Errc::kInvalidArgument,
          "modulus must have n+1 coefficients");
  require(d.modulus.back() == 1, Errc::kInvalidArgument, "modulus must be monic");
  Poly residue(d.modulus.size());
  for (std::size_t i = 0; i < d.modulus.size(); ++i) {
    require(d.modulus[i] >= 0 && static_cast<std::uint64_t>(d.modulus[i]) < pm,
            Errc::kInvalidArgument, "modulus coefficients must lie in [0, p^m)");
    residue[i] = d.modulus[i] % d.p;
  }
  require(irreducible_mod_p(residue, d.p), Errc::kInvalidArgument,
          "modulus is not irreducible mod p");
  return RingPtr(new WittRing(descriptor));
}

WittRing::WittRing(RingDescriptor descriptor) : desc_(std::move(descriptor)) {
  pm_ = 1;
  for (int i = 0; i < desc_.m; ++i) pm_ *= static_cast<std::uint32_t>(desc_.p);
  q_ = 1;
  for (int i = 0; i < desc_.n; ++i) q_ *= static_cast<std::uint64_t>(desc_.p);
  size_ = 1;
  for (int i = 0; i < desc_.n * desc_.m; ++i) {
    if (size_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(desc_.p)) {
      size_ = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    size_ *= static_cast<std::uint64_t>(desc_.p);
  }
  build_frobenius();
}

void WittRing::build_frobenius() {
  const int n = desc_.n;
  frob_.assign(n, std::vector<Coeffs>(n));
  Coeffs power = one();
  for (int j = 0; j < n; ++j) {
    frob_[0][j] = power;
    power = mul(power, generator());
  }
  if (n == 1) return;

  // Newton iteration y <- y - f(y)/f'(y) from y = x^p.
  const auto eval = [&](const Coeffs& y, bool derivative) {
    Coeffs acc = zero();
    for (int i = n; i >= (derivative ? 1 : 0); --i) {
      const std::int64_t coeff = derivative ? desc_.modulus[i] * i : desc_.modulus[i];
      acc = add(mul(acc, y), from_int(coeff));
    }
    return acc;
  };
  Coeffs y = pow(generator(), static_cast<std::uint64_t>(desc_.p));
  for (int step = 1; step < 2 * desc_.m + 2; step *= 2) {
    y = sub(y, mul(eval(y, false), inverse(eval(y, true))));
  }
  if (!is_zero(eval(y, false))) {
    raise(Errc::kInvariantViolation, "Hensel lift of Frobenius did not converge");
  }

  // sigma^e(x) = sigma(sigma^{e-1}(x)); sigma(a) = sum a_j y^j.
  std::vector<Coeffs> images(n);
  images[0] = generator();
  for (int e = 1; e < n; ++e) {
    Coeffs acc = zero();
    Coeffs yp = one();
    for (int j = 0; j < n; ++j) {
      acc = add(acc, scale(yp, images[e - 1][j]));
      yp = mul(yp, y);
    }
    images[e] = acc;
  }
  for (int e = 1; e < n; ++e) {
    Coeffs pw = one();
    for (int j = 0; j < n; ++j) {
      frob_[e][j] = pw;
      pw = mul(pw, images[e]);
    }
  }
}

Coeffs WittRing::one() const { return from_int(1); }

Coeffs WittRing::from_int(std::int64_t value) const {
  Coeffs c{};
  c[0] = static_cast<std::uint32_t>(mod(value, pm_));
  return c;
}

Coeffs WittRing::from_coeffs(std::span<const std::int64_t> values) const {
  require(static_cast<int>(values.size()) <= desc_.n, Errc::kInvalidArgument,
          "too many coefficients for the residue degree");
  Coeffs c{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    c[i] = static_cast<std::uint32_t>(mod(values[i], pm_));
  }
  return c;
}

Coeffs WittRing::generator() const {
  if (desc_.n == 1) {
    // x is the root of the linear modulus x + a_0.
    return from_int(-desc_.modulus[0]);
  }
  Coeffs c{};
  c[1] = 1;
  return c;
}

Coeffs WittRing::add(const Coeffs& a, const Coeffs& b) const {
  Coeffs c{};
  for (int i = 0; i < desc_.n; ++i) {
    const std::uint64_t s = std::uint64_t{a[i]} + b[i];
    c[i] = static_cast<std::uint32_t>(s >= pm_ ? s - pm_ : s);
  }
  return c;
}

Coeffs WittRing::sub(const Coeffs& a, const Coeffs& b) const {
  Coeffs c{};
  for (int i = 0; i < desc_.n; ++i) {
    c[i] = a[i] >= b[i] ? a[i] - b[i] : static_cast<std::uint32_t>(std::uint64_t{a[i]} + pm_ - b[i]);
  }
  return c;
}

Coeffs WittRing::neg(const Coeffs& a) const { return sub(zero(), a); }

Coeffs WittRing::mul(const Coeffs& a, const Coeffs& b) const {
  const int n = desc_.n;
  const std::uint64_t pm = pm_;
  if (n == 1) {
    Coeffs c{};
    c[0] = static_cast<std::uint32_t>((std::uint64_t{a[0]} * b[0]) % pm);
    return c;
  }
  std::array<std::uint64_t, 2 * kMaxResidueDegree> t{};
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j]) % pm;
    }
  }
  for (int k = 2 * n - 2; k >= n; --k) {
    const std::uint64_t lead = t[k] % pm;
    if (lead == 0) continue;
    const std::uint64_t neg_lead = pm - lead;
    for (int i = 0; i < n; ++i) {
      const auto f = static_cast<std::uint64_t>(desc_.modulus[i]);
      t[k - n + i] = (t[k - n + i] + neg_lead * f) % pm;
    }
    t[k] = 0;
  }
  Coeffs c{};
  for (int i = 0; i < n; ++i) c[i] = static_cast<std::uint32_t>(t[i]);
  return c;
}

Coeffs WittRing::scale(const Coeffs& a, std::int64_t k) const {
  const std::uint64_t kk = static_cast<std::uint64_t>(mod(k, pm_));
  Coeffs c{};
  for (int i = 0; i < desc_.n; ++i) {
    c[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} * kk) % pm_);
  }
  return c;
}

Coeffs WittRing::pow(Coeffs a, std::uint64_t e) const {
  Coeffs r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool WittRing::is_zero(const Coeffs& a) const {
  for (int i = 0; i < desc_.n; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

bool WittRing::is_unit(const Coeffs& a) const {
  for (int i = 0; i < desc_.n; ++i) {
    if (a[i] % static_cast<std::uint32_t>(desc_.p) != 0) return true;
  }
  return false;
}

Coeffs WittRing::inverse(const Coeffs& a) const {
  if (!is_unit(a)) raise(Errc::kNotAUnit, to_string(a) + " is not a unit");
  // Inverse modulo p via a^{q-2}, then Newton steps y <- y(2 - a y).
  Coeffs y = pow(residue(a), q_ - 2);
  const Coeffs two = from_int(2);
  for (int precision = 1; precision < desc_.m; precision *= 2) {
    y = mul(y, sub(two, mul(a, y)));
  }
  return y;
}

Coeffs WittRing::frobenius(const Coeffs& a, int power) const {
  const int n = desc_.n;
  int e = power % n;
  if (e < 0) e += n;
  if (e == 0) return a;
  Coeffs acc = zero();
  for (int j = 0; j < n; ++j) {
    if (a[j] != 0) acc = add(acc, scale(frob_[e][j], a[j]));
  }
  return acc;
}

int WittRing::valuation(const Coeffs& a) const {
  if (is_zero(a)) return kInfiniteValuation;
  int best = desc_.m;
  for (int i = 0; i < desc_.n; ++i) {
    if (a[i] == 0) continue;
    std::uint32_t v = a[i];
    int k = 0;
    while (v % static_cast<std::uint32_t>(desc_.p) == 0) {
      v /= static_cast<std::uint32_t>(desc_.p);
      ++k;
    }
    best = std::min(best, k);
  }
  return best;
}

Coeffs WittRing::residue(const Coeffs& a) const {
  Coeffs c{};
  for (int i = 0; i < desc_.n; ++i) c[i] = a[i] % static_cast<std::uint32_t>(desc_.p);
  return c;
}

Coeffs WittRing::teichmuller(const Coeffs& a) const {
  Coeffs y = residue(a);
  for (int i = 1; i < desc_.m; ++i) y = pow(y, q_);
  return y;
}

Coeffs WittRing::residue_primitive_element() const {
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  const RingPtr field = residue_field();
  for (std::uint64_t idx = 1; idx < q_; ++idx) {
    const Coeffs g = field->from_index(idx);
    bool primitive = true;
    for (const auto l : factors) {
      if (field->pow(g, order / static_cast<std::uint64_t>(l)) == field->one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  return one();
}

RingPtr WittRing::reduced(int m_prime) const {
  if (m_prime > desc_.m) {
    raise(Errc::kPrecisionIncrease, "cannot raise precision from " + std::to_string(desc_.m) +
                                        " to " + std::to_string(m_prime));
  }
  require(m_prime >= 1, Errc::kInvalidArgument, "precision must be >= 1");
  RingDescriptor d = desc_;
  d.m = m_prime;
  std::int64_t pm = 1;
  for (int i = 0; i < m_prime; ++i) pm *= desc_.p;
  for (auto& c : d.modulus) c %= pm;
  d.modulus.back() = 1;
  return RingPtr(new WittRing(std::move(d)));
}

std::uint64_t WittRing::index_of(const Coeffs& a) const {
  std::uint64_t idx = 0;
  for (int i = 0; i < desc_.n; ++i) idx = idx * pm_ + a[i];
  return idx;
}

Coeffs WittRing::from_index(std::uint64_t index) const {
  Coeffs c{};
  for (int i = desc_.n - 1; i >= 0; --i) {
    c[i] = static_cast<std::uint32_t>(index % pm_);
    index /= pm_;
  }
  return c;
}

void WittRing::for_each(ElementFilter filter, const std::function<void(const Coeffs&)>& visit,
                        std::uint64_t cap) const {
  if (size_ > cap) {
    raise(Errc::kEnumerationTooLarge,
          "ring has " + std::to_string(size_) + " elements, cap " + std::to_string(cap));
  }
  for (std::uint64_t idx = 0; idx < size_; ++idx) {
    const Coeffs a = from_index(idx);
    if (filter == ElementFilter::kUnits && !is_unit(a)) continue;
    visit(a);
  }
}

std::uint64_t WittRing::count(ElementFilter filter) const {
  if (filter == ElementFilter::kAll) return size_;
  return size_ / q_ * (q_ - 1);
}

std::vector<std::vector<std::int64_t>> WittRing::frobenius_matrix(int power) const {
  const int n = desc_.n;
  std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(n, 0));
  Coeffs basis{};
  for (int j = 0; j < n; ++j) {
    basis.fill(0);
    basis[j] = 1;
    const Coeffs image = frobenius(basis, power);
    for (int i = 0; i < n; ++i) out[i][j] = image[i];
  }
  return out;
}

std::vector<std::vector<std::int64_t>> WittRing::multiplication_matrix(const Coeffs& a) const {
  const int n = desc_.n;
  std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(n, 0));
  Coeffs basis{};
  for (int j = 0; j < n; ++j) {
    basis.fill(0);
    basis[j] = 1;
    const Coeffs image = mul(a, basis);
    for (int i = 0; i < n; ++i) out[i][j] = image[i];
  }
  return out;
}

std::string WittRing::to_string(const Coeffs& a) const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < desc_.n; ++i) {
    if (i) os << ',';
    os << a[i];
  }
  os << ']';
  return os.str();
}

// WittElement

WittElement::WittElement(RingPtr ring, const Coeffs& coeffs) : ring_(std::move(ring)), c_(coeffs) {
  require(ring_ != nullptr, Errc::kInvalidArgument, "null ring");
  for (int i = 0; i < kMaxResidueDegree; ++i) {
    const bool in_range = i < ring_->n() ? c_[i] < ring_->characteristic() : c_[i] == 0;
    require(in_range, Errc::kInvalidArgument, "coefficients not in canonical form");
  }
}

WittElement WittElement::from_int(RingPtr ring, std::int64_t value) {
  const Coeffs c = ring->from_int(value);
  return WittElement(std::move(ring), c);
}

WittElement WittElement::from_coeffs(RingPtr ring, std::span<const std::int64_t> values) {
  const Coeffs c = ring->from_coeffs(values);
  return WittElement(std::move(ring), c);
}

std::vector<std::int64_t> WittElement::to_vector() const {
  return std::vector<std::int64_t>(c_.begin(), c_.begin() + ring_->n());
}

WittElement WittElement::operator-() const { return WittElement(ring_, ring_->neg(c_)); }

WittElement operator+(const WittElement& a, const WittElement& b) {
  check_same_ring(*a.ring_, *b.ring_);
  return WittElement(a.ring_, a.ring_->add(a.c_, b.c_));
}

WittElement operator-(const WittElement& a, const WittElement& b) {
  check_same_ring(*a.ring_, *b.ring_);
  return WittElement(a.ring_, a.ring_->sub(a.c_, b.c_));
}

WittElement operator*(const WittElement& a, const WittElement& b) {
  check_same_ring(*a.ring_, *b.ring_);
  return WittElement(a.ring_, a.ring_->mul(a.c_, b.c_));
}

bool operator==(const WittElement& a, const WittElement& b) {
  return a.ring_->same_as(*b.ring_) && a.c_ == b.c_;
}

WittElement WittElement::inverse() const { return WittElement(ring_, ring_->inverse(c_)); }

WittElement WittElement::frobenius(int power) const {
  return WittElement(ring_, ring_->frobenius(c_, power));
}

WittElement WittElement::pow(std::uint64_t e) const { return WittElement(ring_, ring_->pow(c_, e)); }

WittElement WittElement::change_precision(int m_prime) const {
  const RingPtr target = ring_->reduced(m_prime);
  Coeffs c{};
  for (int i = 0; i < ring_->n(); ++i) c[i] = c_[i] % target->characteristic();
  return WittElement(target, c);
}

WittElement teichmuller(const RingPtr& ring, const WittElement& residue) {
  const auto& rd = residue.ring()->descriptor();
  require(rd.p == ring->p() && rd.n == ring->n(), Errc::kRingMismatch,
          "residue does not belong to the residue field of the target ring");
  for (int i = 0; i <= rd.n; ++i) {
    require(rd.modulus[i] % rd.p == ring->descriptor().modulus[i] % rd.p, Errc::kRingMismatch,
            "moduli disagree modulo p");
  }
  return WittElement(ring, ring->teichmuller(residue.ring()->residue(residue.coeffs())));
}

std::vector<WittElement> enumerate_ring(const RingPtr& ring, ElementFilter filter,
                                        std::uint64_t cap) {
  std::vector<WittElement> out;
  ring->for_each(filter, [&](const Coeffs& c) { out.emplace_back(ring, c); }, cap);
  return out;
}

}  // namespace tbt
