#pragma once

// Truncated Witt rings W_m(F_{p^n}), realised as the unramified extension
// (Z/p^m)[x]/(f) of Z/p^m, where f is a monic lift of an irreducible
// polynomial over F_p. Frobenius is the ring automorphism sending x to the
// Hensel-lifted root of f congruent to x^p.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tbt {

inline constexpr int kMaxResidueDegree = 8;
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Raw element storage: coefficients of 1, x, ..., x^{n-1}; unused slots are 0.
using Coeffs = std::array<std::uint32_t, kMaxResidueDegree>;

struct RingDescriptor {
  int p = 0;
  int n = 0;
  int m = 0;
  /// n+1 coefficients, lowest degree first; the last one is 1.
  std::vector<std::int64_t> modulus;

  bool operator==(const RingDescriptor&) const = default;
};

class WittRing;
using RingPtr = std::shared_ptr<const WittRing>;

enum class ElementFilter { kAll, kUnits };

class WittRing {
 public:
  /// Uses the default modulus: the smallest monic irreducible polynomial of
  /// degree n over F_p, compared coefficient-wise from x^{n-1} down to x^0.
  static RingPtr make(int p, int n, int m);
  static RingPtr make(const RingDescriptor& descriptor);

  static std::vector<std::int64_t> default_modulus(int p, int n);

  const RingDescriptor& descriptor() const { return desc_; }
  int p() const { return desc_.p; }
  int n() const { return desc_.n; }
  int m() const { return desc_.m; }
  /// p^m.
  std::uint32_t characteristic() const { return pm_; }
  /// q = p^n.
  std::uint64_t residue_size() const { return q_; }
  /// p^{nm}, saturating at UINT64_MAX.
  std::uint64_t size() const { return size_; }

  bool same_as(const WittRing& other) const {
    return this == &other || desc_ == other.desc_;
  }

  Coeffs zero() const { return Coeffs{}; }
  Coeffs one() const;
  Coeffs from_int(std::int64_t value) const;
  /// Coefficients may be any integers; they are reduced mod p^m.
  Coeffs from_coeffs(std::span<const std::int64_t> values) const;
  /// The class of x.
  Coeffs generator() const;

  Coeffs add(const Coeffs& a, const Coeffs& b) const;
  Coeffs sub(const Coeffs& a, const Coeffs& b) const;
  Coeffs neg(const Coeffs& a) const;
  Coeffs mul(const Coeffs& a, const Coeffs& b) const;
  Coeffs scale(const Coeffs& a, std::int64_t k) const;
  Coeffs pow(Coeffs a, std::uint64_t e) const;

  bool is_zero(const Coeffs& a) const;
  /// True iff a is nonzero modulo p.
  bool is_unit(const Coeffs& a) const;
  Coeffs inverse(const Coeffs& a) const;

  /// sigma^power; negative powers are taken modulo n.
  Coeffs frobenius(const Coeffs& a, int power = 1) const;

  /// Largest k < m with a in p^k W_m, or kInfiniteValuation for 0.
  int valuation(const Coeffs& a) const;

  /// a mod p, still encoded in this ring (coefficients in [0, p)).
  Coeffs residue(const Coeffs& a) const;

  /// Multiplicative lift of the residue class of `a`.
  Coeffs teichmuller(const Coeffs& a) const;

  /// Generator of the cyclic group F_q^*, as a residue class (digits in [0,p)).
  Coeffs residue_primitive_element() const;

  /// W_{m'} with the same p, n and modulus reduced mod p^{m'}.
  RingPtr reduced(int m_prime) const;
  /// W_1, the residue field F_q.
  RingPtr residue_field() const { return reduced(1); }

  /// Lexicographic position of a (coefficient of 1 most significant).
  std::uint64_t index_of(const Coeffs& a) const;
  Coeffs from_index(std::uint64_t index) const;

  /// Calls `visit` on every element (or unit) in lexicographic order.
  void for_each(ElementFilter filter, const std::function<void(const Coeffs&)>& visit,
                std::uint64_t cap = kDefaultEnumerationCap) const;
  std::uint64_t count(ElementFilter filter) const;

  /// Matrix of sigma^power as a (Z/p^m)-linear map in the basis 1..x^{n-1};
  /// entry [i][j] is the coefficient of x^i in sigma^power(x^j).
  std::vector<std::vector<std::int64_t>> frobenius_matrix(int power) const;
  /// Matrix of multiplication by a, same convention.
  std::vector<std::vector<std::int64_t>> multiplication_matrix(const Coeffs& a) const;

  std::string to_string(const Coeffs& a) const;

 private:
  explicit WittRing(RingDescriptor descriptor);
  void build_frobenius();

  RingDescriptor desc_;
  std::uint32_t pm_ = 0;
  std::uint64_t q_ = 0;
  std::uint64_t size_ = 0;
  // frob_[e][j] = sigma^e(x^j), 0 <= e < n.
  std::vector<std::vector<Coeffs>> frob_;
};

/// Value-semantic element of a Witt ring.
class WittElement {
 public:
  WittElement(RingPtr ring, const Coeffs& coeffs);
  static WittElement from_int(RingPtr ring, std::int64_t value);
  static WittElement from_coeffs(RingPtr ring, std::span<const std::int64_t> values);

  const RingPtr& ring() const { return ring_; }
  const Coeffs& coeffs() const { return c_; }
  std::vector<std::int64_t> to_vector() const;

  WittElement operator-() const;
  friend WittElement operator+(const WittElement& a, const WittElement& b);
  friend WittElement operator-(const WittElement& a, const WittElement& b);
  friend WittElement operator*(const WittElement& a, const WittElement& b);
  friend bool operator==(const WittElement& a, const WittElement& b);

  bool is_zero() const { return ring_->is_zero(c_); }
  bool is_unit() const { return ring_->is_unit(c_); }
  WittElement inverse() const;
  WittElement frobenius(int power = 1) const;
  int valuation() const { return ring_->valuation(c_); }
  WittElement change_precision(int m_prime) const;
  WittElement pow(std::uint64_t e) const;

  std::string to_string() const { return ring_->to_string(c_); }

 private:
  RingPtr ring_;
  Coeffs c_;
};

/// Teichmuller lift into `ring` of a residue-field element.
WittElement teichmuller(const RingPtr& ring, const WittElement& residue);

std::vector<WittElement> enumerate_ring(const RingPtr& ring, ElementFilter filter,
                                        std::uint64_t cap = kDefaultEnumerationCap);

void check_same_ring(const WittRing& a, const WittRing& b);

bool is_prime(std::int64_t p);

}  // namespace tbt
