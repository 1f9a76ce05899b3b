#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbt/witt.hpp"

namespace tbt {

/// Dense matrix over a Witt ring, row-major.
class MatrixW {
 public:
  MatrixW() = default;
  MatrixW(RingPtr ring, int rows, int cols);

  static MatrixW zero(RingPtr ring, int rows, int cols);
  static MatrixW identity(RingPtr ring, int size);
  static MatrixW scalar(RingPtr ring, int size, const Coeffs& value);
  static MatrixW diagonal(RingPtr ring, const std::vector<Coeffs>& entries);
  /// Integer entries, reduced mod p^m.
  static MatrixW from_ints(RingPtr ring, const std::vector<std::vector<std::int64_t>>& rows);
  /// Matrix with entry (perm[j]-1, j) = 1; `perm` is a 1-indexed image list.
  static MatrixW permutation(RingPtr ring, const std::vector<int>& perm);

  const RingPtr& ring() const { return ring_; }
  const WittRing& r() const { return *ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Coeffs& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Coeffs& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  WittElement element(int i, int j) const { return WittElement(ring_, (*this)(i, j)); }
  void set(int i, int j, const WittElement& value);

  friend MatrixW operator*(const MatrixW& a, const MatrixW& b);
  friend MatrixW operator+(const MatrixW& a, const MatrixW& b);
  friend MatrixW operator-(const MatrixW& a, const MatrixW& b);
  friend bool operator==(const MatrixW& a, const MatrixW& b);

  MatrixW scaled(std::int64_t k) const;
  MatrixW transpose() const;
  /// Entrywise sigma^power.
  MatrixW frobenius(int power = 1) const;
  /// Requires the residue matrix to be invertible over F_q.
  MatrixW inverse() const;
  bool residue_invertible() const;
  /// Rank of the reduction mod p over F_q.
  int residue_rank() const;
  MatrixW residue() const;
  bool is_identity() const;
  bool is_zero() const;

  MatrixW block(int row, int col, int rows, int cols) const;
  void set_block(int row, int col, const MatrixW& b);

  /// Reduction to W_{m'}; the result lives in `target` when given.
  MatrixW change_precision(int m_prime) const;
  MatrixW change_precision(const RingPtr& target) const;

  /// Fixed-width big-endian encoding of the coefficient sequence; byte order
  /// matches lexicographic order of the row-major coefficient list.
  std::string key() const;
  static MatrixW from_key(RingPtr ring, int rows, int cols, const std::string& key);

  std::vector<std::vector<std::vector<std::int64_t>>> to_nested() const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Coeffs> data_;
};

/// Number of bytes per coefficient in MatrixW::key.
int key_width(const WittRing& ring);

}  // namespace tbt
