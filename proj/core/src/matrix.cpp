#include "tbt/matrix.hpp"

#include <sstream>
#include <utility>

#include "tbt/error.hpp"

namespace tbt {

int key_width(const WittRing& ring) {
  const std::uint32_t top = ring.characteristic() - 1;
  int w = 1;
  while (w < 4 && (top >> (8 * w)) != 0) ++w;
  return w;
}

MatrixW::MatrixW(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols) {
  require(ring_ != nullptr, Errc::kInvalidArgument, "null ring");
  require(rows >= 0 && cols >= 0, Errc::kShapeMismatch, "negative dimensions");
}

MatrixW MatrixW::zero(RingPtr ring, int rows, int cols) { return MatrixW(std::move(ring), rows, cols); }

MatrixW MatrixW::identity(RingPtr ring, int size) {
  return scalar(ring, size, ring->one());
}

MatrixW MatrixW::scalar(RingPtr ring, int size, const Coeffs& value) {
  MatrixW out(std::move(ring), size, size);
  for (int i = 0; i < size; ++i) out(i, i) = value;
  return out;
}

MatrixW MatrixW::diagonal(RingPtr ring, const std::vector<Coeffs>& entries) {
  const int size = static_cast<int>(entries.size());
  MatrixW out(std::move(ring), size, size);
  for (int i = 0; i < size; ++i) out(i, i) = entries[i];
  return out;
}

MatrixW MatrixW::from_ints(RingPtr ring, const std::vector<std::vector<std::int64_t>>& rows) {
  const int nr = static_cast<int>(rows.size());
  const int nc = nr == 0 ? 0 : static_cast<int>(rows.front().size());
  MatrixW out(ring, nr, nc);
  for (int i = 0; i < nr; ++i) {
    require(static_cast<int>(rows[i].size()) == nc, Errc::kShapeMismatch, "ragged rows");
    for (int j = 0; j < nc; ++j) out(i, j) = ring->from_int(rows[i][j]);
  }
  return out;
}

MatrixW MatrixW::permutation(RingPtr ring, const std::vector<int>& perm) {
  const int size = static_cast<int>(perm.size());
  MatrixW out(ring, size, size);
  for (int j = 0; j < size; ++j) {
    require(perm[j] >= 1 && perm[j] <= size, Errc::kInvalidArgument, "bad permutation");
    out(perm[j] - 1, j) = ring->one();
  }
  return out;
}

void MatrixW::set(int i, int j, const WittElement& value) {
  check_same_ring(*ring_, *value.ring());
  (*this)(i, j) = value.coeffs();
}

MatrixW operator*(const MatrixW& a, const MatrixW& b) {
  check_same_ring(*a.ring_, *b.ring_);
  require(a.cols_ == b.rows_, Errc::kShapeMismatch, "inner dimensions differ");
  const WittRing& R = *a.ring_;
  MatrixW out(a.ring_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Coeffs& aik = a(i, k);
      if (R.is_zero(aik)) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Coeffs& bkj = b(k, j);
        if (R.is_zero(bkj)) continue;
        out(i, j) = R.add(out(i, j), R.mul(aik, bkj));
      }
    }
  }
  return out;
}

MatrixW operator+(const MatrixW& a, const MatrixW& b) {
  check_same_ring(*a.ring_, *b.ring_);
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::kShapeMismatch, "shapes differ");
  MatrixW out(a.ring_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.ring_->add(a.data_[i], b.data_[i]);
  return out;
}

MatrixW operator-(const MatrixW& a, const MatrixW& b) {
  check_same_ring(*a.ring_, *b.ring_);
  require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::kShapeMismatch, "shapes differ");
  MatrixW out(a.ring_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.ring_->sub(a.data_[i], b.data_[i]);
  return out;
}

bool operator==(const MatrixW& a, const MatrixW& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_->same_as(*b.ring_) &&
         a.data_ == b.data_;
}

MatrixW MatrixW::scaled(std::int64_t k) const {
  MatrixW out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_->scale(data_[i], k);
  return out;
}

MatrixW MatrixW::transpose() const {
  MatrixW out(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

MatrixW MatrixW::frobenius(int power) const {
  if (ring_->n() == 1) return *this;
  MatrixW out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_->frobenius(data_[i], power);
  return out;
}

MatrixW MatrixW::inverse() const {
  require(square(), Errc::kShapeMismatch, "inverse of a non-square matrix");
  const WittRing& R = *ring_;
  const int n = rows_;
  MatrixW a = *this;
  MatrixW inv = identity(ring_, n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (R.is_unit(a(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) raise(Errc::kNotInvertible, "residue matrix is singular");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Coeffs s = R.inverse(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = R.mul(a(col, j), s);
      inv(col, j) = R.mul(inv(col, j), s);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || R.is_zero(a(i, col))) continue;
      const Coeffs f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) = R.sub(a(i, j), R.mul(f, a(col, j)));
        inv(i, j) = R.sub(inv(i, j), R.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

int MatrixW::residue_rank() const {
  const RingPtr field = ring_->residue_field();
  const WittRing& F = *field;
  MatrixW a = change_precision(field);
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows_; ++i) {
      if (!F.is_zero(a(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int j = 0; j < cols_; ++j) std::swap(a(pivot, j), a(rank, j));
    const Coeffs s = F.inverse(a(rank, col));
    for (int j = 0; j < cols_; ++j) a(rank, j) = F.mul(a(rank, j), s);
    for (int i = 0; i < rows_; ++i) {
      if (i == rank || F.is_zero(a(i, col))) continue;
      const Coeffs f = a(i, col);
      for (int j = 0; j < cols_; ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(rank, j)));
    }
    ++rank;
  }
  return rank;
}

bool MatrixW::residue_invertible() const { return square() && residue_rank() == rows_; }

MatrixW MatrixW::residue() const {
  MatrixW out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_->residue(data_[i]);
  return out;
}

bool MatrixW::is_identity() const { return square() && *this == identity(ring_, rows_); }

bool MatrixW::is_zero() const {
  for (const auto& c : data_) {
    if (!ring_->is_zero(c)) return false;
  }
  return true;
}

MatrixW MatrixW::block(int row, int col, int rows, int cols) const {
  require(row >= 0 && col >= 0 && row + rows <= rows_ && col + cols <= cols_,
          Errc::kShapeMismatch, "block out of range");
  MatrixW out(ring_, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = (*this)(row + i, col + j);
  }
  return out;
}

void MatrixW::set_block(int row, int col, const MatrixW& b) {
  check_same_ring(*ring_, *b.ring_);
  require(row >= 0 && col >= 0 && row + b.rows_ <= rows_ && col + b.cols_ <= cols_,
          Errc::kShapeMismatch, "block out of range");
  for (int i = 0; i < b.rows_; ++i) {
    for (int j = 0; j < b.cols_; ++j) (*this)(row + i, col + j) = b(i, j);
  }
}

MatrixW MatrixW::change_precision(int m_prime) const {
  if (m_prime == ring_->m()) return *this;
  return change_precision(ring_->reduced(m_prime));
}

MatrixW MatrixW::change_precision(const RingPtr& target) const {
  const auto& s = ring_->descriptor();
  const auto& t = target->descriptor();
  require(s.p == t.p && s.n == t.n, Errc::kRingMismatch, "incompatible residue fields");
  if (t.m > s.m) raise(Errc::kPrecisionIncrease, "cannot raise matrix precision");
  MatrixW out(target, rows_, cols_);
  const std::uint32_t pm = target->characteristic();
  for (std::size_t i = 0; i < data_.size(); ++i) {
    for (int k = 0; k < s.n; ++k) out.data_[i][k] = data_[i][k] % pm;
  }
  return out;
}

std::string MatrixW::key() const {
  const int w = key_width(*ring_);
  const int n = ring_->n();
  std::string out;
  out.resize(data_.size() * static_cast<std::size_t>(n * w));
  std::size_t pos = 0;
  for (const auto& c : data_) {
    for (int k = 0; k < n; ++k) {
      for (int b = w - 1; b >= 0; --b) out[pos++] = static_cast<char>((c[k] >> (8 * b)) & 0xff);
    }
  }
  return out;
}

MatrixW MatrixW::from_key(RingPtr ring, int rows, int cols, const std::string& key) {
  const int w = key_width(*ring);
  const int n = ring->n();
  MatrixW out(ring, rows, cols);
  require(key.size() == out.data_.size() * static_cast<std::size_t>(n * w), Errc::kInvalidArgument,
          "key length does not match shape");
  std::size_t pos = 0;
  for (auto& c : out.data_) {
    for (int k = 0; k < n; ++k) {
      std::uint32_t v = 0;
      for (int b = 0; b < w; ++b) v = (v << 8) | static_cast<unsigned char>(key[pos++]);
      c[k] = v;
    }
  }
  return out;
}

std::vector<std::vector<std::vector<std::int64_t>>> MatrixW::to_nested() const {
  std::vector<std::vector<std::vector<std::int64_t>>> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out[i].push_back(element(i, j).to_vector());
  }
  return out;
}

std::string MatrixW::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << '[';
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      const Coeffs& c = (*this)(i, j);
      if (ring_->n() == 1) {
        os << c[0];
      } else {
        os << ring_->to_string(c);
      }
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace tbt
