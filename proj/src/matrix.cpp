#include "lowrank/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace lowrank {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  RationalMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

RationalMatrix operator*(const Rational& c, const RationalMatrix& a) {
  RationalMatrix out = a;
  for (auto& x : out.data_) x *= c;
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

// Gauss-Jordan in place; returns rank and accumulates the determinant sign/product.
int eliminate(RationalMatrix& m, Rational* det) {
  int rank = 0;
  if (det) *det = 1;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows(); ++i) {
      if (sgn(m(i, col)) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
      if (det) *det = -*det;
    }
    const Rational p = m(rank, col);
    if (det) *det *= p;
    for (int i = rank + 1; i < m.rows(); ++i) {
      if (sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col) / p;
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int RationalMatrix::rank() const {
  RationalMatrix m = *this;
  return eliminate(m, nullptr);
}

Rational RationalMatrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  RationalMatrix m = *this;
  Rational det;
  const int r = eliminate(m, &det);
  return r == rows_ ? det : Rational(0);
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (!is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const int n = rows_;
  RationalMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (sgn(aug(i, col)) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(aug(pivot, j), aug(col, j));
    const Rational p = aug(col, col);
    for (int j = 0; j < 2 * n; ++j) aug(col, j) /= p;
    for (int i = 0; i < n; ++i) {
      if (i == col || sgn(aug(i, col)) == 0) continue;
      const Rational f = aug(i, col);
      for (int j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
    }
  }
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RationalMatrix RationalMatrix::select_columns(const std::vector<int>& cols) const {
  RationalMatrix out(rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, static_cast<int>(j)) = (*this)(i, cols[j]);
  return out;
}

std::vector<std::vector<Rational>> RationalMatrix::to_rows() const {
  std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

}  // namespace lowrank
