#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lowrank/rational.hpp"

namespace lowrank {

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static RationalMatrix identity(int n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& c, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

  RationalMatrix transpose() const;
  int rank() const;
  Rational determinant() const;
  /// std::nullopt when singular.
  std::optional<RationalMatrix> inverse() const;
  /// Columns `cols` (in order) as a new matrix.
  RationalMatrix select_columns(const std::vector<int>& cols) const;

  std::vector<std::vector<Rational>> to_rows() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace lowrank
