#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcalc/rational.hpp"

namespace gcalc {

/// Dense row-major matrix over the rationals. Sized for the handful-of-classes
/// systems that appear here; elimination is plain Gauss-Jordan.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  std::vector<Rational> operator*(std::span<const Rational> vec) const;
  bool operator==(const RationalMatrix& rhs) const = default;

  std::size_t rank() const;
  /// Requires a square matrix.
  Rational determinant() const;
  /// Solves A x = b for square nonsingular A; throws SingularSystem otherwise.
  std::vector<Rational> solve(std::span<const Rational> rhs) const;

  static RationalMatrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace gcalc
