#include "gcalc/linalg.hpp"

#include <utility>

#include "gcalc/errors.hpp"

namespace gcalc {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix product dimension mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols_; ++i) {
      const Rational& a = (*this)(r, i);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(i, c);
    }
  }
  return out;
}

std::vector<Rational> RationalMatrix::operator*(std::span<const Rational> vec) const {
  if (cols_ != vec.size()) throw InvalidArgument("matrix-vector dimension mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * vec[c];
  }
  return out;
}

namespace {

// Reduces m in place to row echelon form; returns the rank and accumulates the
// determinant sign/product of pivots into det (meaningful for square input).
std::size_t eliminate(RationalMatrix& m, Rational* det) {
  std::size_t rank = 0;
  if (det) *det = 1;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(rank, c));
      if (det) *det = -*det;
    }
    const Rational inv = 1 / m(rank, col);
    if (det) *det *= m(rank, col);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col) == 0) continue;
      const Rational factor = m(r, col) * inv;
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t RationalMatrix::rank() const {
  RationalMatrix work = *this;
  return eliminate(work, nullptr);
}

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  RationalMatrix work = *this;
  Rational det;
  const std::size_t rank = eliminate(work, &det);
  return rank == rows_ ? det : Rational(0);
}

std::vector<Rational> RationalMatrix::solve(std::span<const Rational> rhs) const {
  if (rows_ != cols_ || rhs.size() != rows_) {
    throw InvalidArgument("solve needs a square system with matching right-hand side");
  }
  const std::size_t n = rows_;
  RationalMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n) = rhs[r];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularSystem("singular linear system");
    if (pivot != col) {
      for (std::size_t c = 0; c <= n; ++c) std::swap(aug(pivot, c), aug(col, c));
    }
    const Rational inv = 1 / aug(col, col);
    for (std::size_t c = col; c <= n; ++c) aug(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug(r, col) == 0) continue;
      const Rational factor = aug(r, col);
      for (std::size_t c = col; c <= n; ++c) aug(r, c) -= factor * aug(col, c);
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

}  // namespace gcalc
