#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpcsr/scalar.hpp"

namespace mpcsr {

/// Dense row-major matrix over the max-plus semiring.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, Scalar fill = eps)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  }

  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(0.0);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  std::span<const Scalar> entries() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

namespace detail {

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

inline void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) throw DimensionError(std::string(op) + ": matrix must be square, got " + shape(a));
}

}  // namespace detail

/// Tropical sum: entrywise max.
inline Matrix operator+(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "oplus");
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  return r;
}

/// Tropical product: (a ⊗ b)(i,j) = max_k a(i,k) + b(k,j).
inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("multiply: cannot multiply " + shape(a) + " by " + shape(b));
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik.is_eps()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

/// k-fold tropical power; power(a, 0) is the identity.
inline Matrix power(const Matrix& a, std::size_t k) {
  detail::require_square(a, "power");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

inline Matrix entrywise_min(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "entrywise_min");
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = std::min(a(i, j), b(i, j));
  return r;
}

/// Multiplies by the scalar c, i.e. adds c to every finite entry.
inline Matrix shifted(const Matrix& a, double c) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= Scalar(c);
  return r;
}

/// Entrywise a <= b, with ε below every real.
inline bool entrywise_leq(const Matrix& a, const Matrix& b, double tol = 0.0) {
  detail::require_same_shape(a, b, "entrywise_leq");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar x = a(i, j), y = b(i, j);
      if (x.is_eps()) continue;
      if (y.is_eps() || x.value() > y.value() + tol) return false;
    }
  return true;
}

/// Same finiteness pattern (identical associated digraphs).
inline bool same_support(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_eps() != b(i, j).is_eps()) return false;
  return true;
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol = tolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!approx_equal(a(i, j), b(i, j), tol)) return false;
  return true;
}

/// Lexicographically first (row, col) where the matrices differ.
inline std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "first_difference");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return std::pair{i, j};
  return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

}  // namespace mpcsr
