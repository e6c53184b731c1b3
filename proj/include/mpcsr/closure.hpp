#pragma once

#include <sstream>

#include "mpcsr/digraph.hpp"
#include "mpcsr/matrix.hpp"

namespace mpcsr {

namespace detail {

inline void require_convergent(const Matrix& a, const char* op) {
  require_square(a, op);
  const auto lambda = max_cycle_mean(a);
  if (lambda && *lambda > tolerance) {
    std::ostringstream os;
    os << op << ": maximum cycle mean " << *lambda << " is positive, series diverges";
    throw DivergenceError(os.str());
  }
}

}  // namespace detail

/// I ⊕ A ⊕ ... ⊕ A^(n-1). Exact whenever no cycle has positive weight.
inline Matrix kleene_star(const Matrix& a) {
  detail::require_convergent(a, "kleene_star");
  const std::size_t n = a.rows();
  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    term = term * a;
    result = result + term;
  }
  return result;
}

/// A ⊕ A² ⊕ ..., computed as A ⊗ A*.
inline Matrix metric_matrix(const Matrix& a) {
  detail::require_convergent(a, "metric_matrix");
  return a * kleene_star(a);
}

}  // namespace mpcsr
