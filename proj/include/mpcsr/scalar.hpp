#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mpcsr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A closure (Kleene star, metric matrix) was requested for a matrix whose
/// maximum cycle mean is positive, so the series does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An ensemble does not satisfy the structural assumptions an operation needs.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

/// Absolute tolerance used wherever a real-valued quantity is compared with 0.
inline constexpr double tolerance = 1e-9;

/// Element of the max-plus semiring R ∪ {ε}.
///
/// `+` is the tropical sum (max) and `*` the tropical product (ordinary
/// addition). ε is stored as -inf but never reaches ordinary arithmetic:
/// products involving ε short-circuit, so NaN cannot appear.
class Scalar {
 public:
  constexpr Scalar() noexcept = default;

  constexpr Scalar(double v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (v != v || v == std::numeric_limits<double>::infinity())
      throw std::domain_error("max-plus scalar must be finite or epsilon");
  }

  static constexpr Scalar eps() noexcept { return Scalar{}; }

  constexpr bool is_eps() const noexcept { return value_ == -std::numeric_limits<double>::infinity(); }
  constexpr bool is_finite() const noexcept { return !is_eps(); }

  /// Finite value, or -inf for ε.
  constexpr double value() const noexcept { return value_; }

  friend constexpr Scalar operator+(Scalar a, Scalar b) noexcept { return a.value_ >= b.value_ ? a : b; }

  friend constexpr Scalar operator*(Scalar a, Scalar b) noexcept {
    if (a.is_eps() || b.is_eps()) return Scalar{};
    Scalar r;
    r.value_ = a.value_ + b.value_;
    return r;
  }

  constexpr Scalar& operator+=(Scalar o) noexcept { return *this = *this + o; }
  constexpr Scalar& operator*=(Scalar o) noexcept { return *this = *this * o; }

  friend constexpr bool operator==(Scalar, Scalar) noexcept = default;
  friend constexpr auto operator<=>(Scalar a, Scalar b) noexcept { return a.value_ <=> b.value_; }

 private:
  double value_ = -std::numeric_limits<double>::infinity();
};

inline constexpr Scalar eps{};

/// Equality with an absolute tolerance on finite values; ε only equals ε.
inline bool approx_equal(Scalar a, Scalar b, double tol = tolerance) noexcept {
  if (a.is_eps() || b.is_eps()) return a.is_eps() && b.is_eps();
  return std::abs(a.value() - b.value()) <= tol;
}

inline std::string to_string(Scalar s) {
  if (s.is_eps()) return "eps";
  std::ostringstream os;
  os.precision(17);
  os << s.value();
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, Scalar s) {
  if (s.is_eps()) return os << "eps";
  return os << s.value();
}

}  // namespace mpcsr
