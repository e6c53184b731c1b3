#pragma once

#include <cstddef>
#include <stdexcept>

namespace mpcsr {

/// Wielandt number: (n-1)^2 + 1 for n >= 1, and 0 for n = 0.
constexpr std::size_t wielandt(std::size_t n) noexcept { return n == 0 ? 0 : (n - 1) * (n - 1) + 1; }

/// Schwarz number: gamma * Wi(floor(n / gamma)) + n mod gamma.
constexpr std::size_t schwarz(std::size_t gamma, std::size_t n) {
  if (gamma == 0) throw std::invalid_argument("schwarz: gamma must be positive");
  return gamma * wielandt(n / gamma) + n % gamma;
}

}  // namespace mpcsr
