#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpcsr/csr.hpp"
#include "mpcsr/ensemble.hpp"
#include "mpcsr/numbers.hpp"
#include "mpcsr/trellis.hpp"

namespace mpcsr {

namespace detail {

inline void require_negative_lambda_star(const Ensemble& e, const char* op) {
  if (e.lambda_star && *e.lambda_star >= 0.0) {
    std::ostringstream os;
    os << op << ": needs a negative maximum cycle mean off the critical nodes, got " << *e.lambda_star;
    throw AssumptionError(os.str());
  }
}

/// (numerator)/λ* + offset, with the λ* = ε limit equal to offset.
inline double scaled(const Ensemble& e, double numerator, double offset) {
  return e.lambda_star ? numerator / *e.lambda_star + offset : offset;
}

}  // namespace detail

struct WeakBound {
  std::size_t k = 0;                  // smallest k exceeding its own threshold
  std::optional<double> threshold;    // empty when no pair constrains k
  std::optional<Arc> argmax;
};

/// Threshold max over pairs with finite reach and finite avoiding weight of
/// (reach(i,j) - γ(i,j))/λ* + (n - q). Empty when no pair qualifies.
inline std::pair<std::optional<double>, std::optional<Arc>> weak_threshold(const Ensemble& e, const Matrix& reach,
                                                                          const Matrix& gamma_avoid) {
  const double slack = static_cast<double>(e.n() - e.critical.q());
  std::optional<double> best;
  std::optional<Arc> arg;
  for (std::size_t i = 0; i < e.n(); ++i)
    for (std::size_t j = 0; j < e.n(); ++j) {
      if (reach(i, j).is_eps() || gamma_avoid(i, j).is_eps()) continue;
      const double val = detail::scaled(e, reach(i, j).value() - gamma_avoid(i, j).value(), slack);
      if (!best || val > *best) {
        best = val;
        arg = Arc{i, j};
      }
    }
  return {best, arg};
}

/// Smallest k in 1..k_max strictly above the explicit weak threshold built
/// from walks on the infimum.
inline std::optional<WeakBound> weak_csr_bound(const Ensemble& e, std::size_t k_max) {
  detail::require_negative_lambda_star(e, "weak_csr_bound");
  const Matrix gamma_avoid = path_weights(e).gamma_avoid;
  Matrix u = e.a_inf;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) u = u * e.a_inf;
    auto [threshold, arg] = weak_threshold(e, u, gamma_avoid);
    if (!threshold || static_cast<double>(k) > *threshold + tolerance) return WeakBound{k, threshold, arg};
  }
  return std::nullopt;
}

struct ImplicitWeakBound {
  std::optional<double> threshold;
  std::optional<Arc> argmax;
  bool satisfied = false;  // word length strictly above the threshold
};

/// The same threshold evaluated on the product of a concrete word.
inline ImplicitWeakBound implicit_weak_bound(const Ensemble& e, const Word& w) {
  detail::require_negative_lambda_star(e, "implicit_weak_bound");
  auto [threshold, arg] = weak_threshold(e, gamma_product(e, w), path_weights(e).gamma_avoid);
  return {threshold, arg, !threshold || static_cast<double>(w.length()) > *threshold + tolerance};
}

struct BoundReport {
  Profile profile = Profile::Unclassified;
  Matrix schwarz_branch;  // (u - α_i - β_j)/λ* + 2(n-q) + Sch(γ,q)
  Matrix avoid_branch;    // (u - γ_ij)/λ* + (n-q+1), ε where γ_ij = ε
  double bound = 0.0;
  std::size_t ambient_k = 1;
  Arc argmax{0, 0};
  bool argmax_in_avoid_branch = false;
};

/// Explicit length after which every product is CSR, for ensembles whose
/// critical digraph is strongly connected with the ambient cyclicity.
inline BoundReport ambient_csr_bound(const Ensemble& e) {
  if (e.report.profile != Profile::P0) {
    std::ostringstream os;
    os << "ambient_csr_bound: profile " << to_string(e.report.profile) << " (components "
       << e.report.component_count << ", critical cyclicity " << e.report.critical_cyclicity
       << ", ambient cyclicity " << e.report.ambient_cyclicity << ")";
    throw AssumptionError(os.str());
  }
  detail::require_negative_lambda_star(e, "ambient_csr_bound");
  const std::size_t n = e.n(), q = e.critical.q();
  const auto pw = path_weights(e);
  const double branch1_offset = 2.0 * static_cast<double>(n - q) + static_cast<double>(schwarz(e.critical.global_cyclicity, q));
  const double branch2_offset = static_cast<double>(n - q + 1);

  BoundReport br;
  br.profile = e.report.profile;
  br.schwarz_branch = Matrix(n, n);
  br.avoid_branch = Matrix(n, n);
  bool first = true;
  auto offer = [&](double val, std::size_t i, std::size_t j, bool avoid) {
    if (first || val > br.bound) {
      br.bound = val;
      br.argmax = {i, j};
      br.argmax_in_avoid_branch = avoid;
      first = false;
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar u = pw.w_inf[i] * pw.v_inf[j];
      if (u.is_eps()) throw AssumptionError("ambient_csr_bound: critical set unreachable from some node");
      const double b1 = detail::scaled(e, u.value() - pw.alpha[i].value() - pw.beta[j].value(), branch1_offset);
      br.schwarz_branch(i, j) = b1;
      offer(b1, i, j, false);
      if (pw.gamma_avoid(i, j).is_finite()) {
        const double b2 = detail::scaled(e, u.value() - pw.gamma_avoid(i, j).value(), branch2_offset);
        br.avoid_branch(i, j) = b2;
        offer(b2, i, j, true);
      }
    }
  br.ambient_k = static_cast<std::size_t>(std::max(1.0, std::ceil(br.bound - tolerance)));
  return br;
}

struct TurnpikeReport {
  bool holds = true;
  std::vector<std::string> failures;
};

/// Entry-level turnpike check for one word: where the ambient classes of i
/// and j are not k steps apart the entry is ε, otherwise it equals
/// w*_i + v*_j and the CSR entry.
inline TurnpikeReport check_turnpike_values(const Ensemble& e, const Word& w) {
  const auto tw = first_passage_weights(e, w);
  const Matrix csr = csr_product(csr_terms(e, w));
  const std::size_t n = e.n(), r = e.critical.ambient_cyclicity, k = w.length();
  const auto& cls = e.critical.ambient_class_of;
  TurnpikeReport rep;
  auto fail = [&](std::size_t i, std::size_t j, const std::string& why) {
    rep.holds = false;
    rep.failures.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") " + why);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool linked = (cls[i] + k) % r == cls[j] % r;
      const Scalar g = tw.product(i, j);
      if (!linked) {
        if (g.is_finite()) fail(i, j, "finite across non-linked classes");
        continue;
      }
      const Scalar expect = tw.w_star[i] * tw.v_star[j];
      if (g != expect) fail(i, j, "product " + to_string(g) + " != first-passage sum " + to_string(expect));
      if (csr(i, j) != expect) fail(i, j, "CSR " + to_string(csr(i, j)) + " != first-passage sum " + to_string(expect));
    }
  return rep;
}

}  // namespace mpcsr
