#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpcsr/closure.hpp"
#include "mpcsr/critical.hpp"
#include "mpcsr/digraph.hpp"
#include "mpcsr/matrix.hpp"

namespace mpcsr {

using Vector = std::vector<Scalar>;

enum class Profile { P0, P1, P2, P3, Unclassified };

inline const char* to_string(Profile p) {
  switch (p) {
    case Profile::P0: return "P0";
    case Profile::P1: return "P1";
    case Profile::P2: return "P2";
    case Profile::P3: return "P3";
    default: return "unclassified";
  }
}

/// Outcome of the structural checks on an ensemble.
struct AssumptionReport {
  bool irreducible = false;        // every generator irreducible
  bool strongly_equivalent = false;  // common digraph and common critical digraph
  bool inf_equivalent = false;     // entrywise infimum keeps every edge
  bool sup_eigenvalue_zero = false;  // normalized supremum has cycle mean 0
  bool visualised = false;         // critical entries 0, all others <= 0
  Profile profile = Profile::Unclassified;
  std::size_t component_count = 0;
  std::size_t critical_cyclicity = 0;
  std::size_t ambient_cyclicity = 0;
  std::vector<std::string> diagnostics;

  bool core_ok() const { return irreducible && strongly_equivalent && inf_equivalent && sup_eigenvalue_zero && visualised; }
};

/// A finite generator set after normalization and common visualisation.
struct Ensemble {
  std::vector<Matrix> original;
  std::vector<double> lambdas;       // cycle mean of each original generator
  std::vector<Matrix> normalized;
  Vector x;                          // subeigenvector used for the scaling
  std::vector<Matrix> visualised;
  Matrix a_sup;
  Matrix a_inf;
  Matrix b_sup;                      // a_sup with critical rows and columns removed
  std::optional<double> lambda_star; // empty when b_sup is acyclic
  CriticalStructure critical;
  AssumptionReport report;

  std::size_t n() const { return a_sup.rows(); }
  std::size_t size() const { return visualised.size(); }
};

namespace detail {

inline Matrix entrywise_sup(const std::vector<Matrix>& ms) {
  Matrix r = ms.front();
  for (std::size_t a = 1; a < ms.size(); ++a) r = r + ms[a];
  return r;
}

inline Matrix entrywise_inf(const std::vector<Matrix>& ms) {
  Matrix r = ms.front();
  for (std::size_t a = 1; a < ms.size(); ++a) r = entrywise_min(r, ms[a]);
  return r;
}

inline Scalar snap(Scalar s) {
  if (s.is_finite() && std::abs(s.value()) <= tolerance) return Scalar(0.0);
  return s;
}

inline bool same_critical(const CriticalStructure& a, const CriticalStructure& b) {
  return a.critical_nodes == b.critical_nodes && a.critical_edges == b.critical_edges;
}

}  // namespace detail

/// Fills e.report from the already computed fields of e.
inline AssumptionReport check_assumptions(const Ensemble& e) {
  AssumptionReport r;
  auto note = [&](std::string s) { r.diagnostics.push_back(std::move(s)); };

  r.irreducible = true;
  for (std::size_t a = 0; a < e.original.size(); ++a)
    if (!is_irreducible(e.original[a])) {
      r.irreducible = false;
      note("generator " + std::to_string(a + 1) + " is reducible");
    }

  r.strongly_equivalent = true;
  for (std::size_t a = 0; a < e.visualised.size(); ++a) {
    if (!same_support(e.visualised[a], e.a_sup)) {
      r.strongly_equivalent = false;
      note("generator " + std::to_string(a + 1) + " has a different digraph");
      continue;
    }
    if (!detail::same_critical(critical_graph(e.visualised[a]), e.critical)) {
      r.strongly_equivalent = false;
      note("generator " + std::to_string(a + 1) + " has a different critical digraph");
    }
  }

  r.inf_equivalent = same_support(e.a_inf, e.a_sup);
  if (!r.inf_equivalent) note("entrywise infimum loses edges");

  r.sup_eigenvalue_zero = std::abs(e.critical.lambda) <= tolerance;
  if (!r.sup_eigenvalue_zero) {
    std::ostringstream os;
    os << "normalized supremum has maximum cycle mean " << e.critical.lambda;
    note(os.str());
  }

  r.visualised = r.sup_eigenvalue_zero;
  std::vector<Matrix> all = e.visualised;
  all.push_back(e.a_sup);
  for (const Matrix& m : all)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Scalar s = m(i, j);
        if (s.is_eps()) continue;
        const bool crit = std::binary_search(e.critical.critical_edges.begin(), e.critical.critical_edges.end(),
                                             Arc{i, j});
        if ((crit && s.value() != 0.0) || s.value() > 0.0) r.visualised = false;
      }
  if (!r.visualised) note("generators are not visualised");

  r.component_count = e.critical.components.size();
  r.critical_cyclicity = e.critical.global_cyclicity;
  r.ambient_cyclicity = e.critical.ambient_cyclicity;
  const std::size_t m = r.component_count, g = r.critical_cyclicity, amb = r.ambient_cyclicity;
  if (m == 1 && g == amb)
    r.profile = Profile::P0;
  else if (m == 1 && amb == 1 && g > 1)
    r.profile = Profile::P1;
  else if (m == 1 && amb > 1 && g > amb)
    r.profile = Profile::P2;
  else if (m > 1)
    r.profile = Profile::P3;
  return r;
}

/// Normalizes every generator by its cycle mean, scales all of them with a
/// common subeigenvector of the supremum, and derives the summary matrices.
inline Ensemble build_ensemble(const std::vector<Matrix>& generators) {
  if (generators.empty()) throw Error("ensemble needs at least one generator");
  const std::size_t n = generators.front().rows();
  Ensemble e;
  for (std::size_t a = 0; a < generators.size(); ++a) {
    const Matrix& g = generators[a];
    if (!g.is_square() || g.rows() != n)
      throw DimensionError("generator " + std::to_string(a + 1) + " has shape " + shape(g) + ", expected " +
                           std::to_string(n) + "x" + std::to_string(n));
    const auto lambda = max_cycle_mean(g);
    if (!lambda) throw Error("generator " + std::to_string(a + 1) + " has no cycle");
    e.original.push_back(g);
    e.lambdas.push_back(*lambda);
    e.normalized.push_back(shifted(g, -*lambda));
  }

  const Matrix sup0 = detail::entrywise_sup(e.normalized);
  const auto sup_lambda = max_cycle_mean(sup0);
  e.x.assign(n, Scalar(0.0));
  if (sup_lambda && *sup_lambda <= tolerance) {
    const Matrix star = kleene_star(sup0);
    for (std::size_t i = 0; i < n; ++i) {
      Scalar best = eps;
      for (std::size_t j = 0; j < n; ++j) best += star(i, j);
      e.x[i] = best;
    }
  }

  for (const Matrix& m : e.normalized) {
    Matrix v = m;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (v(i, j).is_finite()) v(i, j) = detail::snap(Scalar(v(i, j).value() + e.x[j].value() - e.x[i].value()));
    e.visualised.push_back(std::move(v));
  }

  e.a_sup = detail::entrywise_sup(e.visualised);
  e.a_inf = detail::entrywise_inf(e.visualised);
  e.critical = critical_graph(e.a_sup);
  e.b_sup = e.a_sup;
  for (std::size_t c : e.critical.critical_nodes)
    for (std::size_t k = 0; k < n; ++k) e.b_sup(c, k) = e.b_sup(k, c) = eps;
  e.lambda_star = max_cycle_mean(e.b_sup);
  e.report = check_assumptions(e);
  return e;
}

struct PathWeights {
  Vector alpha;       // best path weight on the supremum from i into the critical set
  Vector beta;        // from the critical set to j
  Matrix gamma_avoid; // best nonempty walk weight avoiding critical nodes
  Vector w_inf;       // as alpha, on the infimum
  Vector v_inf;       // as beta, on the infimum
};

inline PathWeights path_weights(const Ensemble& e) {
  const std::size_t n = e.n();
  const Matrix star_sup = kleene_star(e.a_sup);
  const Matrix star_inf = kleene_star(e.a_inf);
  PathWeights p;
  p.alpha.assign(n, eps);
  p.beta.assign(n, eps);
  p.w_inf.assign(n, eps);
  p.v_inf.assign(n, eps);
  for (std::size_t c : e.critical.critical_nodes)
    for (std::size_t i = 0; i < n; ++i) {
      p.alpha[i] += star_sup(i, c);
      p.beta[i] += star_sup(c, i);
      p.w_inf[i] += star_inf(i, c);
      p.v_inf[i] += star_inf(c, i);
    }
  p.gamma_avoid = metric_matrix(e.b_sup);
  return p;
}

/// Best walk weights of length exactly k on the infimum.
inline Matrix u_k(const Ensemble& e, std::size_t k) {
  if (k == 0) throw Error("u_k: length must be positive");
  return power(e.a_inf, k);
}

}  // namespace mpcsr
