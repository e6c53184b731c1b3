#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpcsr/critical.hpp"
#include "mpcsr/ensemble.hpp"
#include "mpcsr/matrix.hpp"
#include "mpcsr/numbers.hpp"
#include "mpcsr/trellis.hpp"

namespace mpcsr {

/// Smallest T >= 1 with S^T = S^(T+gamma). Throws once T exceeds Wi(n)+gamma,
/// which happens only when gamma is not a period of the powers of S.
inline std::size_t periodicity_threshold(const Matrix& s, std::size_t gamma) {
  detail::require_square(s, "periodicity_threshold");
  if (gamma == 0) throw Error("periodicity_threshold: period must be positive");
  const std::size_t cap = wielandt(s.rows()) + gamma;
  std::vector<Matrix> powers{s};  // powers[i] = S^(i+1)
  for (std::size_t i = 1; i <= gamma; ++i) powers.push_back(powers.back() * s);
  for (std::size_t t = 1; t <= cap; ++t) {
    if (powers[t - 1] == powers[t - 1 + gamma]) return t;
    powers.push_back(powers.back() * s);
  }
  throw Error("periodicity_threshold: no threshold up to " + std::to_string(cap) + " for period " +
              std::to_string(gamma));
}

struct ComponentTerms {
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> class_of;
  std::size_t gamma = 1;
  std::size_t threshold = 1;
  std::size_t t = 0;      // v = (t+1)·gamma - k mod gamma with the global v
  Matrix s;
  Matrix s_k;             // S_ν^(k mod γ_ν)
  Matrix c;
  Matrix r;
};

struct CsrTerms {
  Matrix product;         // Γ(k)
  std::size_t k = 0;
  std::size_t gamma = 1;
  std::size_t threshold = 1;
  std::size_t t = 0;
  std::size_t v = 0;      // (t+1)γ - k mod γ
  Matrix s;
  Matrix s_k;             // S^(k mod γ)
  Matrix c;
  Matrix r;
  std::vector<ComponentTerms> components;
};

/// CSR terms of an arbitrary product of length k over the given critical structure.
inline CsrTerms csr_terms(const Matrix& product, const CriticalStructure& cs, std::size_t k) {
  if (cs.components.empty()) throw Error("csr_terms: critical digraph is empty");
  CsrTerms ct;
  ct.product = product;
  ct.k = k;
  ct.gamma = cs.global_cyclicity;
  ct.s = critical_matrix(cs);
  ct.threshold = periodicity_threshold(ct.s, ct.gamma);

  std::size_t needed = ct.threshold;
  for (std::size_t c = 0; c < cs.components.size(); ++c) {
    ComponentTerms comp;
    comp.nodes = cs.components[c].nodes;
    comp.class_of = cs.components[c].class_of;
    comp.gamma = cs.components[c].cyclicity;
    comp.s = critical_matrix(cs, c);
    comp.threshold = periodicity_threshold(comp.s, comp.gamma);
    needed = std::max(needed, comp.threshold);
    ct.components.push_back(std::move(comp));
  }
  ct.t = (needed + ct.gamma - 1) / ct.gamma;
  ct.v = (ct.t + 1) * ct.gamma - k % ct.gamma;

  const Matrix sv = power(ct.s, ct.v);
  ct.s_k = power(ct.s, k % ct.gamma);
  ct.c = product * sv;
  ct.r = sv * product;
  for (auto& comp : ct.components) {
    comp.t = (ct.v + k % comp.gamma) / comp.gamma - 1;
    const Matrix svn = power(comp.s, ct.v);
    comp.s_k = power(comp.s, k % comp.gamma);
    comp.c = product * svn;
    comp.r = svn * product;
  }
  return ct;
}

inline CsrTerms csr_terms(const Ensemble& e, const Word& w) {
  return csr_terms(gamma_product(e, w), e.critical, w.length());
}

/// C ⊗ S^(k mod γ) ⊗ R, cross-checked against the component sum and the
/// closed form Γ ⊗ S^v ⊗ Γ.
inline Matrix csr_product(const CsrTerms& ct) {
  const Matrix global = ct.c * ct.s_k * ct.r;
  Matrix sum(global.rows(), global.cols());
  for (const auto& comp : ct.components) sum = sum + comp.c * comp.s_k * comp.r;
  if (!(sum == global)) throw std::logic_error("csr_product: component sum differs from global CSR product");
  if (!(ct.product * power(ct.s, ct.v) * ct.product == global))
    throw std::logic_error("csr_product: closed form differs from C S R");
  return global;
}

struct Witness {
  std::size_t row = 0;  // 0-based
  std::size_t col = 0;
  Scalar product_value;
  Scalar csr_value;
};

struct CsrVerdict {
  bool equal = false;
  Matrix product;
  Matrix csr;
  std::optional<Witness> witness;  // lexicographically first mismatch
};

inline CsrVerdict is_csr(const CsrTerms& ct) {
  CsrVerdict v;
  v.product = ct.product;
  v.csr = csr_product(ct);
  if (auto d = first_difference(v.product, v.csr))
    v.witness = Witness{d->first, d->second, v.product(d->first, d->second), v.csr(d->first, d->second)};
  v.equal = !v.witness;
  return v;
}

inline CsrVerdict is_csr(const Ensemble& e, const Word& w) { return is_csr(csr_terms(e, w)); }

struct RankCompression {
  Matrix c_prime;                       // n×n, non-representative columns ε
  Matrix r_prime;                       // n×n, non-representative rows ε
  Matrix c_compact;                     // n×rank_bound
  Matrix r_compact;                     // rank_bound×n
  std::vector<std::size_t> representatives;  // ordered by component, then class
  std::size_t rank_bound = 0;
};

/// Keeps one representative per cyclic class of every critical component.
inline RankCompression rank_compress(const CsrTerms& ct) {
  const std::size_t n = ct.product.rows();
  RankCompression rc;
  rc.c_prime = Matrix(n, n);
  rc.r_prime = Matrix(n, n);
  for (const auto& comp : ct.components) {
    CriticalComponent cc{comp.nodes, {}, comp.gamma, comp.class_of};
    const Matrix sr = comp.s_k * comp.r;
    for (std::size_t rep : cc.representatives()) {
      rc.representatives.push_back(rep);
      for (std::size_t i = 0; i < n; ++i) {
        rc.c_prime(i, rep) = comp.c(i, rep);
        rc.r_prime(rep, i) = sr(rep, i);
      }
    }
    rc.rank_bound += comp.gamma;
  }
  rc.c_compact = Matrix(n, rc.rank_bound);
  rc.r_compact = Matrix(rc.rank_bound, n);
  for (std::size_t a = 0; a < rc.representatives.size(); ++a)
    for (std::size_t i = 0; i < n; ++i) {
      rc.c_compact(i, a) = rc.c_prime(i, rc.representatives[a]);
      rc.r_compact(a, i) = rc.r_prime(rc.representatives[a], i);
    }
  const Matrix csr = csr_product(ct);
  if (!(rc.c_prime * rc.r_prime == csr) || !(rc.c_compact * rc.r_compact == csr))
    throw std::logic_error("rank_compress: representatives do not reconstruct the CSR product");
  return rc;
}

struct ProjectionReport {
  bool holds = true;
  std::vector<std::string> failures;
};

/// For critical j, column j of the CSR product equals column j of C ⊗ S^(k mod γ);
/// for critical i, row i equals row i of S^(k mod γ) ⊗ R. Checked per component
/// and globally.
inline ProjectionReport csr_critical_projections(const CsrTerms& ct) {
  ProjectionReport rep;
  const std::size_t n = ct.product.rows();
  auto check = [&](const Matrix& full, const Matrix& cs, const Matrix& sr, const std::vector<std::size_t>& nodes,
                   const std::string& label) {
    for (std::size_t c : nodes)
      for (std::size_t x = 0; x < n; ++x) {
        if (full(x, c) != cs(x, c)) {
          rep.holds = false;
          rep.failures.push_back(label + " column " + std::to_string(c + 1));
          break;
        }
      }
    for (std::size_t c : nodes)
      for (std::size_t x = 0; x < n; ++x) {
        if (full(c, x) != sr(c, x)) {
          rep.holds = false;
          rep.failures.push_back(label + " row " + std::to_string(c + 1));
          break;
        }
      }
  };
  std::vector<std::size_t> all;
  for (std::size_t ci = 0; ci < ct.components.size(); ++ci) {
    const auto& comp = ct.components[ci];
    const Matrix cs = comp.c * comp.s_k;
    const Matrix sr = comp.s_k * comp.r;
    check(cs * comp.r, cs, sr, comp.nodes, "component " + std::to_string(ci + 1));
    all.insert(all.end(), comp.nodes.begin(), comp.nodes.end());
  }
  const Matrix cs = ct.c * ct.s_k;
  const Matrix sr = ct.s_k * ct.r;
  check(cs * ct.r, cs, sr, all, "global");
  return rep;
}

}  // namespace mpcsr
