#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpcsr/ensemble.hpp"
#include "mpcsr/matrix.hpp"

namespace mpcsr {

/// Sequence of 1-based generator indices.
struct Word {
  std::vector<std::size_t> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool operator==(const Word&) const = default;

  /// Parses "5,5,1,...". Whitespace around letters is ignored.
  static Word parse(const std::string& text) {
    Word w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) throw Error("empty letter in word '" + text + "'");
      item = item.substr(b, e - b + 1);
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || v == 0 || item.front() == '-') throw Error("invalid letter '" + item + "' in word");
      w.letters.push_back(v);
    }
    if (w.letters.empty()) throw Error("word must not be empty");
    return w;
  }

  static Word repeat(std::size_t letter, std::size_t count) { return Word{std::vector<std::size_t>(count, letter)}; }

  Word operator+(const Word& o) const {
    Word r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
  }

  Word operator*(std::size_t times) const {
    Word r;
    for (std::size_t t = 0; t < times; ++t) r = r + *this;
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? "," : "") + std::to_string(letters[i]);
    return s;
  }

  void validate(std::size_t alphabet) const {
    if (letters.empty()) throw Error("word must not be empty");
    for (std::size_t l : letters)
      if (l == 0 || l > alphabet)
        throw Error("letter " + std::to_string(l) + " out of range 1.." + std::to_string(alphabet));
  }
};

/// Left-to-right product of the visualised generators named by the word.
inline Matrix gamma_product(const Ensemble& e, const Word& w) {
  w.validate(e.size());
  Matrix p = e.visualised[w.letters.front() - 1];
  for (std::size_t l = 1; l < w.length(); ++l) p = p * e.visualised[w.letters[l] - 1];
  return p;
}

struct TrellisWeights {
  Matrix product;
  Vector w_star;  // best initial walk whose only critical visit is its last node
  Vector v_star;  // best final walk whose only critical visit is its first node
  std::vector<std::optional<std::size_t>> w_length;  // shortest optimal length, empty if unreachable
  std::vector<std::optional<std::size_t>> v_length;
};

namespace detail {

struct Best {
  Scalar weight = eps;
  std::size_t length = 0;

  void offer(Scalar w, std::size_t len) {
    if (w.is_eps()) return;
    if (w > weight || (w == weight && len < length)) {
      weight = w;
      length = len;
    }
  }
};

}  // namespace detail

/// First-passage weights by dynamic programming over the trellis stages.
/// Intermediate states are restricted to non-critical nodes.
inline TrellisWeights first_passage_weights(const Ensemble& e, const Word& w) {
  w.validate(e.size());
  const std::size_t n = e.n();
  const std::size_t k = w.length();
  const auto& cs = e.critical;
  std::vector<bool> crit(n, false);
  for (std::size_t c : cs.critical_nodes) crit[c] = true;
  auto letter = [&](std::size_t stage) -> const Matrix& { return e.visualised[w.letters[stage - 1] - 1]; };

  TrellisWeights tw;
  tw.product = gamma_product(e, w);
  tw.w_star.assign(n, eps);
  tw.v_star.assign(n, eps);
  tw.w_length.assign(n, std::nullopt);
  tw.v_length.assign(n, std::nullopt);

  // Forward: state[s][u] = best weight of i:0 -> u:m through non-critical nodes.
  for (std::size_t s = 0; s < n; ++s) {
    if (crit[s]) {
      tw.w_star[s] = 0.0;
      tw.w_length[s] = 0;
      continue;
    }
    detail::Best best;
    std::vector<Scalar> cur(n, eps);
    cur[s] = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      const Matrix& a = letter(m);
      std::vector<Scalar> next(n, eps);
      for (std::size_t u = 0; u < n; ++u) {
        if (cur[u].is_eps()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar val = cur[u] * a(u, j);
          if (val.is_eps()) continue;
          if (crit[j])
            best.offer(val, m);
          else
            next[j] += val;
        }
      }
      cur = std::move(next);
    }
    if (best.weight.is_finite()) {
      tw.w_star[s] = best.weight;
      tw.w_length[s] = best.length;
    }
  }

  // Backward: state[u] = best weight of u:l -> t:k through non-critical nodes.
  for (std::size_t t = 0; t < n; ++t) {
    if (crit[t]) {
      tw.v_star[t] = 0.0;
      tw.v_length[t] = 0;
      continue;
    }
    detail::Best best;
    std::vector<Scalar> cur(n, eps);
    cur[t] = 0.0;
    for (std::size_t l = k; l >= 1; --l) {
      const Matrix& a = letter(l);
      std::vector<Scalar> prev(n, eps);
      for (std::size_t u = 0; u < n; ++u) {
        if (cur[u].is_eps()) continue;
        for (std::size_t src = 0; src < n; ++src) {
          const Scalar val = a(src, u) * cur[u];
          if (val.is_eps()) continue;
          if (crit[src])
            best.offer(val, k - l + 1);
          else
            prev[src] += val;
        }
      }
      cur = std::move(prev);
    }
    if (best.weight.is_finite()) {
      tw.v_star[t] = best.weight;
      tw.v_length[t] = best.length;
    }
  }
  return tw;
}

/// Realized first-passage lengths against their analytic upper bounds.
struct WalkLengthBounds {
  std::vector<std::optional<std::size_t>> initial_length;
  std::vector<std::optional<double>> initial_bound;
  std::vector<std::optional<std::size_t>> final_length;
  std::vector<std::optional<double>> final_bound;
  std::size_t k = 0;

  /// min(bound, k) per node, or empty where no walk exists.
  std::vector<std::optional<double>> initial_threshold() const { return clip(initial_bound); }
  std::vector<std::optional<double>> final_threshold() const { return clip(final_bound); }

  bool holds() const {
    for (std::size_t i = 0; i < initial_length.size(); ++i) {
      if (initial_length[i] && static_cast<double>(*initial_length[i]) > *initial_bound[i] + tolerance) return false;
      if (final_length[i] && static_cast<double>(*final_length[i]) > *final_bound[i] + tolerance) return false;
    }
    return true;
  }

 private:
  std::vector<std::optional<double>> clip(const std::vector<std::optional<double>>& b) const {
    std::vector<std::optional<double>> r = b;
    for (auto& x : r)
      if (x) x = std::min(*x, static_cast<double>(k));
    return r;
  }
};

inline WalkLengthBounds optimal_walk_lengths(const Ensemble& e, const Word& w) {
  if (e.lambda_star && *e.lambda_star >= 0.0) {
    std::ostringstream os;
    os << "walk length bounds need a negative non-critical cycle mean, got " << *e.lambda_star;
    throw AssumptionError(os.str());
  }
  const auto tw = first_passage_weights(e, w);
  const auto pw = path_weights(e);
  const std::size_t n = e.n();
  const double slack = static_cast<double>(n - e.critical.q());

  WalkLengthBounds b;
  b.k = w.length();
  b.initial_length = tw.w_length;
  b.final_length = tw.v_length;
  b.initial_bound.assign(n, std::nullopt);
  b.final_bound.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    if (tw.w_length[i]) {
      b.initial_bound[i] = e.lambda_star ? (tw.w_star[i].value() - pw.alpha[i].value()) / *e.lambda_star + slack : slack;
    }
    if (tw.v_length[i]) {
      b.final_bound[i] = e.lambda_star ? (tw.v_star[i].value() - pw.beta[i].value()) / *e.lambda_star + slack : slack;
    }
  }
  return b;
}

}  // namespace mpcsr
