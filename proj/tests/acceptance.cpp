// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mpcsr/mpcsr.hpp"
#include "oracles.hpp"

using namespace mpcsr;
namespace ref = mpcsr::reference;
using oracle::Rng;

namespace {

constexpr double bound_tolerance = 1e-9;
constexpr double example_seconds = 1.0;
constexpr double family_seconds = 1.0;
constexpr double property_seconds = 60.0;
constexpr int property_cases = 200;
constexpr int words_per_ensemble = 500;

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << "\n";
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string cell(std::size_t i, std::size_t j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

// ---------------------------------------------------------------------------

void eight_node_example() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = build_ensemble(ref::eight_node_generators());
  report("eight-node: supremum and infimum match the printed matrices",
         e.a_sup == ref::eight_node_a_sup() && e.a_inf == ref::eight_node_a_inf());

  const auto pw = path_weights(e);
  report("eight-node: alpha, beta, w, v exact",
         pw.alpha == ref::eight_node_alpha() && pw.beta == ref::eight_node_beta() && pw.w_inf == ref::eight_node_w() &&
             pw.v_inf == ref::eight_node_v());

  const auto br = ambient_csr_bound(e);
  {
    const bool value_ok = std::abs(br.bound - ref::eight_node_printed_bound) <= bound_tolerance;
    const bool k_ok = br.ambient_k == ref::eight_node_printed_k;
    std::ostringstream os;
    os << "expected bound " << ref::eight_node_printed_bound << " and k " << ref::eight_node_printed_k << ", computed "
       << fmt(br.bound) << " and k " << br.ambient_k << " (maximum at " << (br.argmax_in_avoid_branch ? "second" : "first")
       << " branch " << cell(br.argmax.first, br.argmax.second) << ", lambda* " << fmt(e.lambda_star.value_or(0))
       << "); " << ref::eight_node_printed_bound << " is the first-branch cell (7,5), not the table maximum";
    report("eight-node: ambient bound value and length", value_ok && k_ok, os.str());
  }
  {
    std::vector<std::string> bad;
    const auto p1 = ref::eight_node_schwarz_branch_printed();
    const auto p2 = ref::eight_node_avoid_branch_printed();
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        const Scalar c1 = ref::parse_cell(p1[i][j]);
        if (std::abs(br.schwarz_branch(i, j).value() - c1.value()) > ref::printed_tolerance(p1[i][j]))
          bad.push_back("first " + cell(i, j) + " " + fmt(br.schwarz_branch(i, j).value()) + " vs " + p1[i][j]);
        const Scalar c2 = ref::parse_cell(p2[i][j]);
        const Scalar got = br.avoid_branch(i, j);
        if (got.is_eps() != c2.is_eps() ||
            (c2.is_finite() && std::abs(got.value() - c2.value()) > ref::printed_tolerance(p2[i][j])))
          bad.push_back("second " + cell(i, j) + " " + to_string(got) + " vs " + p2[i][j]);
      }
    std::string detail = "128 cells compared at printed precision";
    for (const auto& b : bad) detail += "; " + b;
    report("eight-node: both bound tables match cell for cell", bad.empty(), detail);
  }

  const auto ct = csr_terms(e, ref::eight_node_word());
  const auto verdict = is_csr(ct);
  const auto rc = rank_compress(ct);
  report("eight-node: product of the 24-letter word, CSR identity, rank-2 factors",
         ct.product == ref::eight_node_product() && verdict.equal && rc.rank_bound == ref::eight_node_rank &&
             rc.c_compact == ref::eight_node_c_compact() && rc.r_compact == ref::eight_node_r_compact(),
         "rank bound " + std::to_string(rc.rank_bound));
  const double secs = seconds_since(t0);
  report("eight-node: runtime under 1 s", secs < example_seconds, fmt(secs) + " s");
}

// ---------------------------------------------------------------------------

bool family_t10(const std::string& id, std::string& detail) {
  const auto rep = verify_family(build_family(id), {10});
  bool ok = true, witnesses = true;
  for (const auto& c : rep.checks) {
    witnesses = witnesses && c.witnesses_ok;
    if (!c.ok()) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += c.pattern + " at t = 10:";
      for (std::size_t i = 0; i < c.notes.size(); ++i) detail += (i ? ", " : " ") + c.notes[i];
    }
  }
  if (!ok && witnesses) detail += "; named witnesses hold";
  return ok;
}

void families() {
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"P1_six", "U, V and CSR counterparts at t = 10; witnesses (6,5) -401/-302, (2,5) -301/-202, (4,5) -401/-302"},
      {"P1_three", "M, N, P and CSR counterparts at t = 10; witness (1,2) -100/-2"},
      {"P2_six", "L, F and CSR counterparts at t = 10; witness (1,5) -301/-202"},
      {"P3_four", "W and CSR counterpart at t = 10; witnesses (1,3) -101/-2, (4,3) -201/-102"}};
  for (const auto& [id, what] : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    const bool ok = family_t10(id, detail);
    const double secs = seconds_since(t0);
    if (id == "P2_six" && !ok) {
      auto f = build_family(id);
      f.generators[1](4, 5) = -1.0;
      const auto adjusted = verify_family(f, {10});
      detail += "; printed tables reproduce exactly when the second generator has -1 at (5,6)" +
                std::string(adjusted.ok() ? "" : " (not confirmed)");
    }
    report(id + ": " + what, ok, detail);
    report(id + ": runtime under 1 s", secs < family_seconds, fmt(secs) + " s");
  }

  std::vector<std::size_t> ts(19);
  std::iota(ts.begin(), ts.end(), 2);
  std::size_t words = 0, bad = 0;
  std::string detail;
  for (const auto& id : family_ids()) {
    const auto rep = verify_family(build_family(id), ts);
    for (const auto& c : rep.checks) {
      ++words;
      if (!c.fails_csr || !c.witnesses_ok) {
        ++bad;
        detail += " " + id + " " + c.pattern + " t=" + std::to_string(c.t);
      }
    }
  }
  report("families: every word with t in 2..20 fails the CSR identity", bad == 0,
         std::to_string(words) + " words checked" + detail);
}

// ---------------------------------------------------------------------------

struct Suite {
  std::string name;
  std::function<std::pair<int, std::string>()> run;  // cases, first problem ("" if none)
};

std::pair<int, std::string> semiring_oracle() {
  Rng rng(101);
  for (int c = 0; c < property_cases; ++c) {
    const Matrix a = oracle::random_matrix(rng, rng.index(1, 5), 0.5, -20, 0);
    const std::size_t k = rng.index(1, 6);
    if (!(power(a, k) == oracle::walk_power(a, k))) return {c + 1, "case " + std::to_string(c)};
  }
  return {property_cases, ""};
}

std::pair<int, std::string> karp_oracle() {
  Rng rng(102);
  for (int c = 0; c < property_cases; ++c) {
    const Matrix a = oracle::random_matrix(rng, rng.index(1, 6), 0.4, -20, 0);
    const auto x = max_cycle_mean(a);
    const auto y = oracle::max_cycle_mean(a);
    if (x.has_value() != y.has_value() || (x && std::abs(*x - *y) > 1e-9)) return {c + 1, "case " + std::to_string(c)};
  }
  return {property_cases, ""};
}

template <class Check>
std::pair<int, std::string> over_ensembles(std::uint64_t seed, bool ambient_only, Check check) {
  Rng rng(seed);
  for (int c = 0; c < property_cases; ++c) {
    const auto inst = ambient_only || c % 2 ? oracle::ambient_ensemble(rng) : oracle::general_ensemble(rng);
    for (const auto& g : inst.generators)
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
          if (g(i, j).is_finite() && (g(i, j).value() < -20 || g(i, j).value() > 0))
            return {c + 1, "case " + std::to_string(c) + ": weight outside [-20,0]"};
    const auto e = build_ensemble(inst.generators);
    const std::string problem = check(e, rng);
    if (!problem.empty()) return {c + 1, "case " + std::to_string(c) + ": " + problem};
  }
  return {property_cases, ""};
}

std::string class_equality(const Ensemble& e, Rng& rng) {
  const auto ct = csr_terms(e, Word{oracle::random_word(rng, e.size(), rng.index(1, 30))});
  for (const auto& comp : ct.components)
    for (std::size_t a : comp.nodes)
      for (std::size_t b : comp.nodes)
        if (comp.class_of[a] == comp.class_of[b])
          for (std::size_t x = 0; x < e.n(); ++x)
            if (comp.c(x, a) != comp.c(x, b) || comp.r(a, x) != comp.r(b, x) || ct.c(x, a) != ct.c(x, b) ||
                ct.r(a, x) != ct.r(b, x))
              return "class " + std::to_string(comp.class_of[a]);
  return "";
}

std::string component_sum(const Ensemble& e, Rng& rng) {
  const auto ct = csr_terms(e, Word{oracle::random_word(rng, e.size(), rng.index(1, 30))});
  Matrix sum(e.n(), e.n());
  for (const auto& comp : ct.components) sum = sum + comp.c * comp.s_k * comp.r;
  return sum == ct.c * ct.s_k * ct.r ? "" : "component sum differs";
}

std::string factor_rank(const Ensemble& e, Rng& rng) {
  const auto ct = csr_terms(e, Word{oracle::random_word(rng, e.size(), rng.index(1, 30))});
  const auto rc = rank_compress(ct);
  std::size_t finite_columns = 0, sum_gamma = 0;
  for (std::size_t j = 0; j < e.n(); ++j) {
    bool any = false;
    for (std::size_t i = 0; i < e.n(); ++i) any = any || rc.c_prime(i, j).is_finite();
    finite_columns += any;
  }
  for (const auto& comp : ct.components) sum_gamma += comp.gamma;
  if (!(rc.c_prime * rc.r_prime == csr_product(ct))) return "factors do not reconstruct";
  return finite_columns == sum_gamma ? "" : "column count " + std::to_string(finite_columns);
}

std::string weak_soundness(const Ensemble& e, Rng& rng) {
  const auto wb = weak_csr_bound(e, 400);
  if (!wb) return "no weak bound up to 400";
  for (std::size_t extra : {0, 1, 5}) {
    const Word w{oracle::random_word(rng, e.size(), wb->k + extra)};
    const auto v = is_csr(e, w);
    if (!entrywise_leq(v.product, v.csr)) return "word " + w.to_string();
  }
  return "";
}

std::size_t ambient_words = 0;

std::string ambient_soundness(const Ensemble& e, Rng& rng) {
  const auto br = ambient_csr_bound(e);
  for (std::size_t k : {br.ambient_k, br.ambient_k + 1})
    for (int s = 0; s < words_per_ensemble; ++s) {
      const Word w{oracle::random_word(rng, e.size(), k)};
      ++ambient_words;
      if (!is_csr(e, w).equal) return "word " + w.to_string();
    }
  return "";
}

std::string walk_lengths(const Ensemble& e, Rng& rng) {
  const Word w{oracle::random_word(rng, e.size(), rng.index(1, 40))};
  return optimal_walk_lengths(e, w).holds() ? "" : "word " + w.to_string();
}

std::string projections(const Ensemble& e, Rng& rng) {
  const auto br = ambient_csr_bound(e);
  const Word w{oracle::random_word(rng, e.size(), br.ambient_k + rng.index(0, 3))};
  const auto rep = csr_critical_projections(csr_terms(e, w));
  return rep.holds ? "" : rep.failures.front();
}

void property_suites() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Suite> suites = {
      {"matrix powers equal exhaustive walk enumeration (n <= 5, k <= 6)", semiring_oracle},
      {"Karp cycle mean equals simple-cycle enumeration (n <= 6)", karp_oracle},
      {"columns of C and rows of R coincide within cyclic classes", [] { return over_ensembles(103, false, class_equality); }},
      {"global CSR product equals the sum of component products", [] { return over_ensembles(104, false, component_sum); }},
      {"representative factors reconstruct the CSR product with sum-of-cyclicities columns",
       [] { return over_ensembles(105, false, factor_rank); }},
      {"products at and above the weak bound stay below their CSR form", [] { return over_ensembles(106, false, weak_soundness); }},
      {"words of length ambient_k and ambient_k+1 are CSR (500 each per ensemble)",
       [] { return over_ensembles(107, true, ambient_soundness); }},
      {"first-passage lengths within their analytic bounds", [] { return over_ensembles(108, false, walk_lengths); }},
      {"critical row and column projections above the ambient bound", [] { return over_ensembles(109, true, projections); }},
  };
  for (const auto& s : suites) {
    const auto [cases, problem] = s.run();
    std::string detail = std::to_string(cases) + " cases";
    if (s.name.find("ambient_k and") != std::string::npos) detail += ", " + std::to_string(ambient_words) + " words";
    if (!problem.empty()) detail += "; " + problem;
    report("property: " + s.name, problem.empty() && cases >= property_cases, detail);
  }
  const double secs = seconds_since(t0);
  report("property suites: runtime under 60 s", secs < property_seconds, fmt(secs) + " s");
}

}  // namespace

int main() {
  try {
    eight_node_example();
    families();
    property_suites();
  } catch (const std::exception& ex) {
    report("acceptance run completed", false, ex.what());
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
