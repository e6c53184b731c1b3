#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mpcsr/csr.hpp"
#include "mpcsr/ensemble.hpp"
#include "mpcsr/reference.hpp"

namespace mpcsr {

using reference::Family;
using reference::build_family;
using reference::family_ids;

struct FamilyCheck {
  std::string pattern;
  std::size_t t = 0;
  std::string word;
  bool fails_csr = false;
  bool witnesses_ok = true;
  std::optional<bool> matches_display;  // set only when a printed t = 10 display exists
  std::vector<std::string> notes;

  bool ok() const { return fails_csr && witnesses_ok && matches_display.value_or(true); }
};

struct FamilyReport {
  std::string id;
  Profile profile = Profile::Unclassified;
  std::vector<FamilyCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

/// Builds every word class at each admissible t and confirms the product is
/// not CSR, with the named witness entries and (at t = 10) the printed displays.
inline FamilyReport verify_family(const Family& f, const std::vector<std::size_t>& t_values) {
  const Ensemble e = build_ensemble(f.generators);
  FamilyReport rep{f.id, e.report.profile, {}};
  for (const auto& wc : f.classes)
    for (std::size_t t : t_values) {
      if (t < wc.t_min) continue;
      const Word w = wc.build(t);
      const CsrVerdict v = is_csr(e, w);
      FamilyCheck c;
      c.pattern = wc.pattern;
      c.t = t;
      c.word = w.to_string();
      c.fails_csr = !v.equal;
      if (v.equal) c.notes.push_back("product is CSR");
      for (const auto& nw : wc.witnesses) {
        const Scalar g = v.product(nw.row - 1, nw.col - 1), s = v.csr(nw.row - 1, nw.col - 1);
        if (g != Scalar(nw.product) || s != Scalar(nw.csr)) {
          c.witnesses_ok = false;
          c.notes.push_back("witness (" + std::to_string(nw.row) + "," + std::to_string(nw.col) + ") is " +
                            to_string(g) + " vs " + to_string(s));
        }
      }
      if (t == 10 && wc.product_t10 && wc.csr_t10) {
        const bool pm = v.product == *wc.product_t10, cm = v.csr == *wc.csr_t10;
        c.matches_display = pm && cm;
        if (!pm) c.notes.push_back("product differs from display");
        if (!cm) c.notes.push_back("CSR differs from display");
      }
      rep.checks.push_back(std::move(c));
    }
  return rep;
}

struct ScanReport {
  std::string id;
  std::size_t k_max = 0;
  std::vector<std::size_t> failing_lengths;   // lengths with a non-CSR family word
  std::optional<std::size_t> cover_from;      // every length in (cover_from, k_max] fails
  bool claim_holds = true;                     // cover_from within the claimed bound
};

/// For every k up to k_max, looks for a family word of length k whose product
/// is not CSR.
inline ScanReport transient_nonexistence_scan(const Family& f, std::size_t k_max) {
  const Ensemble e = build_ensemble(f.generators);
  ScanReport rep;
  rep.id = f.id;
  rep.k_max = k_max;
  std::vector<bool> fails(k_max + 1, false);
  for (const auto& wc : f.classes)
    for (std::size_t t = wc.t_min;; ++t) {
      const Word w = wc.build(t);
      if (w.length() > k_max) break;
      if (!fails[w.length()] && !is_csr(e, w).equal) fails[w.length()] = true;
    }
  for (std::size_t k = 1; k <= k_max; ++k)
    if (fails[k]) rep.failing_lengths.push_back(k);
  std::size_t from = k_max;
  while (from >= 1 && fails[from]) --from;
  if (from < k_max) rep.cover_from = from;
  rep.claim_holds = !f.claimed_cover_from || (rep.cover_from && *rep.cover_from <= *f.claimed_cover_from);
  return rep;
}

}  // namespace mpcsr
