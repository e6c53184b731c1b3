// Command-line front end: analyze, bounds, product, csr-check, counterexample, paper-repro.
// Exit codes: 0 success, 1 verification failure, 2 input or assumption error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mpcsr/io.hpp"
#include "mpcsr/mpcsr.hpp"

using namespace mpcsr;
using io::json;
namespace ref = mpcsr::reference;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_input = 2;

// Node labels in reports are 1-based; matrix entries stay positional.
json node(std::size_t v) { return v + 1; }

json nodes(const std::vector<std::size_t>& vs) {
  json a = json::array();
  for (auto v : vs) a.push_back(node(v));
  return a;
}

json arcs(const std::vector<Arc>& es) {
  json a = json::array();
  for (const auto& [i, j] : es) a.push_back({node(i), node(j)});
  return a;
}

json lengths(const std::vector<std::optional<std::size_t>>& ls) {
  json a = json::array();
  for (const auto& l : ls) a.push_back(l ? json(*l) : json(nullptr));
  return a;
}

json critical_json(const CriticalStructure& cs) {
  json comps = json::array();
  for (const auto& c : cs.components) {
    json classes = json::object();
    for (auto v : c.nodes) classes[std::to_string(v + 1)] = c.class_of[v];
    comps.push_back({{"nodes", nodes(c.nodes)}, {"edges", arcs(c.edges)}, {"cyclicity", c.cyclicity}, {"class_of", classes}});
  }
  return {{"lambda", io::number(cs.lambda)},
          {"critical_nodes", nodes(cs.critical_nodes)},
          {"critical_edges", arcs(cs.critical_edges)},
          {"components", comps},
          {"global_cyclicity", cs.global_cyclicity},
          {"ambient_cyclicity", cs.ambient_cyclicity},
          {"ambient_class_of", cs.ambient_class_of}};
}

json assumptions_json(const AssumptionReport& r) {
  return {{"irreducible", r.irreducible},
          {"strongly_equivalent", r.strongly_equivalent},
          {"inf_equivalent", r.inf_equivalent},
          {"sup_eigenvalue_zero", r.sup_eigenvalue_zero},
          {"visualised", r.visualised},
          {"profile", to_string(r.profile)},
          {"component_count", r.component_count},
          {"critical_cyclicity", r.critical_cyclicity},
          {"ambient_cyclicity", r.ambient_cyclicity},
          {"diagnostics", r.diagnostics}};
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"row", node(w->row)}, {"col", node(w->col)}, {"product", io::scalar_to_json(w->product_value)},
          {"csr", io::scalar_to_json(w->csr_value)}};
}

json analyze(const Ensemble& e) {
  json vis = json::array();
  for (const auto& m : e.visualised) vis.push_back(io::matrix_to_json(m));
  json lambdas = json::array();
  for (double l : e.lambdas) lambdas.push_back(io::number(l));
  return {{"n", e.n()},
          {"generator_count", e.size()},
          {"lambdas", lambdas},
          {"subeigenvector", io::vector_to_json(e.x)},
          {"visualised", vis},
          {"a_sup", io::matrix_to_json(e.a_sup)},
          {"a_inf", io::matrix_to_json(e.a_inf)},
          {"b_sup", io::matrix_to_json(e.b_sup)},
          {"lambda_star", io::optional_to_json(e.lambda_star)},
          {"critical", critical_json(e.critical)},
          {"assumptions", assumptions_json(e.report)}};
}

json bounds(const Ensemble& e) {
  const auto br = ambient_csr_bound(e);
  const auto pw = path_weights(e);
  json out = {{"profile", to_string(br.profile)},
              {"lambda_star", io::optional_to_json(e.lambda_star)},
              {"alpha", io::vector_to_json(pw.alpha)},
              {"beta", io::vector_to_json(pw.beta)},
              {"w", io::vector_to_json(pw.w_inf)},
              {"v", io::vector_to_json(pw.v_inf)},
              {"gamma_avoid", io::matrix_to_json(pw.gamma_avoid)},
              {"schwarz_branch", io::matrix_to_json(br.schwarz_branch)},
              {"avoid_branch", io::matrix_to_json(br.avoid_branch)},
              {"bound", io::number(br.bound)},
              {"ambient_k", br.ambient_k},
              {"argmax", {node(br.argmax.first), node(br.argmax.second)}},
              {"argmax_branch", br.argmax_in_avoid_branch ? "avoid" : "schwarz"}};
  if (const auto wb = weak_csr_bound(e, 100000))
    out["weak_bound"] = {{"k", wb->k},
                         {"threshold", io::optional_to_json(wb->threshold)},
                         {"argmax", wb->argmax ? json{node(wb->argmax->first), node(wb->argmax->second)} : json(nullptr)}};
  else
    out["weak_bound"] = nullptr;
  return out;
}

json product(const Ensemble& e, const Word& w) {
  const auto tw = first_passage_weights(e, w);
  return {{"word", w.to_string()},
          {"k", w.length()},
          {"product", io::matrix_to_json(tw.product)},
          {"w_star", io::vector_to_json(tw.w_star)},
          {"v_star", io::vector_to_json(tw.v_star)},
          {"w_length", lengths(tw.w_length)},
          {"v_length", lengths(tw.v_length)}};
}

json csr_check(const Ensemble& e, const Word& w, bool emit_factors) {
  const auto ct = csr_terms(e, w);
  const auto v = is_csr(ct);
  const auto rc = rank_compress(ct);
  json out = {{"word", w.to_string()},
              {"k", ct.k},
              {"gamma", ct.gamma},
              {"t", ct.t},
              {"v", ct.v},
              {"product", io::matrix_to_json(v.product)},
              {"csr", io::matrix_to_json(v.csr)},
              {"is_csr", v.equal},
              {"witness", witness_json(v.witness)},
              {"rank_bound", rc.rank_bound},
              {"representatives", nodes(rc.representatives)}};
  if (emit_factors)
    out["factors"] = {{"c_prime", io::matrix_to_json(rc.c_prime)},
                      {"s_k", io::matrix_to_json(ct.s_k)},
                      {"r_prime", io::matrix_to_json(rc.r_prime)}};
  return out;
}

json counterexample(const std::string& id, std::size_t t, bool& ok) {
  const auto f = ref::build_family(id);
  const auto e = build_ensemble(f.generators);
  const auto rep = verify_family(f, {t});
  json words = json::array();
  for (const auto& c : rep.checks) {
    const auto v = is_csr(e, Word::parse(c.word));
    words.push_back({{"pattern", c.pattern},
                     {"t", c.t},
                     {"word", c.word},
                     {"product", io::matrix_to_json(v.product)},
                     {"csr", io::matrix_to_json(v.csr)},
                     {"is_csr", v.equal},
                     {"witness", witness_json(v.witness)},
                     {"named_witnesses_ok", c.witnesses_ok},
                     {"matches_display", c.matches_display ? json(*c.matches_display) : json(nullptr)},
                     {"notes", c.notes}});
  }
  ok = rep.ok() && !rep.checks.empty();
  return {{"family", id}, {"profile", to_string(rep.profile)}, {"words", words}, {"ok", ok}};
}

struct Manifest {
  json entries = json::array();
  bool ok = true;
  void add(const std::string& name, bool pass, json detail = nullptr) {
    entries.push_back({{"check", name}, {"pass", pass}, {"detail", std::move(detail)}});
    ok = ok && pass;
  }
};

json reproduce_all(std::uint64_t seed, bool& ok) {
  Manifest m;
  const auto e = build_ensemble(ref::eight_node_generators());
  m.add("eight-node supremum and infimum", e.a_sup == ref::eight_node_a_sup() && e.a_inf == ref::eight_node_a_inf());
  const auto pw = path_weights(e);
  m.add("eight-node alpha, beta, w, v",
        pw.alpha == ref::eight_node_alpha() && pw.beta == ref::eight_node_beta() && pw.w_inf == ref::eight_node_w() &&
            pw.v_inf == ref::eight_node_v());
  const auto br = ambient_csr_bound(e);
  m.add("eight-node ambient bound",
        std::abs(br.bound - ref::eight_node_printed_bound) <= tolerance && br.ambient_k == ref::eight_node_printed_k,
        {{"expected_bound", ref::eight_node_printed_bound},
         {"expected_k", ref::eight_node_printed_k},
         {"bound", io::number(br.bound)},
         {"ambient_k", br.ambient_k},
         {"argmax", {node(br.argmax.first), node(br.argmax.second)}}});
  const auto ct = csr_terms(e, ref::eight_node_word());
  const auto v = is_csr(ct);
  const auto rc = rank_compress(ct);
  m.add("eight-node product of the 24-letter word", v.product == ref::eight_node_product());
  m.add("eight-node CSR identity and rank-2 factors",
        v.equal && rc.rank_bound == ref::eight_node_rank && rc.c_compact == ref::eight_node_c_compact() &&
            rc.r_compact == ref::eight_node_r_compact(),
        {{"rank_bound", rc.rank_bound}});

  // Seeded spot check of the ambient bound on the example.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> letter(1, e.size());
  std::size_t sampled = 0, failing = 0;
  for (std::size_t k : {br.ambient_k, br.ambient_k + 1})
    for (int s = 0; s < 200; ++s) {
      Word w;
      for (std::size_t i = 0; i < k; ++i) w.letters.push_back(letter(rng));
      ++sampled;
      failing += !is_csr(e, w).equal;
    }
  m.add("eight-node sampled words at the ambient length are CSR", failing == 0,
        {{"seed", seed}, {"words", sampled}, {"failing", failing}});

  for (const auto& id : ref::family_ids()) {
    bool fam_ok = false;
    const json rep = counterexample(id, 10, fam_ok);
    json notes = json::array();
    for (const auto& w : rep["words"])
      for (const auto& n : w["notes"]) notes.push_back(w["pattern"].get<std::string>() + ": " + n.get<std::string>());
    m.add(id + " words at t = 10 fail CSR and match the displays", fam_ok, notes);
  }
  ok = m.ok;
  return {{"checks", m.entries}, {"ok", m.ok}};
}

// Two-space indentation with arrays of scalars kept on one line, so matrix
// rows read as rows.
void pretty(const json& j, std::ostream& os, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' '), close(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_object() && !j.empty()) {
    os << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      os << pad << json(key).dump() << ": ";
      pretty(value, os, depth + 1);
      os << (++i < j.size() ? ",\n" : "\n");
    }
    os << close << "}";
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad;
      pretty(j[i], os, depth + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << "]";
  } else {
    os << j.dump();
  }
}

void emit(const json& j, const std::string& path) {
  std::ostringstream os;
  pretty(j, os, 0);
  const std::string text = os.str() + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw io::FormatError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-plus CSR analysis of inhomogeneous matrix products"};
  app.require_subcommand(1);

  std::string input, word_text, output, family;
  std::size_t t = 10;
  std::uint64_t seed = 1;
  bool emit_factors = false;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input, "Ensemble JSON file")->required();
    sub->add_option("-o,--output", output, "Write the report here instead of stdout");
    return sub;
  };
  auto* cmd_analyze = with_input(app.add_subcommand("analyze", "Ensemble report: supremum, infimum, critical structure"));
  auto* cmd_bounds = with_input(app.add_subcommand("bounds", "Ambient and weak CSR length bounds"));
  auto* cmd_product = with_input(app.add_subcommand("product", "Product of a word with first-passage weights"));
  cmd_product->add_option("-w,--word", word_text, "Comma-separated generator indices, 1-based")->required();
  auto* cmd_csr = with_input(app.add_subcommand("csr-check", "CSR terms, verdict and rank bound for a word"));
  cmd_csr->add_option("-w,--word", word_text, "Comma-separated generator indices, 1-based")->required();
  cmd_csr->add_flag("--emit-factors", emit_factors, "Include C', S^(k mod gamma) and R'");
  auto* cmd_counter = app.add_subcommand("counterexample", "Evaluate one built-in counterexample family");
  cmd_counter->add_option("-f,--family", family, "Family id")->required()->check(CLI::IsMember(ref::family_ids()));
  cmd_counter->add_option("-t,--t", t, "Word parameter")->check(CLI::PositiveNumber);
  cmd_counter->add_option("-o,--output", output, "Write the report here instead of stdout");
  auto* cmd_repro = app.add_subcommand("paper-repro", "Reproduce the worked example and every family");
  cmd_repro->add_option("-s,--seed", seed, "Seed for the sampled word check");
  cmd_repro->add_option("-o,--output", output, "Write the manifest here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (cmd_counter->parsed()) {
      bool ok = false;
      emit(counterexample(family, t, ok), output);
      return ok ? exit_ok : exit_verification;
    }
    if (cmd_repro->parsed()) {
      bool ok = false;
      emit(reproduce_all(seed, ok), output);
      return ok ? exit_ok : exit_verification;
    }

    const Ensemble e = build_ensemble(io::load_ensemble(input));
    if (cmd_analyze->parsed()) {
      emit(analyze(e), output);
    } else if (cmd_bounds->parsed()) {
      try {
        emit(bounds(e), output);
      } catch (const AssumptionError& err) {
        emit({{"error", err.what()}, {"assumptions", assumptions_json(e.report)}}, output);
        return exit_input;
      }
    } else {
      const Word w = Word::parse(word_text);
      w.validate(e.size());
      emit(cmd_product->parsed() ? product(e, w) : csr_check(e, w, emit_factors), output);
    }
    return exit_ok;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_input;
  }
}
