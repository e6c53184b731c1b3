#pragma once

// Published reference data: the eight-node ambient-case example and the four
// counterexample families. Node and generator numbers are 1-based here, as
// printed; matrices themselves are 0-indexed like everywhere else.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpcsr/ensemble.hpp"
#include "mpcsr/matrix.hpp"
#include "mpcsr/trellis.hpp"

namespace mpcsr::reference {

inline constexpr Scalar E = eps;

// ---------------------------------------------------------------------------
// Eight-node example

inline std::vector<Matrix> eight_node_generators() {
  return {
      Matrix{{E, 0, E, 0, E, E, E, E},
             {E, E, 0, E, E, E, -16, E},
             {E, 0, E, 0, E, E, E, E},
             {0, E, E, E, E, -6, E, E},
             {-11, E, E, E, E, E, -14, E},
             {E, E, E, E, -18, E, E, E},
             {E, E, E, E, E, E, E, -20},
             {E, E, -11, E, E, -3, E, E}},
      Matrix{{E, 0, E, 0, E, E, E, E},
             {E, E, 0, E, E, E, -3, E},
             {E, 0, E, 0, E, E, E, E},
             {0, E, E, E, E, -6, E, E},
             {-17, E, E, E, E, E, -6, E},
             {E, E, E, E, -17, E, E, E},
             {E, E, E, E, E, E, E, -5},
             {E, E, -19, E, E, -7, E, E}},
      Matrix{{E, 0, E, 0, E, E, E, E},
             {E, E, 0, E, E, E, -4, E},
             {E, 0, E, 0, E, E, E, E},
             {0, E, E, E, E, -6, E, E},
             {-13, E, E, E, E, E, -10, E},
             {E, E, E, E, -8, E, E, E},
             {E, E, E, E, E, E, E, -17},
             {E, E, -12, E, E, -11, E, E}},
      Matrix{{E, 0, E, 0, E, E, E, E},
             {E, E, 0, E, E, E, -19, E},
             {E, 0, E, 0, E, E, E, E},
             {0, E, E, E, E, -6, E, E},
             {-16, E, E, E, E, E, -16, E},
             {E, E, E, E, -8, E, E, E},
             {E, E, E, E, E, E, E, -12},
             {E, E, -2, E, E, -2, E, E}},
      Matrix{{E, 0, E, 0, E, E, E, E},
             {E, E, 0, E, E, E, -11, E},
             {E, 0, E, 0, E, E, E, E},
             {0, E, E, E, E, -16, E, E},
             {-19, E, E, E, E, E, -3, E},
             {E, E, E, E, -12, E, E, E},
             {E, E, E, E, E, E, E, -10},
             {E, E, -1, E, E, -7, E, E}},
  };
}

inline Matrix eight_node_a_sup() {
  return {{E, 0, E, 0, E, E, E, E},       {E, E, 0, E, E, E, -3, E},   {E, 0, E, 0, E, E, E, E},
          {0, E, E, E, E, -6, E, E},      {-11, E, E, E, E, E, -3, E}, {E, E, E, E, -8, E, E, E},
          {E, E, E, E, E, E, E, -5},      {E, E, -1, E, E, -2, E, E}};
}

inline Matrix eight_node_a_inf() {
  return {{E, 0, E, 0, E, E, E, E},       {E, E, 0, E, E, E, -19, E},   {E, 0, E, 0, E, E, E, E},
          {0, E, E, E, E, -16, E, E},     {-19, E, E, E, E, E, -16, E}, {E, E, E, E, -18, E, E, E},
          {E, E, E, E, E, E, E, -20},     {E, E, -19, E, E, -11, E, E}};
}

inline Vector eight_node_alpha() { return {0, 0, 0, 0, -9, -17, -6, -1}; }
inline Vector eight_node_beta() { return {0, 0, 0, 0, -14, -6, -3, -8}; }
inline Vector eight_node_w() { return {0, 0, 0, 0, -19, -37, -39, -19}; }
inline Vector eight_node_v() { return {0, 0, 0, 0, -34, -16, -19, -39}; }

/// Avoiding-path table exactly as printed (row 6 repeats row 5).
inline Matrix eight_node_gamma_printed() {
  return {{E, E, E, E, E, E, E, E},         {E, E, E, E, E, E, E, E},         {E, E, E, E, E, E, E, E},
          {E, E, E, E, E, E, E, E},         {E, E, E, E, -18, -10, -3, -8},   {E, E, E, E, -18, -10, -3, -8},
          {E, E, E, E, -15, -7, -18, -5},   {E, E, E, E, -10, -2, -13, -18}};
}

/// Printed bound tables; cells keep their printed precision.
inline std::vector<std::vector<std::string>> eight_node_schwarz_branch_printed() {
  return {{"12", "12", "12", "12", "16.4", "14.2", "15.6", "18.9"},
          {"12", "12", "12", "12", "16.4", "14.2", "15.6", "18.9"},
          {"12", "12", "12", "12", "16.4", "14.2", "15.6", "18.9"},
          {"12", "12", "12", "12", "16.4", "14.2", "15.6", "18.9"},
          {"14.2", "14.2", "14.2", "14.2", "18.7", "16.4", "17.8", "21.1"},
          {"16.4", "16.4", "16.4", "16.4", "20.9", "18.7", "20", "23.3"},
          {"19.3", "19.3", "19.3", "19.3", "23.8", "21.6", "22.9", "26.2"},
          {"16", "16", "16", "16", "20.4", "18.22", "19.6", "22.9"}};
}

inline std::vector<std::vector<std::string>> eight_node_avoid_branch_printed() {
  const std::vector<std::string> none(8, "eps");
  return {none,
          none,
          none,
          none,
          {"eps", "eps", "eps", "eps", "12.8", "10.6", "12.8", "16.1"},
          {"eps", "eps", "eps", "eps", "19", "12.8", "15", "18.3"},
          {"eps", "eps", "eps", "eps", "17.9", "15.7", "13.9", "21.2"},
          {"eps", "eps", "eps", "eps", "14.6", "12.3", "10.6", "13.9"}};
}

inline constexpr double eight_node_printed_bound = 23.8;
inline constexpr std::size_t eight_node_printed_k = 24;

inline Word eight_node_word() {
  return Word::parse("5,5,1,5,4,1,2,3,5,5,1,5,5,3,5,1,3,5,4,5,4,1,5,5");
}

inline Matrix eight_node_product() {
  return {{0, E, 0, E, E, -16, -11, E},       {E, 0, E, 0, -28, E, E, -21},
          {0, E, 0, E, E, -16, -11, E},       {E, 0, E, 0, -28, E, E, -21},
          {E, -19, E, -19, -47, E, E, -40},   {-31, E, -31, E, E, -47, -42, E},
          {-11, E, -11, E, E, -27, -22, E},   {E, -1, E, -1, -29, E, E, -22}};
}

/// Critical columns of C and critical rows of R as printed (8x4 and 4x8).
inline Matrix eight_node_c_critical() {
  return {{0, E, 0, E},   {E, 0, E, 0},     {0, E, 0, E},     {E, 0, E, 0},
          {E, -19, E, -19}, {-31, E, -31, E}, {-11, E, -11, E}, {E, -1, E, -1}};
}

inline Matrix eight_node_r_critical() {
  return {{0, E, 0, E, E, -16, -11, E}, {E, 0, E, 0, -28, E, E, -21},
          {0, E, 0, E, E, -16, -11, E}, {E, 0, E, 0, -28, E, E, -21}};
}

inline Matrix eight_node_c_compact() {
  return {{0, E}, {E, 0}, {0, E}, {E, 0}, {E, -19}, {-31, E}, {-11, E}, {E, -1}};
}

inline Matrix eight_node_r_compact() {
  return {{0, E, 0, E, E, -16, -11, E}, {E, 0, E, 0, -28, E, E, -21}};
}

inline constexpr std::size_t eight_node_rank = 2;

/// Parses one printed cell: "eps" or a decimal number.
inline Scalar parse_cell(const std::string& s) {
  if (s == "eps") return eps;
  return Scalar(std::strtod(s.c_str(), nullptr));
}

/// Half a unit in the last printed decimal place (at least one decimal).
inline double printed_tolerance(const std::string& s) {
  const auto dot = s.find('.');
  const std::size_t decimals = dot == std::string::npos ? 1 : std::max<std::size_t>(1, s.size() - dot - 1);
  double t = 0.5;
  for (std::size_t d = 0; d < decimals; ++d) t /= 10.0;
  return t;
}

// ---------------------------------------------------------------------------
// Counterexample families

struct NamedEntry {
  std::size_t row = 0;  // 1-based
  std::size_t col = 0;
  double product = 0;
  double csr = 0;
};

struct WordClass {
  std::string pattern;  // e.g. "(1)^{2t}2"
  std::size_t t_min = 0;
  std::function<Word(std::size_t)> build;
  std::vector<NamedEntry> witnesses;        // mismatches valid for every admissible t
  std::optional<Matrix> product_t10;        // printed product at t = 10
  std::optional<Matrix> csr_t10;            // printed CSR counterpart at t = 10
};

struct Family {
  std::string id;
  std::vector<Matrix> generators;
  std::vector<WordClass> classes;
  std::optional<std::size_t> claimed_cover_from;  // every length above this is claimed to fail
};

inline Word ones_then_two(std::size_t ones) { return Word::repeat(1, ones) + Word{{2}}; }

inline Family p1_six() {
  Family f;
  f.id = "P1_six";
  f.generators = {Matrix{{E, 0, -100, E, E, E},
                         {0, E, E, E, -100, E},
                         {E, E, E, -100, E, E},
                         {-100, E, E, E, E, E},
                         {E, E, E, E, E, -100},
                         {E, -100, E, E, E, E}},
                  Matrix{{E, 0, -100, E, E, E},
                         {0, E, E, E, -1, E},
                         {E, E, E, -100, E, E},
                         {-1, E, E, E, E, E},
                         {E, E, E, E, E, -100},
                         {E, -100, E, E, E, E}}};
  WordClass even{"(1)^{2t}2", 2, [](std::size_t t) { return ones_then_two(2 * t); }, {{6, 5, -401, -302}}, {}, {}};
  even.product_t10 = Matrix{{-201, 0, -100, -500, -301, -200}, {0, -300, -400, -200, -1, -500},
                            {-401, -200, -300, -700, -501, -400}, {-100, -400, -500, -300, -101, -600},
                            {-200, -500, -600, -400, -201, -700}, {-301, -100, -200, -600, -401, -300}};
  even.csr_t10 = Matrix{{-201, 0, -100, -401, -202, -200}, {0, -300, -400, -200, -1, -500},
                        {-401, -200, -300, -601, -402, -400}, {-100, -400, -500, -300, -101, -600},
                        {-200, -500, -600, -400, -201, -700}, {-301, -100, -200, -501, -302, -300}};
  WordClass odd{"(1)^{2t+1}2", 1, [](std::size_t t) { return ones_then_two(2 * t + 1); },
                {{2, 5, -301, -202}, {4, 5, -401, -302}}, {}, {}};
  odd.product_t10 = Matrix{{0, -300, -400, -200, -1, -500}, {-201, 0, -100, -500, -301, -200},
                           {-200, -500, -600, -400, -201, -700}, {-301, -100, -200, -600, -401, -300},
                           {-401, -200, -300, -700, -501, -400}, {-100, -400, -500, -300, -101, -600}};
  odd.csr_t10 = Matrix{{0, -300, -400, -200, -1, -500}, {-201, 0, -100, -401, -202, -200},
                       {-200, -500, -600, -400, -201, -700}, {-301, -100, -200, -501, -302, -300},
                       {-401, -200, -300, -601, -402, -400}, {-100, -400, -500, -300, -101, -600}};
  f.classes = {even, odd};
  f.claimed_cover_from = 29;
  return f;
}

inline Family p1_three() {
  Family f;
  f.id = "P1_three";
  f.generators = {Matrix{{E, 0, E}, {E, -100, 0}, {0, -100, -100}}, Matrix{{E, 0, E}, {E, -1, 0}, {0, -100, -1}}};
  WordClass m{"(1)^{3t+2}2", 0, [](std::size_t t) { return ones_then_two(3 * t + 2); }, {{1, 2, -100, -2}}, {}, {}};
  m.product_t10 = Matrix{{0, -100, -1}, {-100, 0, -100}, {-100, -1, 0}};
  m.csr_t10 = Matrix{{0, -2, -1}, {-100, 0, -100}, {-100, -1, 0}};
  WordClass n{"(1)^{3t+3}2", 0, [](std::size_t t) { return ones_then_two(3 * t + 3); }, {{3, 2, -100, -2}}, {}, {}};
  n.product_t10 = Matrix{{-100, 0, -100}, {-100, -1, 0}, {0, -100, -1}};
  n.csr_t10 = Matrix{{-100, 0, -100}, {-100, -1, 0}, {0, -2, -1}};
  WordClass p{"(1)^{3t+4}2", 0, [](std::size_t t) { return ones_then_two(3 * t + 4); }, {{2, 2, -100, -2}}, {}, {}};
  p.product_t10 = Matrix{{-100, -1, 0}, {0, -100, -1}, {-100, 0, -100}};
  p.csr_t10 = Matrix{{-100, -1, 0}, {0, -2, -1}, {-100, 0, -100}};
  f.classes = {m, n, p};
  return f;
}

inline Family p2_six() {
  Family f;
  f.id = "P2_six";
  f.generators = {Matrix{{E, 0, E, E, E, E},
                         {E, E, 0, E, E, E},
                         {E, E, E, 0, -100, E},
                         {0, E, E, E, E, E},
                         {E, E, E, E, E, -100},
                         {E, E, E, -100, E, E}},
                  Matrix{{E, 0, E, E, E, E},
                         {E, E, 0, E, E, E},
                         {E, E, E, 0, -1, E},
                         {0, E, E, E, E, E},
                         {E, E, E, E, E, -100},
                         {E, E, E, -1, E, E}}};
  WordClass l{"(1)^{4t}2", 2, [](std::size_t t) { return ones_then_two(4 * t); }, {{1, 5, -301, -202}}, {}, {}};
  l.product_t10 = Matrix{{E, 0, E, -201, -301, E},   {-300, E, 0, E, E, -401}, {E, -300, E, 0, -1, E},
                         {0, E, -300, E, E, -101},   {-500, E, -200, E, E, -601}, {E, -400, E, -100, -101, E}};
  l.csr_t10 = Matrix{{E, 0, E, -201, -202, E},   {-300, E, 0, E, E, -401}, {E, -300, E, 0, -1, E},
                     {0, E, -300, E, E, -101},   {-500, E, -200, E, E, -601}, {E, -400, E, -100, -101, E}};
  WordClass fcls{"(1)^{4t+1}2", 2, [](std::size_t t) { return ones_then_two(4 * t + 1); }, {{4, 5, -301, -202}}, {}, {}};
  fcls.product_t10 = Matrix{{-300, E, 0, E, E, -401}, {E, -300, E, 0, -1, E},      {0, E, -300, E, E, -101},
                            {E, 0, E, -201, -301, E}, {E, -500, E, -200, -201, E}, {-100, E, -400, E, E, -201}};
  fcls.csr_t10 = Matrix{{-300, E, 0, E, E, -401}, {E, -300, E, 0, -1, E},      {0, E, -300, E, E, -101},
                        {E, 0, E, -201, -202, E}, {E, -500, E, -200, -201, E}, {-100, E, -400, E, E, -201}};
  WordClass g{"(1)^{4t+2}2", 2, [](std::size_t t) { return ones_then_two(4 * t + 2); }, {}, {}, {}};
  WordClass h{"(1)^{4t+3}2", 2, [](std::size_t t) { return ones_then_two(4 * t + 3); }, {}, {}, {}};
  f.classes = {l, fcls, g, h};
  f.claimed_cover_from = 9;
  return f;
}

inline Family p3_four() {
  Family f;
  f.id = "P3_four";
  f.generators = {Matrix{{0, -100, E, E}, {E, 0, -100, E}, {E, E, 0, -100}, {-100, E, E, E}},
                  Matrix{{0, -1, E, E}, {E, 0, -1, E}, {E, E, 0, -100}, {-100, E, E, E}}};
  WordClass w{"(1)^{t}2", 2, [](std::size_t t) { return ones_then_two(t); }, {{1, 3, -101, -2}, {4, 3, -201, -102}}, {}, {}};
  w.product_t10 = Matrix{{0, -1, -101, -300}, {-300, 0, -1, -200}, {-200, -201, 0, -100}, {-100, -101, -201, -400}};
  w.csr_t10 = Matrix{{0, -1, -2, -201}, {-201, 0, -1, -101}, {-200, -201, 0, -100}, {-100, -101, -102, -301}};
  f.classes = {w};
  f.claimed_cover_from = 3;
  return f;
}

inline std::vector<std::string> family_ids() { return {"P1_six", "P1_three", "P2_six", "P3_four"}; }

inline Family build_family(const std::string& id) {
  if (id == "P1_six") return p1_six();
  if (id == "P1_three") return p1_three();
  if (id == "P2_six") return p2_six();
  if (id == "P3_four") return p3_four();
  throw Error("unknown family '" + id + "'");
}

}  // namespace mpcsr::reference
