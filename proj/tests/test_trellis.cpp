#include <catch_amalgamated.hpp>

#include "mpcsr/reference.hpp"
#include "mpcsr/trellis.hpp"
#include "oracles.hpp"

using namespace mpcsr;
namespace ref = mpcsr::reference;
using oracle::Rng;

TEST_CASE("word parsing", "[trellis]") {
  CHECK(Word::parse("5,5,1").letters == std::vector<std::size_t>{5, 5, 1});
  CHECK(Word::parse(" 2 , 3").letters == std::vector<std::size_t>{2, 3});
  CHECK_THROWS_AS(Word::parse(""), Error);
  CHECK_THROWS_AS(Word::parse("1,,2"), Error);
  CHECK_THROWS_AS(Word::parse("0"), Error);
  CHECK_THROWS_AS(Word::parse("-1"), Error);
  CHECK_THROWS_AS(Word::parse("1,x"), Error);
  CHECK_THROWS_AS(Word::parse("1.5"), Error);
  CHECK(ref::eight_node_word().length() == 24);
  CHECK((Word::repeat(1, 3) + Word{{2}}).to_string() == "1,1,1,2");
  CHECK((Word{{1, 2}} * 2).to_string() == "1,2,1,2");
  CHECK_THROWS_AS(Word{{3}}.validate(2), Error);
}

TEST_CASE("products of reference words", "[trellis]") {
  const auto e = build_ensemble(ref::eight_node_generators());
  const Matrix g = gamma_product(e, ref::eight_node_word());
  CHECK(g == ref::eight_node_product());
  CHECK(g(6, 0) == Scalar(-11));

  const auto f = ref::build_family("P3_four");
  const auto e3 = build_ensemble(f.generators);
  CHECK(gamma_product(e3, Word{{2}}) == f.generators[1]);

  const auto u = ref::build_family("P1_six");
  const auto e1 = build_ensemble(u.generators);
  CHECK(gamma_product(e1, Word::repeat(1, 20) + Word{{2}})(5, 4) == Scalar(-401));
  CHECK_THROWS_AS(gamma_product(e1, Word{{3}}), Error);
}

TEST_CASE("long power equals layered relaxation", "[trellis]") {
  const auto e = build_ensemble(ref::eight_node_generators());
  const Matrix p = power(e.visualised[0], 24);
  std::vector<const Matrix*> stages(24, &e.visualised[0]);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(p(i, j) == oracle::trellis_optimum(stages, i, j));
}

TEST_CASE("first-passage weights on the eight-node word", "[trellis]") {
  const auto e = build_ensemble(ref::eight_node_generators());
  const auto tw = first_passage_weights(e, ref::eight_node_word());
  const auto w = ref::eight_node_w();
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(tw.w_star[i] == Scalar(0));
    CHECK(tw.w_length[i] == std::optional<std::size_t>(0));
  }
  for (std::size_t i = 0; i < 8; ++i) CHECK(tw.w_star[i] >= w[i]);
  CHECK(tw.w_star[6] == Scalar(-11));
  CHECK(tw.v_star[0] == Scalar(0));
  // Under the ambient profile the initial weight is the best entry into a critical column.
  for (std::size_t i = 0; i < 8; ++i) {
    Scalar best = eps;
    for (std::size_t c = 0; c < 4; ++c) best += tw.product(i, c);
    CHECK(tw.w_star[i] == best);
  }
}

TEST_CASE("walk length bounds on the eight-node word", "[trellis]") {
  const auto e = build_ensemble(ref::eight_node_generators());
  const auto b = optimal_walk_lengths(e, ref::eight_node_word());
  CHECK(b.holds());
  // Node 6: (w* - alpha)/lambda* + (n - q) with lambda* = -4.5.
  REQUIRE(b.initial_bound[5].has_value());
  const auto tw = first_passage_weights(e, ref::eight_node_word());
  CHECK(*b.initial_bound[5] == Catch::Approx((tw.w_star[5].value() + 17.0) / -4.5 + 4.0));
  for (std::size_t i = 0; i < 4; ++i) CHECK(*b.initial_bound[i] == Catch::Approx(4.0));
  for (const auto& t : b.initial_threshold())
    if (t) CHECK(*t <= 24.0);
}

TEST_CASE("walk length bounds reject a nonnegative cycle mean", "[trellis]") {
  // Cannot arise from build_ensemble; set by hand to reach the guard.
  auto e = build_ensemble({Matrix{{0, -1}, {-1, -5}}});
  e.lambda_star = 0.0;
  CHECK_THROWS_AS(optimal_walk_lengths(e, Word{{1}}), AssumptionError);
}

TEST_CASE("walk length bound without non-critical cycles is n - q", "[trellis]") {
  const auto e = build_ensemble({Matrix{{0, -2}, {-3, eps}}});
  REQUIRE_FALSE(e.lambda_star.has_value());
  const auto b = optimal_walk_lengths(e, Word{{1, 1, 1}});
  CHECK(*b.initial_bound[1] == 1.0);
  CHECK(*b.final_bound[1] == 1.0);
  CHECK(b.holds());
}

TEST_CASE("products equal trellis walk enumeration", "[trellis][property]") {
  Rng rng(8);
  for (int c = 0; c < 200; ++c) {
    const auto inst = oracle::general_ensemble(rng, 5);
    const auto e = build_ensemble(inst.generators);
    const std::size_t k = rng.index(1, 6);
    const auto letters = oracle::random_word(rng, e.size(), k);
    CHECK(gamma_product(e, Word{letters}) == oracle::word_product_by_walks(e.visualised, letters));
  }
}

TEST_CASE("first-passage DP equals exhaustive enumeration", "[trellis][property]") {
  Rng rng(9);
  for (int c = 0; c < 200; ++c) {
    const auto inst = c % 2 ? oracle::ambient_ensemble(rng, 5) : oracle::general_ensemble(rng, 5);
    const auto e = build_ensemble(inst.generators);
    const std::size_t k = rng.index(1, 7);
    const auto letters = oracle::random_word(rng, e.size(), k);
    const auto tw = first_passage_weights(e, Word{letters});
    std::vector<bool> crit(e.n(), false);
    for (std::size_t v : e.critical.critical_nodes) crit[v] = true;
    for (std::size_t i = 0; i < e.n(); ++i) {
      const auto fwd = oracle::first_passage_forward(e.visualised, letters, crit, i);
      const auto bwd = oracle::first_passage_backward(e.visualised, letters, crit, i);
      CHECK(tw.w_star[i] == fwd.weight);
      CHECK(tw.v_star[i] == bwd.weight);
      if (fwd.weight.is_finite()) CHECK(tw.w_length[i] == std::optional<std::size_t>(fwd.length));
      if (bwd.weight.is_finite()) CHECK(tw.v_length[i] == std::optional<std::size_t>(bwd.length));
    }
  }
}

TEST_CASE("first-passage weights never decrease when the word grows", "[trellis][property]") {
  Rng rng(10);
  for (int c = 0; c < 200; ++c) {
    const auto inst = oracle::general_ensemble(rng);
    const auto e = build_ensemble(inst.generators);
    auto letters = oracle::random_word(rng, e.size(), rng.index(1, 10));
    const auto before = first_passage_weights(e, Word{letters});
    letters.push_back(rng.index(1, e.size()));
    const auto after = first_passage_weights(e, Word{letters});
    for (std::size_t i = 0; i < e.n(); ++i) CHECK(after.w_star[i] >= before.w_star[i]);
  }
}

TEST_CASE("realized first-passage lengths respect their bounds", "[trellis][property]") {
  Rng rng(12);
  for (int c = 0; c < 300; ++c) {
    const auto inst = c % 2 ? oracle::ambient_ensemble(rng) : oracle::general_ensemble(rng);
    const auto e = build_ensemble(inst.generators);
    const auto letters = oracle::random_word(rng, e.size(), rng.index(1, 40));
    const auto b = optimal_walk_lengths(e, Word{letters});
    INFO("case " << c);
    CHECK(b.holds());
  }
}
