#include <doctest.h>

#include <random>
#include <vector>

#include "test_support.hpp"
#include "toblbox/bell.hpp"
#include "toblbox/refdata.hpp"
#include "toblbox/strategies.hpp"

using namespace tobl;
using tobl::testing::random_local_behavior;
using tobl::testing::random_weights;

namespace {
const Scenario kTri({2, 2, 2}, {2, 2, 2});
const Scenario kPair({2, 2}, {2, 2});

Rational q(const char* text) { return parse_rational(text); }
}  // namespace

TEST_CASE("guess-your-neighbor functional structure") {
  BellFunctional f = gyni();
  CHECK(f.scenario == kTri);
  CHECK(f.coefficients.size() == 4);
  for (const auto& [key, coeff] : f.coefficients) {
    CHECK(coeff == 1);
    std::vector<int> in = f.scenario.input_tuple(key.first);
    std::vector<int> out = f.scenario.output_tuple(key.second);
    CHECK((in[0] ^ in[1] ^ in[2]) == 0);
    CHECK(out[0] == in[1]);
    CHECK(out[1] == in[2]);
    CHECK(out[2] == in[0]);
  }
  REQUIRE(f.declared_bound.has_value());
  CHECK(f.declared_bound->value == 1);
}

TEST_CASE("functional values on reference behaviors") {
  BellFunctional f = gyni();
  CHECK(evaluate(f, gyni_tobl_maximizer()) == q("7/6"));
  CHECK(evaluate(f, uniform_box(kTri)) == q("1/2"));
  std::vector<DeterministicStrategy> zeros(3, DeterministicStrategy{2, 2, {0, 0}});
  CHECK(evaluate(f, product_behavior(kTri, zeros)) == 1);
}

TEST_CASE("deterministic points never beat the declared local bound") {
  BellFunctional f = gyni();
  Rational best = 0;
  for (const auto& tuple : enumerate_local_deterministic(kTri)) {
    Rational v = evaluate(f, product_behavior(kTri, tuple));
    CHECK(v <= 1);
    if (v > best) best = v;
  }
  CHECK(best == 1);
}

TEST_CASE("chsh structure and values") {
  BellFunctional f = chsh();
  CHECK(f.scenario == kPair);
  CHECK(f.coefficients.size() == 16);
  REQUIRE(f.declared_bound.has_value());
  CHECK(f.declared_bound->value == 2);
  CHECK(f.declared_bound->set_label == "local");

  std::vector<DeterministicStrategy> zeros(2, DeterministicStrategy{2, 2, {0, 0}});
  CHECK(evaluate(f, product_behavior(kPair, zeros)) == 2);
  CHECK(evaluate(f, uniform_box(kPair)) == 0);
}

TEST_CASE("zero functional evaluates to zero") {
  BellFunctional zero;
  zero.scenario = kTri;
  CHECK(evaluate(zero, gyni_tobl_maximizer()) == 0);
  CHECK(evaluate(zero, uniform_box(kTri)) == 0);
}

TEST_CASE("evaluate rejects mismatched scenarios") {
  CHECK_THROWS_AS(evaluate(gyni(), uniform_box(kPair)), ScenarioMismatch);
  CHECK_THROWS_AS(evaluate(chsh(), uniform_box(kTri)), ScenarioMismatch);
}

TEST_CASE("cyclic relabeling fixes the guess-your-neighbor functional") {
  BellFunctional f = gyni();
  std::mt19937 rng(11);
  std::vector<Behavior> probes{gyni_tobl_maximizer(), uniform_box(kTri)};
  for (int t = 0; t < 6; ++t) probes.push_back(random_local_behavior(rng, kTri, 5));
  const std::vector<std::vector<int>> cycles{{1, 2, 0}, {2, 0, 1}};
  for (const Behavior& b : probes) {
    for (const auto& perm : cycles) {
      CHECK(evaluate(f, permute_parties(b, perm)) == evaluate(f, b));
    }
  }
}

TEST_CASE("evaluation is linear under mixing") {
  std::mt19937 rng(13);
  BellFunctional f = gyni();
  for (int t = 0; t < 20; ++t) {
    Behavior b1 = random_local_behavior(rng, kTri, 4);
    Behavior b2 = random_local_behavior(rng, kTri, 4);
    std::vector<Rational> w = random_weights(rng, 2);
    const std::vector<Behavior> both{b1, b2};
    CHECK(evaluate(f, mix(both, w)) == w[0] * evaluate(f, b1) + w[1] * evaluate(f, b2));
  }
}
