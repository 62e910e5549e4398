#include <doctest.h>

#include <array>
#include <random>
#include <variant>
#include <vector>

#include "test_support.hpp"
#include "toblbox/bell.hpp"
#include "toblbox/membership.hpp"
#include "toblbox/refdata.hpp"
#include "toblbox/strategies.hpp"

using namespace tobl;
using tobl::testing::random_local_behavior;
using tobl::testing::random_weights;

namespace {

const Scenario kTri({2, 2, 2}, {2, 2, 2});
const Scenario kPair({2, 2}, {2, 2});

Rational q(const char* text) { return parse_rational(text); }

// b ⊕ c = y·z box: the standard bipartite no-signaling point that is
// maximally far from the local set.
Behavior nonlocal_pair() {
  RMat table = RMat::Zero(4, 4);
  for (int y = 0; y < 2; ++y) {
    for (int z = 0; z < 2; ++z) {
      for (int b = 0; b < 2; ++b) {
        const int c = b ^ (y & z);
        const std::vector<int> in{y, z};
        const std::vector<int> out{b, c};
        table(kPair.input_index(in), kPair.output_index(out)) = q("1/2");
      }
    }
  }
  return Behavior(kPair, std::move(table));
}

// Convex combination of the reference point, its cyclic relabelings, and
// local noise — everything the bi-local set is closed under.
Behavior random_tobl_behavior(std::mt19937& rng, int local_terms) {
  const Behavior base = gyni_tobl_maximizer();
  std::vector<Behavior> parts;
  parts.push_back(base);
  parts.push_back(permute_parties(base, std::array<int, 3>{1, 2, 0}));
  parts.push_back(permute_parties(base, std::array<int, 3>{2, 0, 1}));
  for (int t = 0; t < local_terms; ++t) {
    parts.push_back(random_local_behavior(rng, kTri, 3));
  }
  return mix(parts, random_weights(rng, static_cast<int>(parts.size())));
}

Rational deterministic_maximum(const BellFunctional& functional) {
  const auto points = enumerate_local_deterministic(functional.scenario);
  Rational best;
  bool first = true;
  for (const auto& strategies : points) {
    const Rational v = evaluate(functional, product_behavior(functional.scenario, strategies));
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  return best;
}

// Soundness of a separation, re-derived from scratch: the functional beats
// its own deterministic maximum on the behavior.
void check_separation(const SeparatingFunctional& sep, const Behavior& behavior) {
  CHECK(evaluate(sep.functional, behavior) > sep.bound);
  CHECK(deterministic_maximum(sep.functional) <= sep.bound);
}

}  // namespace

TEST_CASE("the maximally mixed box is local and its model reconstructs it") {
  const Behavior u = uniform_box(kTri);
  const LocalResult r = is_local(u);
  REQUIRE(std::holds_alternative<LocalModel>(r));
  const LocalModel& model = std::get<LocalModel>(r);
  Rational total = 0;
  for (const auto& term : model.terms) {
    CHECK(term.weight > 0);
    total += term.weight;
  }
  CHECK(total == 1);
  CHECK(local_model_behavior(kTri, model) == u);
}

TEST_CASE("the reference point is separated from the local set") {
  const Behavior w = gyni_tobl_maximizer();
  const LocalResult r = is_local(w);
  REQUIRE(std::holds_alternative<SeparatingFunctional>(r));
  check_separation(std::get<SeparatingFunctional>(r), w);
}

TEST_CASE("the two-party nonlocal box is separated from the local set") {
  const Behavior box = nonlocal_pair();
  CHECK(is_nonsignaling(box));
  CHECK(evaluate(chsh(), box) == 4);

  const LocalResult r = is_local(box);
  REQUIRE(std::holds_alternative<SeparatingFunctional>(r));
  check_separation(std::get<SeparatingFunctional>(r), box);
}

TEST_CASE("the reference point is time-ordered bi-local with a verifying decomposition") {
  const Behavior w = gyni_tobl_maximizer();
  const ToblResult r = is_tobl(w);
  REQUIRE(std::holds_alternative<ToblDecomposition>(r));
  const ToblDecomposition& dec = std::get<ToblDecomposition>(r);
  CHECK(verify_tobl_decomposition(w, dec));
  for (int bp = 0; bp < 3; ++bp) {
    Rational total = 0;
    for (const auto& term : dec.terms[bp]) {
      CHECK(term.weight > 0);
      total += term.weight;
    }
    CHECK(total == 1);
    CHECK(tobl_reconstruction(kTri, dec, bp, Direction::Forward) == w);
    CHECK(tobl_reconstruction(kTri, dec, bp, Direction::Backward) == w);
  }
}

TEST_CASE("a checker serves many behaviors of one scenario and rejects others") {
  ToblChecker checker(kTri);
  CHECK(checker.scenario() == kTri);
  CHECK(std::holds_alternative<ToblDecomposition>(checker.check(gyni_tobl_maximizer())));
  CHECK(std::holds_alternative<ToblDecomposition>(checker.check(uniform_box(kTri))));
  CHECK_THROWS_AS(checker.check(uniform_box(kPair)), IncompatibleScenario);
  CHECK_THROWS_AS(ToblChecker{kPair}, NotTripartite);
}

TEST_CASE("local mixtures pass every membership of the inclusion chain") {
  std::mt19937 rng(911);
  ToblChecker checker(kTri);
  for (int trial = 0; trial < 4; ++trial) {
    const Behavior b = random_local_behavior(rng, kTri, 4);
    CAPTURE(trial);
    const LocalResult lr = is_local(b);
    REQUIRE(std::holds_alternative<LocalModel>(lr));
    CHECK(local_model_behavior(kTri, std::get<LocalModel>(lr)) == b);
    CHECK(std::holds_alternative<ToblDecomposition>(checker.check(b)));
    CHECK(is_nonsignaling(b));
  }
}

TEST_CASE("bi-local mixtures stay inside the bi-local and no-signaling sets") {
  std::mt19937 rng(912);
  ToblChecker checker(kTri);
  for (int trial = 0; trial < 3; ++trial) {
    const Behavior b = random_tobl_behavior(rng, 2);
    CAPTURE(trial);
    const ToblResult tr = checker.check(b);
    REQUIRE(std::holds_alternative<ToblDecomposition>(tr));
    CHECK(verify_tobl_decomposition(b, std::get<ToblDecomposition>(tr)));
    CHECK(is_nonsignaling(b));
  }
}

TEST_CASE("the guessing functional's local maximum matches brute force") {
  const BellFunctional g = gyni();
  const MaximizeResult r = maximize_bell(g, SetKind::Local);
  CHECK(r.value == 1);
  CHECK(deterministic_maximum(g) == 1);
  CHECK(evaluate(g, r.optimizer) == 1);
  CHECK(validate(r.optimizer).ok());
  REQUIRE(r.local_model.has_value());
  CHECK(local_model_behavior(kTri, *r.local_model) == r.optimizer);
}

TEST_CASE("the guessing functional's no-signaling maximum exceeds the bi-local one") {
  const BellFunctional g = gyni();
  const MaximizeResult r = maximize_bell(g, SetKind::NoSignaling);
  CHECK(r.value == q("4/3"));
  CHECK(r.value > q("7/6"));
  CHECK(evaluate(g, r.optimizer) == r.value);
  CHECK(validate(r.optimizer).ok());
  CHECK(is_nonsignaling(r.optimizer));

  const ToblResult tr = is_tobl(r.optimizer);
  REQUIRE(std::holds_alternative<ToblFailure>(tr));
  const ToblFailure& fail = std::get<ToblFailure>(tr);
  CHECK(fail.bipartition >= 0);
  CHECK(fail.bipartition < 3);
  CHECK(evaluate(fail.certificate.functional, r.optimizer) > fail.certificate.bound);
}

TEST_CASE("the two-party functional's maxima over both tractable sets") {
  const BellFunctional c = chsh();
  REQUIRE(c.declared_bound.has_value());
  CHECK(c.declared_bound->value == 2);

  const MaximizeResult local = maximize_bell(c, SetKind::Local);
  CHECK(local.value == 2);
  CHECK(deterministic_maximum(c) == 2);

  const MaximizeResult ns = maximize_bell(c, SetKind::NoSignaling);
  CHECK(ns.value == 4);
  CHECK(is_nonsignaling(ns.optimizer));
  CHECK(evaluate(c, ns.optimizer) == 4);
}

TEST_CASE("the symmetric reduction reaches the known bi-local maximum") {
  const MaximizeResult r = maximize_bell(gyni(), SetKind::Tobl, true);
  CHECK(r.value == q("7/6"));
  CHECK(evaluate(gyni(), r.optimizer) == r.value);
  CHECK(validate(r.optimizer).ok());
  REQUIRE(r.decomposition.has_value());
  CHECK(verify_tobl_decomposition(r.optimizer, *r.decomposition));
}

TEST_CASE("the symmetric switch rejects what it cannot speak for") {
  CHECK_THROWS_AS(maximize_bell(gyni(), SetKind::Local, true), IncompatibleScenario);
  CHECK_THROWS_AS(maximize_bell(gyni(), SetKind::NoSignaling, true), IncompatibleScenario);

  // weight on input (1,0,0) only; cycling parties moves it to (0,1,0)
  BellFunctional lopsided;
  lopsided.scenario = kTri;
  lopsided.coefficients[{1, 0}] = 1;
  CHECK_THROWS_AS(maximize_bell(lopsided, SetKind::Tobl, true), IncompatibleScenario);

  CHECK_THROWS_AS(maximize_bell(chsh(), SetKind::Tobl), NotTripartite);
  CHECK_THROWS_AS(maximize_bell(chsh(), SetKind::Tobl, true), NotTripartite);
}

TEST_CASE("conditioning the pair's sender leaves a model of the other two parties") {
  const Behavior w = gyni_tobl_maximizer();
  const ToblDecomposition dec = gyni_tobl_maximizer_decomposition();
  REQUIRE(verify_tobl_decomposition(w, dec));
  const Scenario leftover({2, 2}, {2, 2});

  // backward direction: the pair's second party is the sender, so
  // conditioning on it leaves the solo party and the pair's first party
  for (int sel_input = 0; sel_input < 2; ++sel_input) {
    for (int sel_outcome = 0; sel_outcome < 2; ++sel_outcome) {
      CAPTURE(sel_input);
      CAPTURE(sel_outcome);
      const LocalModel model =
          condition_on_sender(kTri, dec, 0, Direction::Backward, sel_input, sel_outcome);
      Rational total = 0;
      for (const auto& term : model.terms) total += term.weight;
      CHECK(total == 1);
      const Behavior expected = postselect(w, 2, sel_input, sel_outcome);
      CHECK(local_model_behavior(leftover, model) == expected);
    }
  }

  // forward direction of bipartition 2|31: sender is party 0, leaving
  // parties 1 and 2
  const LocalModel fwd = condition_on_sender(kTri, dec, 1, Direction::Forward, 1, 0);
  CHECK(local_model_behavior(leftover, fwd) == postselect(w, 0, 1, 0));
}
