#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "toblbox/behavior.hpp"
#include "toblbox/rational.hpp"
#include "toblbox/scenario.hpp"

namespace tobl {

// Linear functional B(P) = Σ coeff(x,a) · P(a|x), sparse over flat indices.
struct BellFunctional {
  struct Bound {
    Rational value;
    std::string set_label;
  };

  Scenario scenario;
  std::map<std::pair<int, int>, Rational> coefficients;  // (input idx, output idx) → coeff
  std::optional<Bound> declared_bound;  // advisory; asserted values are recomputed
};

/// Guess-your-neighbor's-input functional on (3;2,2,2;2,2,2): unit weight on
/// the four events where every party outputs the next party's input, over the
/// inputs of even parity. declared_bound 1 ("local and quantum").
BellFunctional gyni();

/// CHSH in probability form, Σ (−1)^{a⊕b⊕xy} P(ab|xy); declared_bound is
/// brute-forced over the 16 deterministic bipartite points on construction.
BellFunctional chsh();

Rational evaluate(const BellFunctional& functional, const Behavior& behavior);

}  // namespace tobl
