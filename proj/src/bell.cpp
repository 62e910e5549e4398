#include "toblbox/bell.hpp"

#include <vector>

#include "toblbox/strategies.hpp"

namespace tobl {

BellFunctional gyni() {
  BellFunctional f;
  f.scenario = Scenario({2, 2, 2}, {2, 2, 2});
  // Inputs of even parity; each party guesses the next party's input.
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      const int x3 = x1 ^ x2;
      const std::vector<int> in{x1, x2, x3};
      const std::vector<int> out{x2, x3, x1};
      f.coefficients[{f.scenario.input_index(in), f.scenario.output_index(out)}] = 1;
    }
  }
  f.declared_bound = BellFunctional::Bound{1, "local and quantum"};
  return f;
}

BellFunctional chsh() {
  BellFunctional f;
  f.scenario = Scenario({2, 2}, {2, 2});
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const std::vector<int> in{x, y};
          const std::vector<int> out{a, b};
          const int sign = (a ^ b ^ (x & y)) ? -1 : 1;
          f.coefficients[{f.scenario.input_index(in), f.scenario.output_index(out)}] = sign;
        }
      }
    }
  }
  Rational best;
  bool first = true;
  for (const auto& tuple : enumerate_local_deterministic(f.scenario)) {
    Rational v = evaluate(f, product_behavior(f.scenario, tuple));
    if (first || v > best) best = v;
    first = false;
  }
  f.declared_bound = BellFunctional::Bound{best, "local"};
  return f;
}

Rational evaluate(const BellFunctional& functional, const Behavior& behavior) {
  if (functional.scenario != behavior.scenario) {
    throw ScenarioMismatch("functional and behavior scenarios differ");
  }
  Rational total = 0;
  for (const auto& [key, coeff] : functional.coefficients) {
    total += coeff * behavior.prob(key.first, key.second);
  }
  return total;
}

}  // namespace tobl
