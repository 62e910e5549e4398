#include "toblbox/strategies.hpp"

#include <string>

namespace tobl {

namespace {

void require_pair(const Scenario& scenario) {
  if (scenario.parties() != 2) {
    throw IncompatibleScenario("pair operation needs a two-party scenario, got " +
                               std::to_string(scenario.parties()) + " parties");
  }
}

// Writes `index` in a mixed-radix system whose digits all share one base,
// most significant digit first. Used for lexicographic strategy enumeration.
void unpack_big_endian(Integer index, int base, std::span<int> digits) {
  for (size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % base);
    index /= base;
  }
}

Integer pow_integer(int base, long long exponent) {
  Integer result = 1;
  for (long long i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace

Rational pair_prob(const PairTable& table, int y, int z, int b, int c) {
  require_pair(table.scenario);
  const std::vector<int> in{y, z};
  const std::vector<int> out{b, c};
  return table.prob(table.scenario.input_index(in), table.scenario.output_index(out));
}

Integer count_local_deterministic(const Scenario& scenario) {
  Integer count = 1;
  for (int p = 0; p < scenario.parties(); ++p) {
    count *= pow_integer(scenario.output_count(p), scenario.input_count(p));
  }
  return count;
}

std::vector<DeterministicStrategy> local_deterministic_at(const Scenario& scenario,
                                                          long long index) {
  if (index < 0 || Integer(index) >= count_local_deterministic(scenario)) {
    throw IndexOutOfRange("strategy index " + std::to_string(index) + " out of range");
  }
  // Peel off parties from the back: later parties hold less significant digits.
  std::vector<DeterministicStrategy> tuple(scenario.parties());
  Integer rest = index;
  for (int p = scenario.parties() - 1; p >= 0; --p) {
    DeterministicStrategy& s = tuple[p];
    s.inputs = scenario.input_count(p);
    s.outputs = scenario.output_count(p);
    s.assignment.resize(s.inputs);
    const Integer block = pow_integer(s.outputs, s.inputs);
    Integer local = rest % block;
    rest /= block;
    unpack_big_endian(local, s.outputs, s.assignment);
  }
  return tuple;
}

std::vector<std::vector<DeterministicStrategy>> enumerate_local_deterministic(
    const Scenario& scenario, long long cap) {
  const Integer count = count_local_deterministic(scenario);
  if (count > cap) {
    throw ScenarioTooLarge("deterministic strategy count " + count.str() + " exceeds cap " +
                           std::to_string(cap));
  }
  std::vector<std::vector<DeterministicStrategy>> all;
  const long long n = static_cast<long long>(count);
  all.reserve(n);
  for (long long i = 0; i < n; ++i) all.push_back(local_deterministic_at(scenario, i));
  return all;
}

Behavior product_behavior(const Scenario& scenario,
                          std::span<const DeterministicStrategy> strategies) {
  if (static_cast<int>(strategies.size()) != scenario.parties()) {
    throw IncompatibleScenario("expected one strategy per party");
  }
  for (int p = 0; p < scenario.parties(); ++p) {
    if (strategies[p].inputs != scenario.input_count(p) ||
        strategies[p].outputs != scenario.output_count(p)) {
      throw IncompatibleScenario("strategy for party " + std::to_string(p) +
                                 " does not match the scenario");
    }
  }
  RMat table = RMat::Zero(scenario.num_input_tuples(), scenario.num_output_tuples());
  const long long rows = scenario.num_input_tuples();
  for (long long x = 0; x < rows; ++x) {
    std::vector<int> in = scenario.input_tuple(static_cast<int>(x));
    std::vector<int> out(scenario.parties());
    for (int p = 0; p < scenario.parties(); ++p) out[p] = strategies[p](in[p]);
    table(x, scenario.output_index(out)) = 1;
  }
  return Behavior(scenario, std::move(table));
}

Integer count_oneway(const Scenario& pair_scenario, Direction direction) {
  require_pair(pair_scenario);
  const int sender = direction == Direction::Forward ? 0 : 1;
  const int receiver = 1 - sender;
  const long long pairs =
      static_cast<long long>(pair_scenario.input_count(0)) * pair_scenario.input_count(1);
  return pow_integer(pair_scenario.output_count(sender), pair_scenario.input_count(sender)) *
         pow_integer(pair_scenario.output_count(receiver), pairs);
}

OneWayPairStrategy oneway_at(const Scenario& pair_scenario, Direction direction, long long index) {
  require_pair(pair_scenario);
  if (index < 0 || Integer(index) >= count_oneway(pair_scenario, direction)) {
    throw IndexOutOfRange("strategy index " + std::to_string(index) + " out of range");
  }
  const int sender = direction == Direction::Forward ? 0 : 1;
  const int receiver = 1 - sender;
  const long long pairs =
      static_cast<long long>(pair_scenario.input_count(0)) * pair_scenario.input_count(1);

  OneWayPairStrategy s;
  s.direction = direction;
  s.sender.resize(pair_scenario.input_count(sender));
  s.receiver.resize(pairs);
  const Integer receiver_block = pow_integer(pair_scenario.output_count(receiver), pairs);
  Integer idx = index;
  unpack_big_endian(idx % receiver_block, pair_scenario.output_count(receiver), s.receiver);
  unpack_big_endian(idx / receiver_block, pair_scenario.output_count(sender), s.sender);
  return s;
}

std::vector<OneWayPairStrategy> enumerate_oneway(const Scenario& pair_scenario,
                                                 Direction direction, long long cap) {
  const Integer count = count_oneway(pair_scenario, direction);
  if (count > cap) {
    throw ScenarioTooLarge("one-way strategy count " + count.str() + " exceeds cap " +
                           std::to_string(cap));
  }
  std::vector<OneWayPairStrategy> all;
  const long long n = static_cast<long long>(count);
  all.reserve(n);
  for (long long i = 0; i < n; ++i) all.push_back(oneway_at(pair_scenario, direction, i));
  return all;
}

PairTable pair_table_of(const Scenario& pair_scenario, const OneWayPairStrategy& strategy) {
  require_pair(pair_scenario);
  const int sender = strategy.direction == Direction::Forward ? 0 : 1;
  const int receiver = 1 - sender;
  const int m0 = pair_scenario.input_count(0);
  const int m1 = pair_scenario.input_count(1);
  if (static_cast<int>(strategy.sender.size()) != pair_scenario.input_count(sender) ||
      static_cast<int>(strategy.receiver.size()) != m0 * m1) {
    throw IncompatibleScenario("strategy assignment sizes do not match the pair scenario");
  }

  RMat table = RMat::Zero(pair_scenario.num_input_tuples(), pair_scenario.num_output_tuples());
  for (int y = 0; y < m0; ++y) {
    for (int z = 0; z < m1; ++z) {
      const int sender_input = sender == 0 ? y : z;
      std::vector<int> out(2);
      out[sender] = strategy.sender[sender_input];
      out[receiver] = strategy.receiver[y * m1 + z];
      if (out[0] < 0 || out[0] >= pair_scenario.output_count(0) || out[1] < 0 ||
          out[1] >= pair_scenario.output_count(1)) {
        throw IncompatibleScenario("strategy output out of range for the pair scenario");
      }
      const std::vector<int> in{y, z};
      table(pair_scenario.input_index(in), pair_scenario.output_index(out)) = 1;
    }
  }
  return Behavior(pair_scenario, std::move(table));
}

bool validate_direction(const PairTable& table, Direction direction) {
  require_pair(table.scenario);
  const int sender = direction == Direction::Forward ? 0 : 1;
  const int receiver = 1 - sender;
  const std::vector<int> kept{sender};
  for (int xs = 0; xs < table.scenario.input_count(sender); ++xs) {
    const std::vector<int> kept_inputs{xs};
    RVec reference;
    for (int xr = 0; xr < table.scenario.input_count(receiver); ++xr) {
      const std::vector<int> dropped_inputs{xr};
      RVec m = marginal(table, kept, kept_inputs, dropped_inputs);
      if (xr == 0) {
        reference = std::move(m);
      } else {
        for (Eigen::Index i = 0; i < reference.size(); ++i) {
          if (reference[i] != m[i]) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace tobl
