#pragma once

#include <span>
#include <vector>

#include "toblbox/behavior.hpp"
#include "toblbox/rational.hpp"
#include "toblbox/scenario.hpp"

namespace tobl {

// One party's deterministic response function: input x ↦ assignment[x].
struct DeterministicStrategy {
  int inputs = 0;
  int outputs = 0;
  std::vector<int> assignment;  // size inputs, values in [0, outputs)

  int operator()(int input) const { return assignment[input]; }
  bool operator==(const DeterministicStrategy& other) const = default;
};

// A deterministic bipartite strategy that signals in at most one direction.
// The pair scenario orders the parties (first, second); Forward means the
// first party's input is visible to the second party's response function,
// Backward the reverse. The receiver's table is indexed first-party-major:
// receiver[y * m_second + z] for inputs (y, z).
enum class Direction { Forward, Backward };

struct OneWayPairStrategy {
  Direction direction = Direction::Forward;
  std::vector<int> sender;    // indexed by the sender's own input
  std::vector<int> receiver;  // indexed by the full input pair (y, z)

  bool operator==(const OneWayPairStrategy& other) const = default;
};

// A possibly-signaling bipartite conditional distribution is just a
// two-party Behavior; this alias marks the places where signaling is allowed.
using PairTable = Behavior;

Rational pair_prob(const PairTable& table, int y, int z, int b, int c);

/// Number of deterministic product strategies, Π_i outputs_i^inputs_i.
Integer count_local_deterministic(const Scenario& scenario);

/// The index-th product strategy in lexicographic order over the concatenated
/// assignment vectors (party 0's assignments are the most significant digits;
/// index 0 is all-zero outputs).
std::vector<DeterministicStrategy> local_deterministic_at(const Scenario& scenario,
                                                          long long index);

/// All product strategies, in the order of local_deterministic_at.
/// ScenarioTooLarge if the count exceeds cap.
std::vector<std::vector<DeterministicStrategy>> enumerate_local_deterministic(
    const Scenario& scenario, long long cap = 1'000'000);

/// The deterministic behavior realized by one response function per party.
Behavior product_behavior(const Scenario& scenario,
                          std::span<const DeterministicStrategy> strategies);

/// Number of one-way strategies for a two-party scenario and direction.
Integer count_oneway(const Scenario& pair_scenario, Direction direction);

/// The index-th one-way strategy, lexicographic with the sender's assignment
/// vector more significant than the receiver's.
OneWayPairStrategy oneway_at(const Scenario& pair_scenario, Direction direction, long long index);

std::vector<OneWayPairStrategy> enumerate_oneway(const Scenario& pair_scenario,
                                                 Direction direction,
                                                 long long cap = 1'000'000);

/// The deterministic pair table realized by a one-way strategy.
PairTable pair_table_of(const Scenario& pair_scenario, const OneWayPairStrategy& strategy);

/// Exact check that the sender-side marginal is independent of the receiver's
/// input (Forward: first party's marginal free of z; Backward: second party's
/// marginal free of y).
bool validate_direction(const PairTable& table, Direction direction);

}  // namespace tobl
