#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toblbox/behavior.hpp"
#include "toblbox/bell.hpp"
#include "toblbox/strategies.hpp"

namespace tobl {

// One way of singling out a party against the ordered remaining pair. The
// three tripartite cases are cyclic: 1|23, 2|31, 3|12 (1-based labels).
struct Bipartition {
  int solo;
  int pair_first;
  int pair_second;
};

inline constexpr std::array<Bipartition, 3> kBipartitions{
    Bipartition{0, 1, 2}, Bipartition{1, 2, 0}, Bipartition{2, 0, 1}};

std::string bipartition_label(int index);          // "1|23", "2|31", "3|12"
int bipartition_from_label(const std::string& s);  // inverse; ParseError

/// Scenario of the ordered pair (pair_first, pair_second) of a bipartition.
Scenario pair_scenario(const Scenario& scenario, const Bipartition& bipartition);

// One λ of a time-ordered bi-local decomposition: the weight and the solo
// party's assignment are shared between the two signaling directions.
struct ToblTerm {
  Rational weight;
  DeterministicStrategy solo;
  OneWayPairStrategy forward;   // pair_first's input reaches pair_second
  OneWayPairStrategy backward;  // pair_second's input reaches pair_first
};

struct ToblDecomposition {
  std::array<std::vector<ToblTerm>, 3> terms;  // indexed like kBipartitions
};

struct LocalModel {
  struct Term {
    Rational weight;
    std::vector<DeterministicStrategy> strategies;  // one per party
  };
  std::vector<Term> terms;
};

/// Behavior reconstructed by a local model on the given scenario.
Behavior local_model_behavior(const Scenario& scenario, const LocalModel& model);

/// Behavior reconstructed from one bipartition's terms using the chosen
/// signaling direction's pair strategies.
Behavior tobl_reconstruction(const Scenario& scenario, const ToblDecomposition& decomposition,
                             int bipartition, Direction direction);

// A linear functional separating a behavior from a convex set: its value on
// the behavior strictly exceeds its maximum over the set's generating columns.
struct SeparatingFunctional {
  BellFunctional functional;
  Rational bound;
};

struct ToblFailure {
  int bipartition;
  SeparatingFunctional certificate;
};

using LocalResult = std::variant<LocalModel, SeparatingFunctional>;
using ToblResult = std::variant<ToblDecomposition, ToblFailure>;

/// Exact local-polytope membership by LP over the deterministic points.
/// ScenarioTooLarge when the point count exceeds cap.
LocalResult is_local(const Behavior& behavior, long long cap = 1'000'000);

/// Exact TOBL membership: one feasibility LP per bipartition over
/// (solo, forward, backward) strategy triples, both directional
/// reconstructions tied to the behavior. NotTripartite for n ≠ 3.
ToblResult is_tobl(const Behavior& behavior, long long cap = 1'000'000);

// Builds the three bipartition LPs of one scenario once and keeps their
// scaled solvers; a campaign testing many behaviors of the same scenario
// should hold one of these instead of calling is_tobl in a loop.
class ToblChecker {
 public:
  explicit ToblChecker(Scenario scenario, long long cap = 1'000'000);
  ~ToblChecker();
  ToblChecker(ToblChecker&&) noexcept;
  ToblChecker& operator=(ToblChecker&&) noexcept;

  const Scenario& scenario() const;

  /// Same contract as is_tobl; IncompatibleScenario if the behavior lives on
  /// a different scenario than the checker.
  ToblResult check(const Behavior& behavior);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Exact check of one bipartition's terms: weights ≥ 0 summing to 1,
/// strategies consistent with their scenarios, and both directional
/// reconstructions equal to the behavior.
bool verify_tobl_bipartition(const Behavior& behavior, const ToblDecomposition& decomposition,
                             int bipartition);

/// verify_tobl_bipartition on all three bipartitions.
bool verify_tobl_decomposition(const Behavior& behavior, const ToblDecomposition& decomposition);

enum class SetKind { Local, Tobl, NoSignaling };

struct MaximizeResult {
  Rational value;
  Behavior optimizer;
  std::optional<LocalModel> local_model;            // SetKind::Local
  std::optional<ToblDecomposition> decomposition;   // SetKind::Tobl
};

/// Exact maximum of a functional over the chosen set. With symmetric=true
/// (Tobl only, cyclically invariant functionals) the LP is restricted to
/// cyclic-invariant behaviors; the optimum provably matches the full LP.
MaximizeResult maximize_bell(const BellFunctional& functional, SetKind set,
                             bool symmetric = false, long long cap = 1'000'000);

/// Conditions one bipartition's terms on the pair's sender observing
/// sel_outcome at sel_input. The surviving terms, reweighted by the selected
/// outcome's probability, form a product model of the two remaining parties
/// (solo party and the pair's receiver, in ascending party order).
LocalModel condition_on_sender(const Scenario& scenario, const ToblDecomposition& decomposition,
                               int bipartition, Direction direction, int sel_input,
                               int sel_outcome);

}  // namespace tobl
