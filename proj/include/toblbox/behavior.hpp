#pragma once

#include <span>
#include <vector>

#include "toblbox/rational.hpp"
#include "toblbox/scenario.hpp"

namespace tobl {

// Conditional probability table P(a_1..a_n | x_1..x_n) as a dense matrix of
// exact rationals, rows indexed by input tuples and columns by output tuples.
struct Behavior {
  Scenario scenario;
  RMat table;

  Behavior() = default;
  Behavior(Scenario s, RMat t);

  const Rational& prob(int input_index, int output_index) const {
    return table(input_index, output_index);
  }
  Rational& prob(int input_index, int output_index) {
    return table(input_index, output_index);
  }

  bool operator==(const Behavior& other) const;
};

struct ValidationIssue {
  enum class Kind { NegativeEntry, RowSumNotOne };
  Kind kind;
  int input_index;
  int output_index;  // -1 for row-sum issues
  Rational value;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Exact check of nonnegativity and per-input normalization.
ValidationReport validate(const Behavior& behavior);

/// One witnessed failure of the no-signaling condition: the marginal of
/// kept_parties at (kept_inputs, kept_outputs) differs between two
/// assignments of the dropped parties' inputs.
struct NsViolation {
  std::vector<int> kept_parties;  // ascending party indices
  std::vector<int> kept_inputs;
  std::vector<int> kept_outputs;
  std::vector<int> dropped_inputs_a;
  std::vector<int> dropped_inputs_b;
  Rational value_a;
  Rational value_b;
};

/// Marginal distribution of kept_parties given their inputs, summing out the
/// other parties at dropped_inputs. Indexed by the kept-output flat index
/// (little-endian over kept_parties in ascending order).
RVec marginal(const Behavior& behavior, std::span<const int> kept_parties,
              std::span<const int> kept_inputs, std::span<const int> dropped_inputs);

/// All no-signaling violations over every proper party subset and every pair
/// of complementary input assignments. Empty result means no-signaling.
std::vector<NsViolation> nonsignaling_violations(const Behavior& behavior);

bool is_nonsignaling(const Behavior& behavior);

/// Conditions on party observing sel_outcome for sel_input and returns the
/// behavior of the remaining parties. Requires the selected party's marginal
/// to be independent of the others' inputs (SignalingInput otherwise) and
/// the selected outcome to have nonzero probability (ZeroProbabilityOutcome).
Behavior postselect(const Behavior& behavior, int party, int sel_input, int sel_outcome);

/// Entrywise convex combination; weights must be nonnegative and sum to 1.
Behavior mix(std::span<const Behavior> behaviors, std::span<const Rational> weights);

/// Relabels parties: old party i becomes party permutation[i]. All permuted
/// positions must carry identical input/output counts.
Behavior permute_parties(const Behavior& behavior, std::span<const int> permutation);

/// The maximally mixed box: every entry 1 / num_output_tuples.
Behavior uniform_box(const Scenario& scenario);

}  // namespace tobl
