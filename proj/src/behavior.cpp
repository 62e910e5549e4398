#include "toblbox/behavior.hpp"

#include <algorithm>
#include <string>

namespace tobl {

namespace {

// Kept/dropped bookkeeping for marginalization over a party subset.
struct Split {
  std::vector<int> kept;     // ascending party indices
  std::vector<int> dropped;  // the complement, ascending
  std::vector<int> kept_out_radix;
  std::vector<int> dropped_out_radix;

  Split(const Scenario& scenario, std::span<const int> kept_parties) {
    const int n = scenario.parties();
    std::vector<char> is_kept(n, 0);
    int previous = -1;
    for (int p : kept_parties) {
      if (p < 0 || p >= n) {
        throw IndexOutOfRange("kept party " + std::to_string(p) + " out of range");
      }
      if (p <= previous) {
        throw IndexOutOfRange("kept parties must be strictly ascending");
      }
      previous = p;
      is_kept[p] = 1;
    }
    if (kept_parties.empty()) throw IndexOutOfRange("kept party set must be non-empty");
    for (int p = 0; p < n; ++p) {
      if (is_kept[p]) {
        kept.push_back(p);
        kept_out_radix.push_back(scenario.output_count(p));
      } else {
        dropped.push_back(p);
        dropped_out_radix.push_back(scenario.output_count(p));
      }
    }
  }
};

std::vector<int> assemble_full_tuple(const Split& split, std::span<const int> kept_values,
                                     std::span<const int> dropped_values, int parties) {
  std::vector<int> full(parties);
  for (size_t i = 0; i < split.kept.size(); ++i) full[split.kept[i]] = kept_values[i];
  for (size_t i = 0; i < split.dropped.size(); ++i) full[split.dropped[i]] = dropped_values[i];
  return full;
}

}  // namespace

Behavior::Behavior(Scenario s, RMat t) : scenario(std::move(s)), table(std::move(t)) {
  if (table.rows() != scenario.num_input_tuples() || table.cols() != scenario.num_output_tuples()) {
    throw IncompatibleScenario("table is " + std::to_string(table.rows()) + "x" +
                               std::to_string(table.cols()) + " but scenario needs " +
                               std::to_string(scenario.num_input_tuples()) + "x" +
                               std::to_string(scenario.num_output_tuples()));
  }
}

bool Behavior::operator==(const Behavior& other) const {
  if (scenario != other.scenario) return false;
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) {
      if (table(r, c) != other.table(r, c)) return false;
    }
  }
  return true;
}

ValidationReport validate(const Behavior& behavior) {
  ValidationReport report;
  for (Eigen::Index x = 0; x < behavior.table.rows(); ++x) {
    Rational row_sum = 0;
    for (Eigen::Index a = 0; a < behavior.table.cols(); ++a) {
      const Rational& p = behavior.table(x, a);
      if (p < 0) {
        report.issues.push_back({ValidationIssue::Kind::NegativeEntry, static_cast<int>(x),
                                 static_cast<int>(a), p});
      }
      row_sum += p;
    }
    if (row_sum != 1) {
      report.issues.push_back(
          {ValidationIssue::Kind::RowSumNotOne, static_cast<int>(x), -1, row_sum});
    }
  }
  return report;
}

RVec marginal(const Behavior& behavior, std::span<const int> kept_parties,
              std::span<const int> kept_inputs, std::span<const int> dropped_inputs) {
  const Scenario& scenario = behavior.scenario;
  Split split(scenario, kept_parties);
  if (kept_inputs.size() != split.kept.size() || dropped_inputs.size() != split.dropped.size()) {
    throw IndexOutOfRange("input assignments do not match the kept/dropped party counts");
  }
  std::vector<int> full_input =
      assemble_full_tuple(split, kept_inputs, dropped_inputs, scenario.parties());
  const int x = scenario.input_index(full_input);

  RVec result = RVec::Zero(radix_product(split.kept_out_radix));
  const long long num_outputs = scenario.num_output_tuples();
  for (long long a = 0; a < num_outputs; ++a) {
    std::vector<int> outs = scenario.output_tuple(static_cast<int>(a));
    std::vector<int> kept_outs(split.kept.size());
    for (size_t i = 0; i < split.kept.size(); ++i) kept_outs[i] = outs[split.kept[i]];
    result[tuple_index(kept_outs, split.kept_out_radix)] += behavior.prob(x, static_cast<int>(a));
  }
  return result;
}

std::vector<NsViolation> nonsignaling_violations(const Behavior& behavior) {
  const Scenario& scenario = behavior.scenario;
  const int n = scenario.parties();
  std::vector<NsViolation> violations;

  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> kept;
    std::vector<int> kept_in_radix;
    for (int p = 0; p < n; ++p) {
      if (mask & (1u << p)) {
        kept.push_back(p);
        kept_in_radix.push_back(scenario.input_count(p));
      }
    }
    std::vector<int> dropped_in_radix;
    for (int p = 0; p < n; ++p) {
      if (!(mask & (1u << p))) dropped_in_radix.push_back(scenario.input_count(p));
    }

    const long long num_kept_inputs = radix_product(kept_in_radix);
    const long long num_dropped_inputs = radix_product(dropped_in_radix);
    for (long long ki = 0; ki < num_kept_inputs; ++ki) {
      std::vector<int> kept_inputs = index_tuple(static_cast<int>(ki), kept_in_radix);
      std::vector<int> reference_inputs = index_tuple(0, dropped_in_radix);
      RVec reference = marginal(behavior, kept, kept_inputs, reference_inputs);
      for (long long di = 1; di < num_dropped_inputs; ++di) {
        std::vector<int> dropped_inputs = index_tuple(static_cast<int>(di), dropped_in_radix);
        RVec other = marginal(behavior, kept, kept_inputs, dropped_inputs);
        for (Eigen::Index c = 0; c < reference.size(); ++c) {
          if (reference[c] != other[c]) {
            std::vector<int> kept_out_radix;
            for (int p : kept) kept_out_radix.push_back(scenario.output_count(p));
            violations.push_back({kept, kept_inputs,
                                  index_tuple(static_cast<int>(c), kept_out_radix),
                                  reference_inputs, dropped_inputs, reference[c], other[c]});
          }
        }
      }
    }
  }
  return violations;
}

bool is_nonsignaling(const Behavior& behavior) { return nonsignaling_violations(behavior).empty(); }

Behavior postselect(const Behavior& behavior, int party, int sel_input, int sel_outcome) {
  const Scenario& scenario = behavior.scenario;
  const int n = scenario.parties();
  if (party < 0 || party >= n) {
    throw IndexOutOfRange("party " + std::to_string(party) + " out of range");
  }
  if (n < 2) throw IncompatibleScenario("cannot postselect away the only party");
  if (sel_input < 0 || sel_input >= scenario.input_count(party)) {
    throw IndexOutOfRange("selected input " + std::to_string(sel_input) + " out of range");
  }
  if (sel_outcome < 0 || sel_outcome >= scenario.output_count(party)) {
    throw IndexOutOfRange("selected outcome " + std::to_string(sel_outcome) + " out of range");
  }

  const std::vector<int> kept{party};
  const std::vector<int> kept_inputs{sel_input};
  Split split(scenario, kept);

  // The selected party's outcome statistics must not depend on the inputs of
  // the parties we keep, or conditioning is ill-defined.
  std::vector<int> rest_in_radix;
  std::vector<int> rest_out_radix;
  for (int p : split.dropped) {
    rest_in_radix.push_back(scenario.input_count(p));
    rest_out_radix.push_back(scenario.output_count(p));
  }
  const long long rest_inputs = radix_product(rest_in_radix);
  RVec reference = marginal(behavior, kept, kept_inputs, index_tuple(0, rest_in_radix));
  for (long long r = 1; r < rest_inputs; ++r) {
    RVec other = marginal(behavior, kept, kept_inputs, index_tuple(static_cast<int>(r), rest_in_radix));
    for (Eigen::Index c = 0; c < reference.size(); ++c) {
      if (reference[c] != other[c]) {
        throw SignalingInput("selected party's outcome distribution depends on other inputs");
      }
    }
  }
  const Rational p_sel = reference[sel_outcome];
  if (p_sel == 0) {
    throw ZeroProbabilityOutcome("selected outcome has probability zero");
  }

  Scenario rest_scenario(rest_in_radix, rest_out_radix);
  RMat table(rest_scenario.num_input_tuples(), rest_scenario.num_output_tuples());
  const long long rest_outputs = rest_scenario.num_output_tuples();
  for (long long r = 0; r < rest_inputs; ++r) {
    std::vector<int> rest_in = index_tuple(static_cast<int>(r), rest_in_radix);
    std::vector<int> full_in = assemble_full_tuple(split, kept_inputs, rest_in, n);
    const int x = scenario.input_index(full_in);
    for (long long c = 0; c < rest_outputs; ++c) {
      std::vector<int> rest_out = index_tuple(static_cast<int>(c), rest_out_radix);
      std::vector<int> full_out =
          assemble_full_tuple(split, std::vector<int>{sel_outcome}, rest_out, n);
      table(r, c) = behavior.prob(x, scenario.output_index(full_out)) / p_sel;
    }
  }
  return Behavior(std::move(rest_scenario), std::move(table));
}

Behavior mix(std::span<const Behavior> behaviors, std::span<const Rational> weights) {
  if (behaviors.empty()) throw BadWeights("mix needs at least one behavior");
  if (behaviors.size() != weights.size()) {
    throw BadWeights("got " + std::to_string(behaviors.size()) + " behaviors but " +
                     std::to_string(weights.size()) + " weights");
  }
  Rational total = 0;
  for (const Rational& w : weights) {
    if (w < 0) throw BadWeights("negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw BadWeights("weights sum to " + to_string(total) + ", expected 1");
  for (const Behavior& b : behaviors) {
    if (b.scenario != behaviors.front().scenario) {
      throw ScenarioMismatch("mixed behaviors must share one scenario");
    }
  }
  RMat table = RMat::Zero(behaviors.front().table.rows(), behaviors.front().table.cols());
  for (size_t i = 0; i < behaviors.size(); ++i) {
    if (weights[i] == 0) continue;
    table += behaviors[i].table * weights[i];
  }
  return Behavior(behaviors.front().scenario, std::move(table));
}

Behavior permute_parties(const Behavior& behavior, std::span<const int> permutation) {
  const Scenario& scenario = behavior.scenario;
  const int n = scenario.parties();
  if (static_cast<int>(permutation.size()) != n) {
    throw IncompatibleScenario("permutation has " + std::to_string(permutation.size()) +
                               " entries for " + std::to_string(n) + " parties");
  }
  std::vector<char> seen(n, 0);
  for (int image : permutation) {
    if (image < 0 || image >= n || seen[image]) {
      throw IncompatibleScenario("not a permutation of the parties");
    }
    seen[image] = 1;
  }
  for (int i = 0; i < n; ++i) {
    if (scenario.input_count(permutation[i]) != scenario.input_count(i) ||
        scenario.output_count(permutation[i]) != scenario.output_count(i)) {
      throw IncompatibleScenario("permuted positions carry different input/output counts");
    }
  }

  RMat table(behavior.table.rows(), behavior.table.cols());
  const long long rows = scenario.num_input_tuples();
  const long long cols = scenario.num_output_tuples();
  for (long long x = 0; x < rows; ++x) {
    std::vector<int> in = scenario.input_tuple(static_cast<int>(x));
    std::vector<int> new_in(n);
    for (int i = 0; i < n; ++i) new_in[permutation[i]] = in[i];
    const int new_x = scenario.input_index(new_in);
    for (long long a = 0; a < cols; ++a) {
      std::vector<int> out = scenario.output_tuple(static_cast<int>(a));
      std::vector<int> new_out(n);
      for (int i = 0; i < n; ++i) new_out[permutation[i]] = out[i];
      table(new_x, scenario.output_index(new_out)) = behavior.prob(static_cast<int>(x),
                                                                   static_cast<int>(a));
    }
  }
  return Behavior(scenario, std::move(table));
}

Behavior uniform_box(const Scenario& scenario) {
  RMat table(scenario.num_input_tuples(), scenario.num_output_tuples());
  const Rational p = Rational(1) / scenario.num_output_tuples();
  table.setConstant(p);
  return Behavior(scenario, std::move(table));
}

}  // namespace tobl
