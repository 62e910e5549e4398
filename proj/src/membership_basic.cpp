#include <string>
#include <vector>

#include "toblbox/membership.hpp"

namespace tobl {

std::string bipartition_label(int index) {
  switch (index) {
    case 0: return "1|23";
    case 1: return "2|31";
    case 2: return "3|12";
    default: throw IndexOutOfRange("bipartition index " + std::to_string(index));
  }
}

int bipartition_from_label(const std::string& s) {
  for (int i = 0; i < 3; ++i) {
    if (s == bipartition_label(i)) return i;
  }
  throw ParseError("unknown bipartition label \"" + s + "\"");
}

Scenario pair_scenario(const Scenario& scenario, const Bipartition& bipartition) {
  return Scenario(
      {scenario.input_count(bipartition.pair_first), scenario.input_count(bipartition.pair_second)},
      {scenario.output_count(bipartition.pair_first),
       scenario.output_count(bipartition.pair_second)});
}

Behavior local_model_behavior(const Scenario& scenario, const LocalModel& model) {
  RMat table = RMat::Zero(scenario.num_input_tuples(), scenario.num_output_tuples());
  const int n = scenario.parties();
  for (const LocalModel::Term& term : model.terms) {
    if (static_cast<int>(term.strategies.size()) != n) {
      throw IncompatibleScenario("local model term needs one strategy per party");
    }
    for (long long x = 0; x < scenario.num_input_tuples(); ++x) {
      std::vector<int> in = scenario.input_tuple(static_cast<int>(x));
      std::vector<int> out(n);
      for (int p = 0; p < n; ++p) out[p] = term.strategies[p](in[p]);
      table(x, scenario.output_index(out)) += term.weight;
    }
  }
  return Behavior(scenario, std::move(table));
}

Behavior tobl_reconstruction(const Scenario& scenario, const ToblDecomposition& decomposition,
                             int bipartition, Direction direction) {
  if (scenario.parties() != 3) throw NotTripartite("reconstruction needs three parties");
  if (bipartition < 0 || bipartition > 2) {
    throw IndexOutOfRange("bipartition index " + std::to_string(bipartition));
  }
  const Bipartition& parts = kBipartitions[bipartition];
  const int mk = scenario.input_count(parts.pair_second);

  RMat table = RMat::Zero(scenario.num_input_tuples(), scenario.num_output_tuples());
  for (const ToblTerm& term : decomposition.terms[bipartition]) {
    const OneWayPairStrategy& pair =
        direction == Direction::Forward ? term.forward : term.backward;
    for (long long x = 0; x < scenario.num_input_tuples(); ++x) {
      std::vector<int> in = scenario.input_tuple(static_cast<int>(x));
      const int y = in[parts.pair_first];
      const int z = in[parts.pair_second];
      std::vector<int> out(3);
      out[parts.solo] = term.solo(in[parts.solo]);
      if (direction == Direction::Forward) {
        out[parts.pair_first] = pair.sender[y];
        out[parts.pair_second] = pair.receiver[y * mk + z];
      } else {
        out[parts.pair_second] = pair.sender[z];
        out[parts.pair_first] = pair.receiver[y * mk + z];
      }
      table(x, scenario.output_index(out)) += term.weight;
    }
  }
  return Behavior(scenario, std::move(table));
}

namespace {

bool term_shapes_ok(const Scenario& scenario, const Bipartition& parts, const ToblTerm& term) {
  const int mi = scenario.input_count(parts.solo);
  const int di = scenario.output_count(parts.solo);
  const int mj = scenario.input_count(parts.pair_first);
  const int mk = scenario.input_count(parts.pair_second);
  const int dj = scenario.output_count(parts.pair_first);
  const int dk = scenario.output_count(parts.pair_second);

  if (term.solo.inputs != mi || term.solo.outputs != di ||
      static_cast<int>(term.solo.assignment.size()) != mi) {
    return false;
  }
  for (int a : term.solo.assignment) {
    if (a < 0 || a >= di) return false;
  }
  if (term.forward.direction != Direction::Forward ||
      term.backward.direction != Direction::Backward) {
    return false;
  }
  if (static_cast<int>(term.forward.sender.size()) != mj ||
      static_cast<int>(term.forward.receiver.size()) != mj * mk ||
      static_cast<int>(term.backward.sender.size()) != mk ||
      static_cast<int>(term.backward.receiver.size()) != mj * mk) {
    return false;
  }
  for (int b : term.forward.sender) {
    if (b < 0 || b >= dj) return false;
  }
  for (int c : term.forward.receiver) {
    if (c < 0 || c >= dk) return false;
  }
  for (int c : term.backward.sender) {
    if (c < 0 || c >= dk) return false;
  }
  for (int b : term.backward.receiver) {
    if (b < 0 || b >= dj) return false;
  }
  return true;
}

}  // namespace

bool verify_tobl_bipartition(const Behavior& behavior, const ToblDecomposition& decomposition,
                             int bipartition) {
  if (behavior.scenario.parties() != 3) return false;
  if (bipartition < 0 || bipartition >= 3) {
    throw IndexOutOfRange("bipartition index must be 0, 1, or 2");
  }
  const Bipartition& parts = kBipartitions[bipartition];
  Rational total = 0;
  for (const ToblTerm& term : decomposition.terms[bipartition]) {
    if (term.weight < 0) return false;
    if (!term_shapes_ok(behavior.scenario, parts, term)) return false;
    total += term.weight;
  }
  if (total != 1) return false;
  if (!(tobl_reconstruction(behavior.scenario, decomposition, bipartition, Direction::Forward) ==
        behavior)) {
    return false;
  }
  return tobl_reconstruction(behavior.scenario, decomposition, bipartition, Direction::Backward) ==
         behavior;
}

bool verify_tobl_decomposition(const Behavior& behavior, const ToblDecomposition& decomposition) {
  if (behavior.scenario.parties() != 3) return false;
  for (int b = 0; b < 3; ++b) {
    if (!verify_tobl_bipartition(behavior, decomposition, b)) return false;
  }
  return true;
}

LocalModel condition_on_sender(const Scenario& scenario, const ToblDecomposition& decomposition,
                               int bipartition, Direction direction, int sel_input,
                               int sel_outcome) {
  if (scenario.parties() != 3) throw NotTripartite("conditioning needs three parties");
  if (bipartition < 0 || bipartition > 2) {
    throw IndexOutOfRange("bipartition index " + std::to_string(bipartition));
  }
  const Bipartition& parts = kBipartitions[bipartition];
  const int sender_party =
      direction == Direction::Forward ? parts.pair_first : parts.pair_second;
  const int receiver_party =
      direction == Direction::Forward ? parts.pair_second : parts.pair_first;
  if (sel_input < 0 || sel_input >= scenario.input_count(sender_party)) {
    throw IndexOutOfRange("selected input out of range");
  }
  if (sel_outcome < 0 || sel_outcome >= scenario.output_count(sender_party)) {
    throw IndexOutOfRange("selected outcome out of range");
  }
  const int mk = scenario.input_count(parts.pair_second);

  Rational selected = 0;
  for (const ToblTerm& term : decomposition.terms[bipartition]) {
    const OneWayPairStrategy& pair =
        direction == Direction::Forward ? term.forward : term.backward;
    if (pair.sender[sel_input] == sel_outcome) selected += term.weight;
  }
  if (selected == 0) {
    throw ZeroProbabilityOutcome("selected outcome never occurs in this decomposition");
  }

  LocalModel model;
  for (const ToblTerm& term : decomposition.terms[bipartition]) {
    const OneWayPairStrategy& pair =
        direction == Direction::Forward ? term.forward : term.backward;
    if (pair.sender[sel_input] != sel_outcome || term.weight == 0) continue;

    // The receiver's strategy with the sender's input pinned to sel_input.
    DeterministicStrategy conditioned;
    conditioned.inputs = scenario.input_count(receiver_party);
    conditioned.outputs = scenario.output_count(receiver_party);
    conditioned.assignment.resize(conditioned.inputs);
    for (int r = 0; r < conditioned.inputs; ++r) {
      const int pair_index = direction == Direction::Forward ? sel_input * mk + r
                                                             : r * mk + sel_input;
      conditioned.assignment[r] = pair.receiver[pair_index];
    }

    LocalModel::Term out;
    out.weight = term.weight / selected;
    if (parts.solo < receiver_party) {
      out.strategies = {term.solo, conditioned};
    } else {
      out.strategies = {conditioned, term.solo};
    }
    model.terms.push_back(std::move(out));
  }
  return model;
}

}  // namespace tobl
