#include "toblbox/wiring.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <string>
#include <vector>

#include "toblbox/bell.hpp"
#include "toblbox/errors.hpp"

namespace tobl {

namespace {

const SideProgram& program_of(const WiringProtocol& protocol, Side side) {
  return side == Side::A ? protocol.program_a : protocol.program_b;
}

std::string slot_name(int box, int slot) {
  return "box " + std::to_string(box) + " slot " + std::to_string(slot);
}

// Per-step outcome arities of one side, with all table sizes and value
// ranges checked against the actual boxes.
std::vector<int> side_arities(const SideProgram& prog, std::span<const Behavior> boxes,
                              const char* side_name) {
  std::vector<int> arity;
  long long states = prog.inputs;
  for (const WiringStep& step : prog.steps) {
    const Scenario& scn = boxes[step.box].scenario;
    if (static_cast<long long>(step.input_table.size()) != states) {
      throw ProtocolInvalid("side " + std::string(side_name) + ": input table for " +
                            slot_name(step.box, step.slot) + " has " +
                            std::to_string(step.input_table.size()) + " entries, expected " +
                            std::to_string(states));
    }
    for (int v : step.input_table) {
      if (v < 0 || v >= scn.input_count(step.slot)) {
        throw ProtocolInvalid("input table value " + std::to_string(v) + " out of range for " +
                              slot_name(step.box, step.slot));
      }
    }
    arity.push_back(scn.output_count(step.slot));
    states *= arity.back();
  }
  if (static_cast<long long>(prog.output_table.size()) != states) {
    throw ProtocolInvalid("side " + std::string(side_name) + ": output table has " +
                          std::to_string(prog.output_table.size()) + " entries, expected " +
                          std::to_string(states));
  }
  for (int v : prog.output_table) {
    if (v < 0 || v >= prog.outputs) {
      throw ProtocolInvalid("output table value " + std::to_string(v) + " out of range");
    }
  }
  return arity;
}

// Runs one side's program on external input x; outcome_of answers each query
// and fed records what every slot was asked. Returns the side's output.
template <class OutcomeFn>
int replay_side(const SideProgram& prog, std::span<const int> arity, int x,
                OutcomeFn&& outcome_of, std::vector<std::array<int, 3>>& fed) {
  long long idx = x;
  long long stride = prog.inputs;
  for (size_t k = 0; k < prog.steps.size(); ++k) {
    const WiringStep& step = prog.steps[k];
    const int input = step.input_table[idx];
    fed[step.box][step.slot] = input;
    const int out = outcome_of(step.box, step.slot, input);
    idx += static_cast<long long>(out) * stride;
    stride *= arity[k];
  }
  return prog.output_table[idx];
}

void check_boxes(const WiringProtocol& protocol, std::span<const Behavior> boxes) {
  if (boxes.size() != protocol.assignment.sides.size()) {
    throw BoxCountMismatch("protocol expects " +
                           std::to_string(protocol.assignment.sides.size()) + " boxes, got " +
                           std::to_string(boxes.size()));
  }
  for (size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].scenario.parties() != 3) {
      throw NotTripartite("box " + std::to_string(i) + " has " +
                          std::to_string(boxes[i].scenario.parties()) + " parties");
    }
  }
}

// How a box's slot split maps onto decomposition data: which bipartition and
// which signaling direction the owning side's query order implies.
struct BoxPlan {
  int bp;
  Direction dir;
};

std::vector<BoxPlan> box_plans(const WiringProtocol& protocol) {
  std::vector<BoxPlan> plans;
  for (size_t i = 0; i < protocol.assignment.sides.size(); ++i) {
    const auto& sides = protocol.assignment.sides[i];
    const int on_a = (sides[0] == Side::A) + (sides[1] == Side::A) + (sides[2] == Side::A);
    int solo = 0;  // unsplit boxes use the lowest slot
    if (on_a == 1) {
      solo = sides[0] == Side::A ? 0 : sides[1] == Side::A ? 1 : 2;
    } else if (on_a == 2) {
      solo = sides[0] == Side::B ? 0 : sides[1] == Side::B ? 1 : 2;
    }
    const Bipartition& parts = kBipartitions[solo];
    const SideProgram& owner = program_of(protocol, protocol.assignment.sides[i][parts.pair_first]);
    Direction dir = Direction::Forward;
    for (const WiringStep& step : owner.steps) {
      if (step.box == static_cast<int>(i) &&
          (step.slot == parts.pair_first || step.slot == parts.pair_second)) {
        dir = step.slot == parts.pair_first ? Direction::Forward : Direction::Backward;
        break;
      }
    }
    plans.push_back({solo, dir});
  }
  return plans;
}

}  // namespace

void validate_protocol(const WiringProtocol& protocol) {
  const int num_boxes = static_cast<int>(protocol.assignment.sides.size());
  if (num_boxes == 0) throw ProtocolInvalid("no boxes assigned");

  size_t total_steps = 0;
  for (const Side side : {Side::A, Side::B}) {
    const SideProgram& prog = program_of(protocol, side);
    const char* name = side == Side::A ? "A" : "B";
    if (prog.inputs < 1 || prog.outputs < 1) {
      throw ProtocolInvalid("side " + std::string(name) + " needs positive input/output arity");
    }
    std::vector<std::array<bool, 3>> queried(num_boxes, {false, false, false});
    for (const WiringStep& step : prog.steps) {
      if (step.box < 0 || step.box >= num_boxes || step.slot < 0 || step.slot > 2) {
        throw ProtocolInvalid("step references " + slot_name(step.box, step.slot));
      }
      if (protocol.assignment.sides[step.box][step.slot] != side) {
        throw ProtocolInvalid("side " + std::string(name) + " queries unowned " +
                              slot_name(step.box, step.slot));
      }
      if (queried[step.box][step.slot]) {
        throw ProtocolInvalid(slot_name(step.box, step.slot) + " queried twice");
      }
      queried[step.box][step.slot] = true;
    }
    for (int b = 0; b < num_boxes; ++b) {
      for (int s = 0; s < 3; ++s) {
        if (protocol.assignment.sides[b][s] == side && !queried[b][s]) {
          throw ProtocolInvalid(slot_name(b, s) + " assigned but never queried");
        }
      }
    }
    total_steps += prog.steps.size();
  }

  if (protocol.interleaving.size() != total_steps) {
    throw ProtocolInvalid("interleaving has " + std::to_string(protocol.interleaving.size()) +
                          " entries for " + std::to_string(total_steps) + " steps");
  }
  size_t next_a = 0, next_b = 0;
  for (const auto& [side, index] : protocol.interleaving) {
    size_t& next = side == Side::A ? next_a : next_b;
    if (index != static_cast<int>(next)) {
      throw ProtocolInvalid("interleaving is not a merge of the side orders");
    }
    ++next;
  }
}

Behavior simulate(const WiringProtocol& protocol, std::span<const Behavior> boxes) {
  validate_protocol(protocol);
  check_boxes(protocol, boxes);
  for (size_t i = 0; i < boxes.size(); ++i) {
    if (!validate(boxes[i]).ok() || !is_nonsignaling(boxes[i])) {
      throw SignalingBox("box " + std::to_string(i) + " is not a valid no-signaling behavior");
    }
  }
  const SideProgram& pa = protocol.program_a;
  const SideProgram& pb = protocol.program_b;
  const std::vector<int> arity_a = side_arities(pa, boxes, "A");
  const std::vector<int> arity_b = side_arities(pb, boxes, "B");
  const int num_boxes = static_cast<int>(boxes.size());

  // all joint internal outcomes, decoded to per-slot digits once
  std::vector<std::vector<std::vector<int>>> digits(num_boxes);
  for (int i = 0; i < num_boxes; ++i) {
    const long long count = boxes[i].scenario.num_output_tuples();
    digits[i].reserve(count);
    for (long long o = 0; o < count; ++o) {
      digits[i].push_back(boxes[i].scenario.output_tuple(static_cast<int>(o)));
    }
  }

  Scenario out_scn({pa.inputs, pb.inputs}, {pa.outputs, pb.outputs});
  RMat table = RMat::Zero(out_scn.num_input_tuples(), out_scn.num_output_tuples());
  std::vector<std::array<int, 3>> fed(num_boxes);
  std::vector<int> oc(num_boxes);

  for (int xa = 0; xa < pa.inputs; ++xa) {
    for (int xb = 0; xb < pb.inputs; ++xb) {
      std::fill(oc.begin(), oc.end(), 0);
      while (true) {
        for (auto& f : fed) f = {-1, -1, -1};
        const auto outcome_of = [&](int box, int slot, int) { return digits[box][oc[box]][slot]; };
        const int ya = replay_side(pa, arity_a, xa, outcome_of, fed);
        const int yb = replay_side(pb, arity_b, xb, outcome_of, fed);

        Rational weight = 1;
        for (int i = 0; i < num_boxes && weight != 0; ++i) {
          weight *= boxes[i].prob(boxes[i].scenario.input_index(fed[i]), oc[i]);
        }
        if (weight != 0) {
          const std::array<int, 2> in{xa, xb};
          const std::array<int, 2> out{ya, yb};
          table(out_scn.input_index(in), out_scn.output_index(out)) += weight;
        }

        int d = 0;
        while (d < num_boxes) {
          if (++oc[d] < static_cast<int>(digits[d].size())) break;
          oc[d++] = 0;
        }
        if (d == num_boxes) break;
      }
    }
  }
  return Behavior(std::move(out_scn), std::move(table));
}

LocalModel local_model_from_tobl(const WiringProtocol& protocol, std::span<const Behavior> boxes,
                                 std::span<const ToblDecomposition> decompositions) {
  validate_protocol(protocol);
  check_boxes(protocol, boxes);
  if (decompositions.size() != boxes.size()) {
    throw BoxCountMismatch("need one decomposition per box, got " +
                           std::to_string(decompositions.size()) + " for " +
                           std::to_string(boxes.size()));
  }
  const SideProgram& pa = protocol.program_a;
  const SideProgram& pb = protocol.program_b;
  const std::vector<int> arity_a = side_arities(pa, boxes, "A");
  const std::vector<int> arity_b = side_arities(pb, boxes, "B");
  const int num_boxes = static_cast<int>(boxes.size());

  const std::vector<BoxPlan> plans = box_plans(protocol);
  for (int i = 0; i < num_boxes; ++i) {
    if (decompositions[i].terms[plans[i].bp].empty()) {
      throw UnsupportedSplit("box " + std::to_string(i) + " needs decomposition data for " +
                             bipartition_label(plans[i].bp));
    }
    if (!verify_tobl_bipartition(boxes[i], decompositions[i], plans[i].bp)) {
      throw DecompositionMismatch("decomposition of box " + std::to_string(i) +
                                  " does not reproduce it for " + bipartition_label(plans[i].bp));
    }
  }

  LocalModel model;
  std::vector<std::array<int, 3>> fed(num_boxes);
  std::vector<int> pick(num_boxes, 0);
  std::vector<const ToblTerm*> chosen(num_boxes);

  while (true) {
    Rational weight = 1;
    for (int i = 0; i < num_boxes; ++i) {
      chosen[i] = &decompositions[i].terms[plans[i].bp][pick[i]];
      weight *= chosen[i]->weight;
    }
    if (weight != 0) {
      const auto outcome_of = [&](int box, int slot, int input) {
        const Bipartition& parts = kBipartitions[plans[box].bp];
        const ToblTerm& term = *chosen[box];
        if (slot == parts.solo) return term.solo(input);
        const bool forward = plans[box].dir == Direction::Forward;
        const OneWayPairStrategy& strat = forward ? term.forward : term.backward;
        const int sender_slot = forward ? parts.pair_first : parts.pair_second;
        if (slot == sender_slot) return strat.sender[input];
        const int y = slot == parts.pair_first ? input : fed[box][parts.pair_first];
        const int z = slot == parts.pair_second ? input : fed[box][parts.pair_second];
        assert(y >= 0 && z >= 0);  // the sender is queried before the receiver
        return strat.receiver[y * boxes[box].scenario.input_count(parts.pair_second) + z];
      };

      LocalModel::Term term;
      term.weight = std::move(weight);
      term.strategies.resize(2);
      term.strategies[0] = {pa.inputs, pa.outputs, std::vector<int>(pa.inputs)};
      term.strategies[1] = {pb.inputs, pb.outputs, std::vector<int>(pb.inputs)};
      for (int xa = 0; xa < pa.inputs; ++xa) {
        for (auto& f : fed) f = {-1, -1, -1};
        term.strategies[0].assignment[xa] = replay_side(pa, arity_a, xa, outcome_of, fed);
      }
      for (int xb = 0; xb < pb.inputs; ++xb) {
        for (auto& f : fed) f = {-1, -1, -1};
        term.strategies[1].assignment[xb] = replay_side(pb, arity_b, xb, outcome_of, fed);
      }
      model.terms.push_back(std::move(term));
    }

    int d = 0;
    while (d < num_boxes) {
      if (++pick[d] < static_cast<int>(decompositions[d].terms[plans[d].bp].size())) break;
      pick[d++] = 0;
    }
    if (d == num_boxes) break;
  }
  return model;
}

WiringReport check_wiring_locality(const WiringProtocol& protocol, std::span<const Behavior> boxes,
                                   std::span<const ToblDecomposition> decompositions) {
  WiringReport report;
  report.p_fin = simulate(protocol, boxes);
  report.model = local_model_from_tobl(protocol, boxes, decompositions);
  report.reconstruction_equal =
      local_model_behavior(report.p_fin.scenario, report.model) == report.p_fin;
  report.is_local_confirmed = std::holds_alternative<LocalModel>(is_local(report.p_fin));
  if (report.p_fin.scenario == Scenario({2, 2}, {2, 2})) {
    report.chsh_value = evaluate(chsh(), report.p_fin);
  }
  return report;
}

}  // namespace tobl
