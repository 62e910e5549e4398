#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "toblbox/behavior.hpp"
#include "toblbox/membership.hpp"
#include "toblbox/rational.hpp"

namespace tobl {

enum class Side { A, B };

// Which side holds each of the three slots of every box.
struct SubsystemAssignment {
  std::vector<std::array<Side, 3>> sides;  // [box][slot]
};

// One query of an owned box slot. The input fed to the slot is a lookup over
// the side's external input and everything the side has observed so far:
// flat index (x, obs_0, …, obs_{k-1}), first digit fastest.
struct WiringStep {
  int box = 0;
  int slot = 0;
  std::vector<int> input_table;
};

// A side's sequential program: query each owned slot once, adaptively, then
// map the external input and all observations to the side's final output
// (same flat indexing as the steps, over all observations).
struct SideProgram {
  int inputs = 1;
  int outputs = 1;
  std::vector<WiringStep> steps;
  std::vector<int> output_table;
};

struct WiringProtocol {
  SubsystemAssignment assignment;
  SideProgram program_a;
  SideProgram program_b;
  // global measurement order: a merge of the two sides' step sequences
  std::vector<std::pair<Side, int>> interleaving;
};

/// Structural check, independent of any boxes: each owned slot queried
/// exactly once, tables sized for the observation history, interleaving a
/// valid merge. Throws ProtocolInvalid.
void validate_protocol(const WiringProtocol& protocol);

/// The bipartite behavior produced by running the wiring on the given
/// tripartite boxes, sides A and B acting as composite parties. Exhaustive
/// exact summation over all internal outcomes; the result does not depend on
/// the interleaving. BoxCountMismatch, SignalingBox, ProtocolInvalid.
Behavior simulate(const WiringProtocol& protocol, std::span<const Behavior> boxes);

/// The explicit bipartite local model of simulate's output when every box
/// carries a decomposition for the bipartition its slot split induces: one
/// hidden term per box, each side replaying its program against the term's
/// deterministic strategies, the pair direction chosen by the owning side's
/// query order. DecompositionMismatch, UnsupportedSplit.
LocalModel local_model_from_tobl(const WiringProtocol& protocol, std::span<const Behavior> boxes,
                                 std::span<const ToblDecomposition> decompositions);

struct WiringReport {
  Behavior p_fin;
  LocalModel model;
  bool reconstruction_equal = false;
  bool is_local_confirmed = false;
  std::optional<Rational> chsh_value;  // only for (2,2;2,2) outputs
};

/// Runs the full locality argument on one wiring: simulate, build the model,
/// compare the reconstruction, confirm membership by the local-set LP, and
/// evaluate the two-party functional when the arities allow it.
WiringReport check_wiring_locality(const WiringProtocol& protocol, std::span<const Behavior> boxes,
                                   std::span<const ToblDecomposition> decompositions);

}  // namespace tobl
