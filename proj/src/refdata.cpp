#include "toblbox/refdata.hpp"

#include "toblbox/rational.hpp"

namespace tobl {

namespace {

// Probability table laid out label-wise: row r is the input string whose
// binary digits (most significant first) are the parties' inputs x1 x2 x3,
// column c likewise the output string a1 a2 a3.
constexpr const char* kWitnessTable[8][8] = {
    {"2/3", "0", "0", "0", "0", "0", "0", "1/3"},
    {"1/3", "1/3", "0", "0", "0", "0", "1/6", "1/6"},
    {"1/3", "0", "1/3", "0", "0", "1/6", "0", "1/6"},
    {"1/6", "1/6", "1/6", "1/6", "0", "1/6", "1/6", "0"},
    {"1/3", "0", "0", "1/6", "1/3", "0", "0", "1/6"},
    {"1/6", "1/6", "0", "1/6", "1/6", "1/6", "1/6", "0"},
    {"1/6", "0", "1/6", "1/6", "1/6", "1/6", "1/6", "0"},
    {"0", "1/6", "1/6", "1/6", "1/6", "1/6", "1/6", "0"},
};

// Shared data of the ten decomposition terms: weight and the solo party's
// outputs a_0, a_1 (common to both signaling directions).
struct TermHead {
  const char* weight;
  int a0, a1;
};
constexpr TermHead kHeads[10] = {
    {"1/12", 0, 0}, {"1/12", 0, 0}, {"1/12", 0, 0}, {"1/12", 0, 0}, {"1/12", 0, 1},
    {"1/12", 0, 1}, {"1/12", 0, 1}, {"1/12", 0, 1}, {"1/6", 1, 0},  {"1/6", 1, 1},
};

// Forward direction: sender outputs b_0, b_1; receiver outputs c_yz in the
// order c_00 c_01 c_10 c_11.
constexpr int kForward[10][6] = {
    {0, 1, 0, 1, 0, 1}, {0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 1},
    {0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0},
    {1, 1, 1, 1, 1, 0}, {1, 0, 1, 0, 1, 1},
};

// Backward direction: receiver outputs b_yz in the order b_00 b_01 b_10 b_11;
// sender outputs c_0, c_1.
constexpr int kBackward[10][6] = {
    {0, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 1}, {0, 0, 1, 1, 0, 0}, {0, 0, 1, 1, 0, 1},
    {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 0, 1},
    {1, 1, 1, 0, 1, 1}, {1, 1, 0, 1, 1, 0},
};

int label_to_flat(int label_index) {
  // label digits are party-major with party 1 most significant; the flat
  // index wants party 1 least significant.
  const int p1 = (label_index >> 2) & 1;
  const int p2 = (label_index >> 1) & 1;
  const int p3 = label_index & 1;
  return p1 + 2 * p2 + 4 * p3;
}

}  // namespace

Behavior gyni_tobl_maximizer() {
  Scenario scenario({2, 2, 2}, {2, 2, 2});
  RMat table(8, 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      table(label_to_flat(r), label_to_flat(c)) = parse_rational(kWitnessTable[r][c]);
    }
  }
  return Behavior(std::move(scenario), std::move(table));
}

ToblDecomposition gyni_tobl_maximizer_decomposition() {
  ToblDecomposition decomposition;
  std::vector<ToblTerm> terms;
  terms.reserve(10);
  for (int t = 0; t < 10; ++t) {
    ToblTerm term;
    term.weight = parse_rational(kHeads[t].weight);
    term.solo = DeterministicStrategy{2, 2, {kHeads[t].a0, kHeads[t].a1}};
    term.forward.direction = Direction::Forward;
    term.forward.sender = {kForward[t][0], kForward[t][1]};
    term.forward.receiver = {kForward[t][2], kForward[t][3], kForward[t][4], kForward[t][5]};
    term.backward.direction = Direction::Backward;
    term.backward.receiver = {kBackward[t][0], kBackward[t][1], kBackward[t][2], kBackward[t][3]};
    term.backward.sender = {kBackward[t][4], kBackward[t][5]};
    terms.push_back(std::move(term));
  }
  // The behavior is invariant under every party permutation, so the same
  // term data certifies all three bipartitions.
  for (int b = 0; b < 3; ++b) decomposition.terms[b] = terms;
  return decomposition;
}

}  // namespace tobl
