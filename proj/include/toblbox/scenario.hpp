#pragma once

#include <span>
#include <vector>

#include "toblbox/errors.hpp"

namespace tobl {

// Measurement scenario: n parties, party i choosing among inputs()[i]
// settings with outputs()[i] possible results. Joint input/output tuples are
// flattened little-endian in party order (party 0 varies fastest).
class Scenario {
 public:
  Scenario() = default;
  Scenario(std::vector<int> inputs_per_party, std::vector<int> outputs_per_party);

  int parties() const { return static_cast<int>(inputs_.size()); }
  const std::vector<int>& inputs() const { return inputs_; }
  const std::vector<int>& outputs() const { return outputs_; }
  int input_count(int party) const;
  int output_count(int party) const;

  long long num_input_tuples() const;
  long long num_output_tuples() const;

  int input_index(std::span<const int> tuple) const;
  int output_index(std::span<const int> tuple) const;
  std::vector<int> input_tuple(int index) const;
  std::vector<int> output_tuple(int index) const;

  bool operator==(const Scenario& other) const = default;

 private:
  std::vector<int> inputs_;
  std::vector<int> outputs_;
};

/// Flat index of a mixed-radix tuple, first digit fastest.
int tuple_index(std::span<const int> tuple, std::span<const int> radix);
std::vector<int> index_tuple(int index, std::span<const int> radix);
long long radix_product(std::span<const int> radix);

}  // namespace tobl
