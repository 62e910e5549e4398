#include "toblbox/scenario.hpp"

#include <string>

namespace tobl {

namespace {

void check_counts(const std::vector<int>& counts, const char* what) {
  if (counts.empty()) throw IncompatibleScenario(std::string("scenario needs at least one party"));
  for (int c : counts) {
    if (c < 1) {
      throw IncompatibleScenario(std::string(what) + " count must be positive, got " +
                                 std::to_string(c));
    }
  }
}

}  // namespace

Scenario::Scenario(std::vector<int> inputs_per_party, std::vector<int> outputs_per_party)
    : inputs_(std::move(inputs_per_party)), outputs_(std::move(outputs_per_party)) {
  check_counts(inputs_, "input");
  check_counts(outputs_, "output");
  if (inputs_.size() != outputs_.size()) {
    throw IncompatibleScenario("inputs list has " + std::to_string(inputs_.size()) +
                               " parties but outputs list has " + std::to_string(outputs_.size()));
  }
}

int Scenario::input_count(int party) const {
  if (party < 0 || party >= parties()) {
    throw IndexOutOfRange("party " + std::to_string(party) + " out of range for " +
                          std::to_string(parties()) + " parties");
  }
  return inputs_[party];
}

int Scenario::output_count(int party) const {
  if (party < 0 || party >= parties()) {
    throw IndexOutOfRange("party " + std::to_string(party) + " out of range for " +
                          std::to_string(parties()) + " parties");
  }
  return outputs_[party];
}

long long Scenario::num_input_tuples() const { return radix_product(inputs_); }

long long Scenario::num_output_tuples() const { return radix_product(outputs_); }

int Scenario::input_index(std::span<const int> tuple) const { return tuple_index(tuple, inputs_); }

int Scenario::output_index(std::span<const int> tuple) const {
  return tuple_index(tuple, outputs_);
}

std::vector<int> Scenario::input_tuple(int index) const { return index_tuple(index, inputs_); }

std::vector<int> Scenario::output_tuple(int index) const { return index_tuple(index, outputs_); }

int tuple_index(std::span<const int> tuple, std::span<const int> radix) {
  if (tuple.size() != radix.size()) {
    throw IndexOutOfRange("tuple has " + std::to_string(tuple.size()) + " digits, expected " +
                          std::to_string(radix.size()));
  }
  long long index = 0;
  long long stride = 1;
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= radix[i]) {
      throw IndexOutOfRange("digit " + std::to_string(i) + " is " + std::to_string(tuple[i]) +
                            ", valid range [0, " + std::to_string(radix[i]) + ")");
    }
    index += stride * tuple[i];
    stride *= radix[i];
  }
  return static_cast<int>(index);
}

std::vector<int> index_tuple(int index, std::span<const int> radix) {
  if (index < 0 || index >= radix_product(radix)) {
    throw IndexOutOfRange("flat index " + std::to_string(index) + " out of range");
  }
  std::vector<int> tuple(radix.size());
  for (size_t i = 0; i < radix.size(); ++i) {
    tuple[i] = index % radix[i];
    index /= radix[i];
  }
  return tuple;
}

long long radix_product(std::span<const int> radix) {
  long long product = 1;
  for (int r : radix) product *= r;
  return product;
}

}  // namespace tobl
