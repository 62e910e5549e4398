#pragma once

#include <stdexcept>
#include <string>

namespace tobl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TOBL_ERROR_TYPE(Name) \
  struct Name : Error {       \
    using Error::Error;       \
  }

// core
TOBL_ERROR_TYPE(MissingEntry);
TOBL_ERROR_TYPE(IndexOutOfRange);
TOBL_ERROR_TYPE(ZeroProbabilityOutcome);
TOBL_ERROR_TYPE(SignalingInput);
TOBL_ERROR_TYPE(ScenarioMismatch);
TOBL_ERROR_TYPE(BadWeights);
TOBL_ERROR_TYPE(IncompatibleScenario);

// ratlp
TOBL_ERROR_TYPE(DimensionMismatch);

// membership
TOBL_ERROR_TYPE(ScenarioTooLarge);
TOBL_ERROR_TYPE(NotTripartite);

// wiring
TOBL_ERROR_TYPE(ProtocolInvalid);
TOBL_ERROR_TYPE(BoxCountMismatch);
TOBL_ERROR_TYPE(SignalingBox);
TOBL_ERROR_TYPE(DecompositionMismatch);
TOBL_ERROR_TYPE(UnsupportedSplit);

// io / cli
TOBL_ERROR_TYPE(ParseError);

#undef TOBL_ERROR_TYPE

}  // namespace tobl
