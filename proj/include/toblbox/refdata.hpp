#pragma once

#include "toblbox/behavior.hpp"
#include "toblbox/membership.hpp"

namespace tobl {

/// Tripartite (2-input, 2-output) no-signaling behavior, invariant under all
/// party permutations, that attains the guess-your-neighbor functional's
/// maximum of 7/6 over the time-ordered bi-local set.
Behavior gyni_tobl_maximizer();

/// An explicit decomposition certifying gyni_tobl_maximizer() membership in
/// the time-ordered bi-local set: ten terms per bipartition, identical
/// assignment data across bipartitions thanks to permutation invariance.
ToblDecomposition gyni_tobl_maximizer_decomposition();

}  // namespace tobl
