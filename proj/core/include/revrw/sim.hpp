#pragma once

// Exhaustive truth-table simulation.

#include <optional>

#include "revrw/core.hpp"

namespace revrw {

struct SimOptions {
  int max_width = 16;
};

/// images[x] is the output for encoded input x. Throws WidthCapExceeded above
/// `opts.max_width`.
Permutation simulate(const Circuit& c, const SimOptions& opts = {});

bool equivalent_by_sim(const Circuit& a, const Circuit& b, const SimOptions& opts = {});

/// Smallest encoded input on which the two circuits disagree.
std::optional<BitString> first_difference(const Circuit& a, const Circuit& b, const SimOptions& opts = {});

/// Transposition of `a` and `b`.
Permutation permutation_of_exchange(const BitString& a, const BitString& b);

}  // namespace revrw
