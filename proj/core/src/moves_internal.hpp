#pragma once

// Rewriter-level building blocks shared by the normalization sources.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "revrw/canon.hpp"
#include "revrw/rules.hpp"

namespace revrw::detail {

std::optional<std::pair<std::size_t, std::size_t>> closest_equal_pair(const std::vector<Line>& v);

/// Full-width gate exchanging two Hamming-adjacent encoded strings.
Gate exchange_gate(int width, std::uint64_t a, std::uint64_t b);

std::size_t delta_index(const Rewriter& rw, const DeltaGateSet& d, std::size_t k);

/// Swaps gates k and k+1 with R3 or R7.
void swap_adjacent(Rewriter& rw, std::size_t k);
void move_gate(Rewriter& rw, std::size_t from, std::size_t to);

/// G X[l] at k becomes X[l] G', G' having the polarity of l reversed.
void x_left(Rewriter& rw, std::size_t k);
/// X[l] G at k becomes G' X[l].
void x_right(Rewriter& rw, std::size_t k);

void aba_to_bab(Rewriter& rw, std::size_t pos);
void check_palindrome(const Circuit& c, std::size_t pos, std::size_t m);
void palindrome_reverse(Rewriter& rw, std::size_t pos, std::size_t m);

using Measures = std::vector<std::pair<std::size_t, std::size_t>>;

/// M_i at a and b with no M_i between. Returns occurrences left in the span.
std::size_t reduce_pair(Rewriter& rw, const DeltaGateSet& d, std::size_t i, std::size_t a, std::size_t b,
                        Measures* measures);

/// M_i at start, gates of larger index up to end. Returns (block start, length).
std::pair<std::size_t, std::size_t> form_block(Rewriter& rw, const DeltaGateSet& d, std::size_t i,
                                               std::size_t start, std::size_t end);

}  // namespace revrw::detail
