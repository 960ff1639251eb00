#include <algorithm>

#include "moves_internal.hpp"
#include "revrw/errors.hpp"
#include "revrw/normalize.hpp"

namespace revrw {

BitString generate(const CoordinateSequence& omega, const BitString& b0) {
  if (omega.width != b0.width()) throw WidthMismatch("coordinate sequence and string widths differ");
  BitString b = b0;
  for (Line m : omega.entries) {
    if (m < 1 || m > omega.width) throw OutOfRange("coordinate " + std::to_string(m) + " outside 1.." +
                                                   std::to_string(omega.width));
    b = b.flipped(m);
  }
  return b;
}

CoordinateSequence apply_edit(const CoordinateSequence& omega, const CoordinateEdit& e) {
  if (e.index + 1 >= omega.entries.size()) throw OutOfRange("edit index outside the sequence");
  CoordinateSequence out = omega;
  auto it = out.entries.begin() + static_cast<std::ptrdiff_t>(e.index);
  if (e.kind == CoordinateEdit::Kind::Swap) {
    std::iter_swap(it, it + 1);
  } else {
    if (*it != *(it + 1)) throw PreconditionError("deleted entries differ");
    out.entries.erase(it, it + 2);
  }
  return out;
}

namespace detail {

/// Closest equal pair (g, h), leftmost on ties.
std::optional<std::pair<std::size_t, std::size_t>> closest_equal_pair(const std::vector<Line>& v) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t g = 0; g < v.size(); ++g) {
    for (std::size_t h = g + 1; h < v.size(); ++h) {
      if (v[h] != v[g]) continue;
      if (!best || h - g < best->second - best->first) best = {g, h};
      break;
    }
  }
  return best;
}

}  // namespace detail

CoordinateReduction reduce_coordinates(const CoordinateSequence& omega) {
  CoordinateReduction r{omega, {}};
  while (auto pair = detail::closest_equal_pair(r.result.entries)) {
    const auto [g, h] = *pair;
    for (std::size_t k = h; k > g + 1; --k) {
      r.edits.push_back({CoordinateEdit::Kind::Swap, k - 1});
      r.result = apply_edit(r.result, r.edits.back());
    }
    r.edits.push_back({CoordinateEdit::Kind::Delete, g});
    r.result = apply_edit(r.result, r.edits.back());
  }
  return r;
}

}  // namespace revrw
