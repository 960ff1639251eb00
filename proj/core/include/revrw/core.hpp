#pragma once

// Width-checked intermediate representation: bit strings, mixed-polarity
// multiple-control Toffoli (MPMCT) gates, circuits and permutations.
//
// Lines are 1-based (q_1..q_n). A bit string of width n is encoded as an
// integer with q_1 as the most significant bit, so "011" encodes to 3.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revrw {

using Line = int;

inline constexpr int kMaxWidth = 64;

/// Set of line indices in 1..64, stored as a bitmask (bit k-1 for line k),
/// so equal sets compare equal regardless of insertion order.
class LineSet {
 public:
  constexpr LineSet() = default;
  LineSet(std::initializer_list<Line> lines);
  explicit LineSet(std::span<const Line> lines);

  static constexpr LineSet from_mask(std::uint64_t mask) {
    LineSet s;
    s.mask_ = mask;
    return s;
  }
  /// All lines 1..width.
  static LineSet range(int width);

  constexpr std::uint64_t mask() const { return mask_; }
  bool contains(Line l) const;
  int size() const;
  constexpr bool empty() const { return mask_ == 0; }
  Line min() const;
  Line max() const;
  bool subset_of(LineSet other) const { return (mask_ & ~other.mask_) == 0; }
  bool intersects(LineSet other) const { return (mask_ & other.mask_) != 0; }

  LineSet with(Line l) const;
  LineSet without(Line l) const;
  /// Ascending order.
  std::vector<Line> to_vector() const;

  friend LineSet operator|(LineSet a, LineSet b) { return from_mask(a.mask_ | b.mask_); }
  friend LineSet operator&(LineSet a, LineSet b) { return from_mask(a.mask_ & b.mask_); }
  friend LineSet operator-(LineSet a, LineSet b) { return from_mask(a.mask_ & ~b.mask_); }
  friend bool operator==(LineSet, LineSet) = default;
  friend auto operator<=>(LineSet, LineSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

class BitString {
 public:
  /// `encoded` uses q_1 as the most significant of `width` bits.
  BitString(int width, std::uint64_t encoded);
  /// Parses a string of '0'/'1' characters, q_1 first.
  static BitString parse(std::string_view text);

  int width() const { return width_; }
  std::uint64_t encoded() const { return value_; }
  bool bit(Line j) const;
  BitString flipped(Line j) const;
  std::string str() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  int width_;
  std::uint64_t value_;
};

std::uint64_t encode(const BitString& s);
BitString decode(int width, std::uint64_t value);

/// Encoded-space mask of a line set for a given width.
std::uint64_t encoded_mask(LineSet lines, int width);

/// G[P, N, q]: flips `target` iff every positive control reads 1 and every
/// negative control reads 0. X[q] is G[{},{},q]; CNOT[p,q] is G[{p},{},q].
class Gate {
 public:
  Gate(LineSet positives, LineSet negatives, Line target);

  static Gate x(Line target) { return Gate({}, {}, target); }
  static Gate cnot(Line control, Line target) { return Gate({control}, {}, target); }
  static Gate toffoli(Line c1, Line c2, Line target) { return Gate({c1, c2}, {}, target); }

  LineSet positives() const { return pos_; }
  LineSet negatives() const { return neg_; }
  Line target() const { return target_; }
  LineSet controls() const { return pos_ | neg_; }
  /// Controls plus target.
  LineSet lines() const { return controls().with(target_); }
  Line max_line() const;

  bool is_full_width(int width) const;
  /// Same gate with the polarity of control `l` reversed.
  Gate with_flipped_control(Line l) const;

  friend bool operator==(const Gate&, const Gate&) = default;
  friend auto operator<=>(const Gate&, const Gate&) = default;

 private:
  LineSet pos_;
  LineSet neg_;
  Line target_;
};

bool gate_fires(const Gate& g, const BitString& s);
BitString apply_gate(const Gate& g, const BitString& s);

/// For a full-width gate, the unique pair (a, b) it exchanges, with a having
/// the target bit 0. Gates that are not full-width yield nullopt.
std::optional<std::pair<BitString, BitString>> gate_exchanges(const Gate& g, int width);

/// Width-annotated gate sequence; the leftmost gate executes first.
class Circuit {
 public:
  explicit Circuit(int width);
  Circuit(int width, std::vector<Gate> gates);

  int width() const { return width_; }
  std::span<const Gate> gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  void push_back(const Gate& g);
  void append(std::span<const Gate> gs);
  /// Replaces `removed` gates at `pos` with `inserted`.
  void splice(std::size_t pos, std::size_t removed, std::span<const Gate> inserted);
  Circuit segment(std::size_t pos, std::size_t count) const;
  /// Throws OutOfRange if `g` uses a line above the circuit width.
  void check_gate(const Gate& g) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int width_;
  std::vector<Gate> gates_;
};

Circuit inverse(const Circuit& c);
Circuit concat(const Circuit& a, const Circuit& b);
/// Adds `q` as a positive control to every gate. `q` must not occur in `c`.
Circuit control_extend(const Circuit& c, Line q);

/// Bijection on width-n strings, indexed by encoded input.
class Permutation {
 public:
  static Permutation identity(int width);
  Permutation(int width, std::vector<std::uint64_t> images);

  int width() const { return width_; }
  std::size_t size() const { return images_.size(); }
  std::span<const std::uint64_t> images() const { return images_; }
  std::uint64_t operator()(std::uint64_t x) const { return images_[x]; }
  BitString operator()(const BitString& s) const;

  Permutation inverse() const;
  /// x -> next(this(x)).
  Permutation then(const Permutation& next) const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  int width_;
  std::vector<std::uint64_t> images_;
};

}  // namespace revrw
