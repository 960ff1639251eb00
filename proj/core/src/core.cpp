#include "revrw/core.hpp"

#include <algorithm>
#include <bit>

#include "revrw/errors.hpp"

namespace revrw {

namespace {

void check_line(Line l) {
  if (l < 1 || l > kMaxWidth) {
    throw OutOfRange("line index " + std::to_string(l) + " outside 1.." + std::to_string(kMaxWidth));
  }
}

std::uint64_t bit_of(Line l) { return std::uint64_t{1} << (l - 1); }

void check_width(int width) {
  if (width < 1 || width > kMaxWidth) {
    throw OutOfRange("width " + std::to_string(width) + " outside 1.." + std::to_string(kMaxWidth));
  }
}

}  // namespace

// --- LineSet ---------------------------------------------------------------

LineSet::LineSet(std::initializer_list<Line> lines) {
  for (Line l : lines) {
    check_line(l);
    mask_ |= bit_of(l);
  }
}

LineSet::LineSet(std::span<const Line> lines) {
  for (Line l : lines) {
    check_line(l);
    mask_ |= bit_of(l);
  }
}

LineSet LineSet::range(int width) {
  check_width(width);
  return from_mask(width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1);
}

bool LineSet::contains(Line l) const { return l >= 1 && l <= kMaxWidth && (mask_ & bit_of(l)) != 0; }

int LineSet::size() const { return std::popcount(mask_); }

Line LineSet::min() const {
  if (mask_ == 0) throw OutOfRange("min of empty line set");
  return std::countr_zero(mask_) + 1;
}

Line LineSet::max() const {
  if (mask_ == 0) throw OutOfRange("max of empty line set");
  return 64 - std::countl_zero(mask_);
}

LineSet LineSet::with(Line l) const {
  check_line(l);
  return from_mask(mask_ | bit_of(l));
}

LineSet LineSet::without(Line l) const {
  check_line(l);
  return from_mask(mask_ & ~bit_of(l));
}

std::vector<Line> LineSet::to_vector() const {
  std::vector<Line> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

// --- BitString -------------------------------------------------------------

BitString::BitString(int width, std::uint64_t encoded) : width_(width), value_(encoded) {
  check_width(width);
  if (width < 64 && (encoded >> width) != 0) {
    throw OutOfRange("value " + std::to_string(encoded) + " does not fit in width " + std::to_string(width));
  }
}

BitString BitString::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxWidth)) {
    throw OutOfRange("bit string length must be 1.." + std::to_string(kMaxWidth));
  }
  std::uint64_t v = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw OutOfRange("bit string contains '" + std::string(1, ch) + "'");
    v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return BitString(static_cast<int>(text.size()), v);
}

bool BitString::bit(Line j) const {
  if (j < 1 || j > width_) throw OutOfRange("line " + std::to_string(j) + " outside bit string");
  return ((value_ >> (width_ - j)) & 1U) != 0;
}

BitString BitString::flipped(Line j) const {
  if (j < 1 || j > width_) throw OutOfRange("line " + std::to_string(j) + " outside bit string");
  return BitString(width_, value_ ^ (std::uint64_t{1} << (width_ - j)));
}

std::string BitString::str() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int j = 1; j <= width_; ++j) {
    if (bit(j)) out[static_cast<std::size_t>(j - 1)] = '1';
  }
  return out;
}

std::uint64_t encode(const BitString& s) { return s.encoded(); }

BitString decode(int width, std::uint64_t value) { return BitString(width, value); }

std::uint64_t encoded_mask(LineSet lines, int width) {
  std::uint64_t out = 0;
  for (Line l : lines.to_vector()) {
    if (l > width) throw OutOfRange("line " + std::to_string(l) + " exceeds width " + std::to_string(width));
    out |= std::uint64_t{1} << (width - l);
  }
  return out;
}

// --- Gate ------------------------------------------------------------------

Gate::Gate(LineSet positives, LineSet negatives, Line target) : pos_(positives), neg_(negatives), target_(target) {
  check_line(target);
  if (pos_.intersects(neg_)) throw InvalidGate("a line is both a positive and a negative control");
  if (pos_.contains(target) || neg_.contains(target)) throw InvalidGate("target line is also a control");
}

Line Gate::max_line() const { return lines().max(); }

bool Gate::is_full_width(int width) const { return lines() == LineSet::range(width); }

Gate Gate::with_flipped_control(Line l) const {
  if (pos_.contains(l)) return Gate(pos_.without(l), neg_.with(l), target_);
  if (neg_.contains(l)) return Gate(pos_.with(l), neg_.without(l), target_);
  throw PreconditionError("line " + std::to_string(l) + " is not a control");
}

bool gate_fires(const Gate& g, const BitString& s) {
  if (g.max_line() > s.width()) {
    throw OutOfRange("gate uses line " + std::to_string(g.max_line()) + " beyond width " + std::to_string(s.width()));
  }
  const std::uint64_t pos = encoded_mask(g.positives(), s.width());
  const std::uint64_t neg = encoded_mask(g.negatives(), s.width());
  return (s.encoded() & pos) == pos && (s.encoded() & neg) == 0;
}

BitString apply_gate(const Gate& g, const BitString& s) {
  return gate_fires(g, s) ? s.flipped(g.target()) : s;
}

std::optional<std::pair<BitString, BitString>> gate_exchanges(const Gate& g, int width) {
  if (!g.is_full_width(width)) return std::nullopt;
  const std::uint64_t a = encoded_mask(g.positives(), width);
  const std::uint64_t b = a | (std::uint64_t{1} << (width - g.target()));
  return std::make_pair(BitString(width, a), BitString(width, b));
}

// --- Circuit ---------------------------------------------------------------

Circuit::Circuit(int width) : width_(width) { check_width(width); }

Circuit::Circuit(int width, std::vector<Gate> gates) : width_(width), gates_(std::move(gates)) {
  check_width(width);
  for (const Gate& g : gates_) check_gate(g);
}

void Circuit::check_gate(const Gate& g) const {
  if (g.max_line() > width_) {
    throw OutOfRange("gate uses line " + std::to_string(g.max_line()) + " beyond circuit width " +
                     std::to_string(width_));
  }
}

void Circuit::push_back(const Gate& g) {
  check_gate(g);
  gates_.push_back(g);
}

void Circuit::append(std::span<const Gate> gs) {
  for (const Gate& g : gs) check_gate(g);
  gates_.insert(gates_.end(), gs.begin(), gs.end());
}

void Circuit::splice(std::size_t pos, std::size_t removed, std::span<const Gate> inserted) {
  if (pos > gates_.size() || removed > gates_.size() - pos) {
    throw OutOfRange("splice range [" + std::to_string(pos) + ", " + std::to_string(pos + removed) +
                     ") outside circuit of " + std::to_string(gates_.size()) + " gates");
  }
  for (const Gate& g : inserted) check_gate(g);
  const auto first = gates_.begin() + static_cast<std::ptrdiff_t>(pos);
  const std::size_t common = std::min(removed, inserted.size());
  std::copy_n(inserted.begin(), common, first);
  if (removed > common) {
    gates_.erase(first + static_cast<std::ptrdiff_t>(common), first + static_cast<std::ptrdiff_t>(removed));
  } else if (inserted.size() > common) {
    gates_.insert(first + static_cast<std::ptrdiff_t>(common), inserted.begin() + static_cast<std::ptrdiff_t>(common),
                  inserted.end());
  }
}

Circuit Circuit::segment(std::size_t pos, std::size_t count) const {
  if (pos > gates_.size() || count > gates_.size() - pos) throw OutOfRange("segment outside circuit");
  const auto first = gates_.begin() + static_cast<std::ptrdiff_t>(pos);
  return Circuit(width_, std::vector<Gate>(first, first + static_cast<std::ptrdiff_t>(count)));
}

Circuit inverse(const Circuit& c) {
  std::vector<Gate> gs(c.gates().rbegin(), c.gates().rend());
  return Circuit(c.width(), std::move(gs));
}

Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.width() != b.width()) throw WidthMismatch("concat of circuits with different widths");
  Circuit out = a;
  out.append(b.gates());
  return out;
}

Circuit control_extend(const Circuit& c, Line q) {
  if (q < 1 || q > c.width()) throw OutOfRange("control line outside circuit width");
  std::vector<Gate> gs;
  gs.reserve(c.size());
  for (const Gate& g : c.gates()) {
    if (g.lines().contains(q)) throw PreconditionError("line " + std::to_string(q) + " already occurs in the circuit");
    gs.emplace_back(g.positives().with(q), g.negatives(), g.target());
  }
  return Circuit(c.width(), std::move(gs));
}

// --- Permutation -----------------------------------------------------------

Permutation Permutation::identity(int width) {
  if (width < 1 || width > 32) throw OutOfRange("permutation width must be 1..32");
  std::vector<std::uint64_t> images(std::size_t{1} << width);
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = i;
  return Permutation(width, std::move(images));
}

Permutation::Permutation(int width, std::vector<std::uint64_t> images) : width_(width), images_(std::move(images)) {
  if (width < 1 || width > 32) throw OutOfRange("permutation width must be 1..32");
  if (images_.size() != (std::size_t{1} << width)) throw OutOfRange("permutation needs 2^width images");
  std::vector<bool> seen(images_.size(), false);
  for (std::uint64_t y : images_) {
    if (y >= images_.size() || seen[y]) throw PreconditionError("images do not form a bijection");
    seen[y] = true;
  }
}

BitString Permutation::operator()(const BitString& s) const {
  if (s.width() != width_) throw WidthMismatch("bit string width differs from permutation width");
  return BitString(width_, images_[s.encoded()]);
}

Permutation Permutation::inverse() const {
  std::vector<std::uint64_t> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = x;
  return Permutation(width_, std::move(inv));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.width_ != width_) throw WidthMismatch("composing permutations of different widths");
  std::vector<std::uint64_t> out(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out[x] = next.images_[images_[x]];
  return Permutation(width_, std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

}  // namespace revrw
