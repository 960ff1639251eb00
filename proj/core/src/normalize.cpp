#include <algorithm>
#include <bit>
#include <tuple>

#include "moves_internal.hpp"
#include "revrw/errors.hpp"
#include "revrw/normalize.hpp"

namespace revrw {

namespace {

using Walk = std::vector<std::uint64_t>;

Line flipped_line(int n, std::uint64_t a, std::uint64_t b) { return n - std::countr_zero(a ^ b); }

bool bit_of(int n, std::uint64_t v, Line l) { return ((v >> (n - l)) & 1U) != 0; }

bool simple(const Walk& w) {
  Walk sorted = w;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<Gate> walk_palindrome(int n, const Walk& w) {
  std::vector<Gate> gs;
  const std::size_t r = w.size() - 1;
  for (std::size_t k = 0; k < r; ++k) gs.push_back(detail::exchange_gate(n, w[k], w[k + 1]));
  for (std::size_t k = r - 1; k-- > 0;) gs.push_back(gs[k]);
  return gs;
}

bool segment_is(const Circuit& c, std::size_t pos, const std::vector<Gate>& gs) {
  if (pos + gs.size() > c.size()) return false;
  return std::equal(gs.begin(), gs.end(), c.gates().begin() + static_cast<std::ptrdiff_t>(pos));
}

/// Walk b_0..b_r traced by the left half of the palindrome at pos.
Walk palindrome_walk(const Circuit& c, std::size_t pos, std::size_t len) {
  if (len % 2 == 0 || pos + len > c.size()) throw PreconditionError("palindrome must have odd length");
  const int n = c.width();
  const std::size_t r = (len + 1) / 2;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ex;
  for (std::size_t k = 0; k < r; ++k) {
    if (c[pos + k] != c[pos + len - 1 - k]) throw PreconditionError("segment is not a palindrome");
    const auto e = gate_exchanges(c[pos + k], n);
    if (!e) throw PreconditionError("gate " + std::to_string(pos + k) + " is not full-width");
    ex.emplace_back(e->first.encoded(), e->second.encoded());
  }
  Walk w;
  if (r == 1) return {ex[0].first, ex[0].second};
  const auto [x0, y0] = ex[0];
  const auto [x1, y1] = ex[1];
  const std::uint64_t shared = (x0 == x1 || x0 == y1) ? x0 : y0;
  if (shared != x1 && shared != y1) throw PreconditionError("first two gates share no string");
  w.push_back(shared == x0 ? y0 : x0);
  w.push_back(shared);
  for (std::size_t k = 1; k < r; ++k) {
    const auto [x, y] = ex[k];
    if (w.back() != x && w.back() != y) throw PreconditionError("gates do not trace a walk");
    w.push_back(w.back() == x ? y : x);
  }
  if (!simple(w)) throw PreconditionError("palindrome walk revisits a string");
  return w;
}

/// Shortens the walk by two edges. Returns the new walk.
Walk shorten_walk(Rewriter& rw, std::size_t s, const Walk& w) {
  const int n = rw.circuit().width();
  const std::size_t r = w.size() - 1;
  std::vector<Line> coord(r);
  for (std::size_t k = 0; k < r; ++k) coord[k] = flipped_line(n, w[k], w[k + 1]);

  auto reduced = [&](std::size_t g, std::size_t h) {
    const std::uint64_t tm = std::uint64_t{1} << (n - coord[g]);
    Walk out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(g + 1));
    for (std::size_t k = g + 2; k <= h; ++k) out.push_back(w[k] ^ tm);
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(h + 2), w.end());
    return out;
  };

  std::vector<std::pair<std::size_t, std::size_t>> cands;
  for (std::size_t g = 0; g < r; ++g) {
    for (std::size_t h = g + 1; h < r; ++h) {
      if (coord[h] == coord[g]) {
        cands.emplace_back(g, h);
        break;
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const auto& x, const auto& y) { return x.second - x.first < y.second - y.first; });
  std::optional<std::pair<std::size_t, std::size_t>> pick;
  Walk next;
  for (const auto& [g, h] : cands) {
    if (h < g + 2) continue;
    next = reduced(g, h);
    if (simple(next)) {
      pick = std::make_pair(g, h);
      break;
    }
  }
  if (!pick) throw PreconditionError("palindrome does not collapse to a single gate");
  const auto [g, h] = *pick;
  const Line t = coord[g];
  const std::size_t T = r - 1 - h;
  const std::size_t m = h - g - 1;

  if (h + 1 < r) detail::palindrome_reverse(rw, s + h, r - h);
  for (std::size_t k = 0; k < T; ++k) detail::move_gate(rw, s + h + k, s + g + k);
  const std::size_t r0 = s + r;
  for (std::size_t k = 0; k <= h - g - 1; ++k) detail::move_gate(rw, r0 + T + k, r0 + k);
  detail::palindrome_reverse(rw, s + g + T + 1, h - g);

  // Conjugate by X gates so the segment matches the R5 left side exactly.
  const std::size_t p0 = s + g + T;
  const std::uint64_t mid = w[g + 1];
  std::vector<Line> flips;
  LineSet q_lines;
  for (std::size_t k = g + 1; k < h; ++k) q_lines = q_lines.with(coord[k]);
  for (Line l : q_lines.to_vector()) {
    if (bit_of(n, mid, l)) flips.push_back(l);
  }
  if (!bit_of(n, mid, t)) flips.push_back(t);
  std::size_t p = p0;
  for (Line l : flips) {
    Bindings bind;
    bind.a = Gate::x(l);
    rw.apply(RuleId::R1, p, Direction::Backward, bind);
    for (std::size_t k = 0; k < 2 * m + 3; ++k) detail::x_right(rw, p + 1 + k);
    ++p;
  }
  rw.apply_matched(RuleId::R5, p, Direction::Forward);
  for (std::size_t f = 0; f < flips.size(); ++f) {
    const std::size_t px = p - 1;
    for (std::size_t k = 0; k < 2 * m - 1; ++k) detail::x_right(rw, px + k);
    rw.apply_matched(RuleId::R1, px + 2 * m - 1, Direction::Forward);
    p = px;
  }
  if (T + m >= 2) detail::palindrome_reverse(rw, s + g, T + m);

  if (!segment_is(rw.circuit(), s, walk_palindrome(n, next))) {
    throw Error("internal: palindrome shortening produced an unexpected circuit");
  }
  return next;
}

Gate collapse_palindrome(Rewriter& rw, std::size_t s, std::size_t len) {
  Walk w = palindrome_walk(rw.circuit(), s, len);
  while (w.size() > 2) w = shorten_walk(rw, s, w);
  return rw.circuit()[s];
}

std::size_t widen_at(Rewriter& rw, std::size_t pos) {
  const Gate& g = rw.circuit()[pos];
  const int free = (LineSet::range(rw.circuit().width()) - g.lines()).size();
  if (free == 0) return 1;
  rw.apply_matched(RuleId::R6, pos, Direction::Forward);
  return std::size_t{1} << free;
}

std::size_t decompose_at(Rewriter& rw, const DeltaGateSet& d, std::size_t pos) {
  const Gate g = rw.circuit()[pos];
  if (d.index_of(g)) return 1;
  const auto ex = gate_exchanges(g, rw.circuit().width());
  if (!ex) throw PreconditionError("gate " + std::to_string(pos) + " is not full-width");
  std::size_t i = d.path.index_of[ex->first.encoded()];
  std::size_t j = d.path.index_of[ex->second.encoded()];
  if (i > j) std::swap(i, j);
  std::vector<Gate> gs;
  for (std::size_t k = i; k < j; ++k) gs.push_back(d[k]);
  for (std::size_t k = j - 1; k-- > i;) gs.push_back(d[k]);
  const std::size_t n = gs.size();
  rw.apply_macro(pos, 1, std::move(gs));
  return n;
}

std::size_t count_of(const Rewriter& rw, const Gate& g, std::size_t end, std::size_t* first, std::size_t* second) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < end; ++k) {
    if (rw.circuit()[k] != g) continue;
    if (n == 0) *first = k;
    if (n == 1) *second = k;
    ++n;
  }
  return n;
}

CanonicalForm canonicalize_in_place(Rewriter& rw, const DeltaGateSet& d) {
  const Circuit& c = rw.circuit();
  if (c.width() != d.path.width) throw WidthMismatch("circuit and path widths differ");
  for (std::size_t k = 0; k < c.size(); ++k) detail::delta_index(rw, d, k);
  std::vector<Block> formed;
  std::size_t suffix = 0;
  std::size_t t = 0;
  while (rw.circuit().size() > suffix) {
    bool placed = false;
    for (; t < d.size(); ++t) {
      std::size_t first = 0;
      std::size_t second = 0;
      std::size_t end = rw.circuit().size() - suffix;
      while (count_of(rw, d[t], end, &first, &second) >= 2) {
        detail::reduce_pair(rw, d, t, first, second, nullptr);
        end = rw.circuit().size() - suffix;
      }
      if (count_of(rw, d[t], end, &first, &second) == 1) {
        const auto [start, len] = detail::form_block(rw, d, t, first, end);
        formed.push_back({t, len});
        suffix += len;
        ++t;
        placed = true;
        break;
      }
    }
    if (!placed && rw.circuit().size() > suffix) throw Error("internal: gates left after every index was processed");
  }
  CanonicalForm f;
  f.width = d.path.width;
  f.path_name = d.path.name;
  f.blocks.assign(formed.rbegin(), formed.rend());
  return f;
}

}  // namespace

std::pair<CanonicalForm, RewriteTrace> canonicalize_delta(const Circuit& c, const DeltaGateSet& delta) {
  Rewriter rw(c);
  CanonicalForm f = canonicalize_in_place(rw, delta);
  return {std::move(f), std::move(rw).take_trace()};
}

std::pair<Circuit, RewriteTrace> widen_gates(const Circuit& c) {
  Rewriter rw(c);
  for (std::size_t pos = 0; pos < rw.circuit().size();) pos += widen_at(rw, pos);
  Circuit out = rw.circuit();
  return {std::move(out), std::move(rw).take_trace()};
}

std::pair<Circuit, RewriteTrace> decompose_to_delta(const Gate& m, const DeltaGateSet& delta) {
  Circuit c(delta.path.width);
  c.push_back(m);
  Rewriter rw(c);
  decompose_at(rw, delta, 0);
  Circuit out = rw.circuit();
  return {std::move(out), std::move(rw).take_trace()};
}

std::pair<Gate, RewriteTrace> reduce_palindrome_to_gate(const Circuit& c, const DeltaGateSet& delta) {
  if (c.width() != delta.path.width) throw WidthMismatch("circuit and path widths differ");
  if (c.empty()) throw PreconditionError("empty circuit");
  Rewriter rw(c);
  Gate g = collapse_palindrome(rw, 0, c.size());
  return {g, std::move(rw).take_trace()};
}

std::pair<CanonicalForm, RewriteTrace> canonicalize(const Circuit& c, const HamiltonianPath& path,
                                                    const CanonOptions& opts) {
  if (c.width() > opts.max_width) throw WidthCapExceeded(c.width(), opts.max_width);
  if (c.width() != path.width) throw WidthMismatch("circuit and path widths differ");
  const DeltaGateSet d = delta_gates(path);
  Rewriter rw(c);
  for (std::size_t pos = 0; pos < rw.circuit().size();) pos += widen_at(rw, pos);
  for (std::size_t pos = 0; pos < rw.circuit().size();) pos += decompose_at(rw, d, pos);
  CanonicalForm f = canonicalize_in_place(rw, d);
  return {std::move(f), std::move(rw).take_trace()};
}

EquivalenceResult equivalent(const Circuit& a, const Circuit& b, const HamiltonianPath& path,
                             const CanonOptions& opts) {
  if (a.width() != b.width()) throw WidthMismatch("circuit widths differ");
  auto [fa, ta] = canonicalize(a, path, opts);
  auto [fb, tb] = canonicalize(b, path, opts);
  EquivalenceResult r;
  r.equivalent = fa == fb;
  r.form_a = std::move(fa);
  r.form_b = std::move(fb);
  if (r.equivalent) {
    r.certificate = concat_traces(ta, reverse_trace(tb));
  } else {
    r.witness = first_difference(a, b, opts.sim);
  }
  return r;
}

}  // namespace revrw
