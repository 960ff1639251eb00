#include <algorithm>

#include "moves_internal.hpp"
#include "revrw/errors.hpp"
#include "revrw/normalize.hpp"

namespace revrw {

bool commutes_structurally(const Gate& a, const Gate& b) {
  return a.positives().intersects(b.negatives()) || b.positives().intersects(a.negatives());
}

bool braid_compatible(const Gate& a, const Gate& b) {
  return a.lines() == b.lines() && a.target() != b.target() && !commutes_structurally(a, b);
}

namespace detail {

namespace {

bool swappable(const Gate& a, const Gate& b) {
  return commutes_structurally(a, b) || (a.target() == b.target() && a != b);
}

Bindings pair_bindings(const Gate& a, const Gate& b) {
  Bindings bind;
  bind.a = a;
  bind.b = b;
  return bind;
}

void insert_pair(Rewriter& rw, std::size_t pos, const Gate& g) {
  Bindings bind;
  bind.a = g;
  rw.apply(RuleId::R1, pos, Direction::Backward, bind);
}

void expand_over(Rewriter& rw, std::size_t k, Line l) {
  const Gate g = rw.circuit()[k];
  Bindings bind;
  bind.P = g.positives();
  bind.N = g.negatives();
  bind.q = g.target();
  bind.Q = {l};
  rw.apply(RuleId::R6, k, Direction::Forward, bind);
}

const Gate& x_at(const Rewriter& rw, std::size_t k) {
  const Gate& g = rw.circuit()[k];
  if (!g.controls().empty()) throw PreconditionError("gate " + std::to_string(k) + " is not an X gate");
  return g;
}

}  // namespace

std::size_t delta_index(const Rewriter& rw, const DeltaGateSet& d, std::size_t k) {
  const auto i = d.index_of(rw.circuit()[k]);
  if (!i) throw PreconditionError("gate " + std::to_string(k) + " is outside the path gate set");
  return *i;
}

void swap_adjacent(Rewriter& rw, std::size_t k) {
  const Gate a = rw.circuit()[k];
  const Gate b = rw.circuit()[k + 1];
  if (commutes_structurally(a, b)) {
    rw.apply(RuleId::R3, k, Direction::Forward, pair_bindings(a, b));
  } else if (a.target() == b.target() && a != b) {
    rw.apply(RuleId::R7, k, Direction::Forward, pair_bindings(a, b));
  } else {
    throw PreconditionError("gates " + std::to_string(k) + " and " + std::to_string(k + 1) + " do not commute");
  }
}

void move_gate(Rewriter& rw, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k) swap_adjacent(rw, k);
  for (std::size_t k = from; k > to; --k) swap_adjacent(rw, k - 1);
}

void x_left(Rewriter& rw, std::size_t k) {
  const Gate g = rw.circuit()[k];
  const Gate x = x_at(rw, k + 1);
  const Line l = x.target();
  if (g == x) return;
  if (g.target() == l) {
    rw.apply(RuleId::R7, k, Direction::Forward, pair_bindings(g, x));
  } else if (g.negatives().contains(l)) {
    rw.apply_matched(RuleId::R9, k, Direction::Backward);
  } else if (g.positives().contains(l)) {
    insert_pair(rw, k, x);
    rw.apply_matched(RuleId::R9, k + 1, Direction::Forward);
    rw.apply_matched(RuleId::R1, k + 2, Direction::Forward);
  } else {
    expand_over(rw, k, l);
    x_left(rw, k + 1);
    x_left(rw, k);
    swap_adjacent(rw, k + 1);
    rw.apply_matched(RuleId::R2, k + 1, Direction::Forward);
  }
}

void x_right(Rewriter& rw, std::size_t k) {
  const Gate x = x_at(rw, k);
  const Gate g = rw.circuit()[k + 1];
  const Line l = x.target();
  if (g == x) return;
  if (g.target() == l) {
    rw.apply(RuleId::R7, k, Direction::Forward, pair_bindings(x, g));
  } else if (g.positives().contains(l)) {
    rw.apply_matched(RuleId::R9, k, Direction::Forward);
  } else if (g.negatives().contains(l)) {
    insert_pair(rw, k + 2, x);
    rw.apply_matched(RuleId::R9, k + 1, Direction::Backward);
    rw.apply_matched(RuleId::R1, k, Direction::Forward);
  } else {
    expand_over(rw, k + 1, l);
    x_right(rw, k);
    x_right(rw, k + 1);
    swap_adjacent(rw, k);
    rw.apply_matched(RuleId::R2, k, Direction::Forward);
  }
}

void aba_to_bab(Rewriter& rw, std::size_t pos) {
  const Circuit& c = rw.circuit();
  if (pos + 3 > c.size()) throw OutOfRange("segment exceeds the circuit");
  const Gate A = c[pos];
  const Gate B = c[pos + 1];
  if (c[pos + 2] != A || !braid_compatible(A, B)) throw PreconditionError("segment is not A B A with braidable A, B");
  const std::vector<Line> flips = (A.negatives() | B.negatives()).to_vector();
  std::size_t s = pos;
  for (Line l : flips) {
    insert_pair(rw, s + 3, Gate::x(l));
    for (std::size_t k = s + 3; k > s; --k) x_left(rw, k - 1);
    ++s;
  }
  rw.apply_matched(RuleId::R10, s, Direction::Forward);
  for (std::size_t f = 0; f < flips.size(); ++f) {
    --s;
    for (std::size_t k = s; k < s + 3; ++k) x_right(rw, k);
    rw.apply_matched(RuleId::R1, s + 3, Direction::Forward);
  }
}

void check_palindrome(const Circuit& c, std::size_t pos, std::size_t m) {
  if (m == 0) throw PreconditionError("palindrome needs m >= 1");
  if (pos > c.size() || 2 * m - 1 > c.size() - pos) throw OutOfRange("palindrome exceeds the circuit");
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (c[pos + k] != c[pos + 2 * m - 2 - k]) throw PreconditionError("segment is not a palindrome");
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      const Gate& a = c[pos + j];
      const Gate& b = c[pos + k];
      const bool ok = k == j + 1 ? braid_compatible(a, b) : swappable(a, b);
      if (!ok) {
        throw PreconditionError("gates A_" + std::to_string(j + 1) + " and A_" + std::to_string(k + 1) +
                                (k == j + 1 ? " are not braidable" : " do not commute"));
      }
    }
  }
}

void palindrome_reverse(Rewriter& rw, std::size_t pos, std::size_t m) {
  for (; m >= 2; ++pos, --m) {
    aba_to_bab(rw, pos + m - 2);
    move_gate(rw, pos + m - 2, pos);
    move_gate(rw, pos + m, pos + 2 * m - 2);
  }
}

std::size_t reduce_pair(Rewriter& rw, const DeltaGateSet& d, std::size_t i, std::size_t a, std::size_t b,
                        Measures* measures) {
  const Circuit& c = rw.circuit();
  if (a >= b || b >= c.size() || delta_index(rw, d, a) != i || delta_index(rw, d, b) != i) {
    throw PreconditionError("positions do not hold M_" + std::to_string(i));
  }
  int sigma = 0;
  for (std::size_t k = a + 1; k < b; ++k) {
    const std::size_t j = delta_index(rw, d, k);
    if (j == i) throw PreconditionError("M_" + std::to_string(i) + " occurs between the pair");
    const int side = j > i ? 1 : -1;
    if (sigma != 0 && side != sigma) throw PreconditionError("gates between the pair lie on both sides of i");
    sigma = side;
  }
  auto dist = [&](std::size_t k) {
    const auto j = static_cast<long long>(delta_index(rw, d, k));
    return static_cast<long long>(sigma) * (j - static_cast<long long>(i));
  };
  auto count_i = [&] {
    std::size_t n = 0;
    for (const Gate& g : rw.circuit().gates()) n += g == d[i] ? 1 : 0;
    return n;
  };
  auto record = [&](std::size_t between) {
    if (measures) measures->emplace_back(count_i(), between);
  };
  record(b - a - 1);
  while (true) {
    if (b == a + 1) {
      rw.apply_matched(RuleId::R1, a, Direction::Forward);
      record(0);
      return 0;
    }
    bool cancelled = false;
    for (std::size_t k = a + 1; k + 1 < b; ++k) {
      if (rw.circuit()[k] == rw.circuit()[k + 1]) {
        rw.apply_matched(RuleId::R1, k, Direction::Forward);
        b -= 2;
        cancelled = true;
        break;
      }
    }
    if (cancelled) {
      record(b - a - 1);
      continue;
    }
    const std::size_t r = b - a - 1;
    std::size_t L = 0;
    while (L < r && dist(a + L + 1) == static_cast<long long>(L + 1)) ++L;
    std::size_t R = 0;
    while (R < r && dist(b - R - 1) == static_cast<long long>(R + 1)) ++R;
    if (L == R && r == 2 * L - 1) {
      palindrome_reverse(rw, a, L + 1);
      record(0);
      return 1;
    }
    if (L < r) {
      const auto y = static_cast<std::size_t>(dist(a + L + 1));
      if (y >= L + 2) {
        move_gate(rw, a + L + 1, a);
      } else {
        move_gate(rw, a + L + 1, a + y + 2);
        aba_to_bab(rw, a + y);
        move_gate(rw, a + y, a);
      }
      ++a;
    } else {
      const auto y = static_cast<std::size_t>(dist(b - R - 1));
      if (y >= R + 2) {
        move_gate(rw, b - R - 1, b);
      } else {
        move_gate(rw, b - R - 1, b - y - 2);
        aba_to_bab(rw, b - y - 2);
        move_gate(rw, b - y, b);
      }
      --b;
    }
    record(b - a - 1);
  }
}

std::pair<std::size_t, std::size_t> form_block(Rewriter& rw, const DeltaGateSet& d, std::size_t i, std::size_t start,
                                               std::size_t end) {
  if (start >= end || end > rw.circuit().size() || delta_index(rw, d, start) != i) {
    throw PreconditionError("block must start with M_" + std::to_string(i));
  }
  std::size_t b = start;
  std::size_t len = 1;
  while (b + len < end) {
    const std::size_t r = b + len;
    const std::size_t j = delta_index(rw, d, r);
    if (j <= i) throw PreconditionError("gate " + std::to_string(r) + " has index at most " + std::to_string(i));
    const std::size_t y = j - i;
    if (y == len) {
      ++len;
    } else if (y > len) {
      move_gate(rw, r, b);
      ++b;
    } else if (y + 1 == len) {
      rw.apply_matched(RuleId::R1, r - 1, Direction::Forward);
      --len;
      end -= 2;
    } else {
      move_gate(rw, r, b + y + 2);
      aba_to_bab(rw, b + y);
      move_gate(rw, b + y, b);
      ++b;
    }
  }
  return {b, len};
}

}  // namespace detail

RewriteTrace aba_to_bab(const Circuit& c, std::size_t position) {
  Rewriter rw(c);
  detail::aba_to_bab(rw, position);
  return std::move(rw).take_trace();
}

RewriteTrace palindrome_reverse(const Circuit& c, std::size_t position, std::size_t m) {
  detail::check_palindrome(c, position, m);
  Rewriter rw(c);
  detail::palindrome_reverse(rw, position, m);
  return std::move(rw).take_trace();
}

DoubleOccurrenceResult reduce_double_occurrence(const Circuit& c, std::size_t i, const DeltaGateSet& delta) {
  if (c.width() != delta.path.width) throw WidthMismatch("circuit and path widths differ");
  if (i >= delta.size()) throw OutOfRange("gate index outside the path gate set");
  std::vector<std::size_t> at;
  for (std::size_t k = 0; k < c.size() && at.size() < 2; ++k) {
    if (c[k] == delta[i]) at.push_back(k);
  }
  if (at.size() < 2) throw PreconditionError("M_" + std::to_string(i) + " occurs fewer than twice");
  Rewriter rw(c);
  detail::Measures measures;
  detail::reduce_pair(rw, delta, i, at[0], at[1], &measures);
  Circuit out = rw.circuit();
  return {std::move(out), std::move(rw).take_trace(), std::move(measures)};
}

std::pair<Circuit, RewriteTrace> form_block(const Circuit& c, std::size_t i, const DeltaGateSet& delta) {
  if (c.width() != delta.path.width) throw WidthMismatch("circuit and path widths differ");
  if (c.empty()) throw PreconditionError("empty circuit");
  Rewriter rw(c);
  detail::form_block(rw, delta, i, 0, c.size());
  Circuit out = rw.circuit();
  return {std::move(out), std::move(rw).take_trace()};
}

}  // namespace revrw
