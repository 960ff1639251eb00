#include "revrw/rules.hpp"

#include <algorithm>
#include <array>

#include "revrw/errors.hpp"

namespace revrw {

namespace {

bool distinct_lines(const std::vector<Line>& v) {
  LineSet seen;
  for (Line l : v) {
    if (l < 1 || l > kMaxWidth || seen.contains(l)) return false;
    seen = seen.with(l);
  }
  return true;
}

bool valid_line(Line l) { return l >= 1 && l <= kMaxWidth; }

std::optional<RuleSides> build(RuleId rule, const Bindings& b) {
  RuleSides s;
  switch (rule) {
    case RuleId::R1: {
      if (!b.a) return std::nullopt;
      s.lhs = {*b.a, *b.a};
      return s;
    }
    case RuleId::R2: {
      if (!valid_line(b.p) || !valid_line(b.q) || b.P.contains(b.p) || b.N.contains(b.p)) return std::nullopt;
      s.lhs = {Gate(b.P, b.N.with(b.p), b.q), Gate(b.P.with(b.p), b.N, b.q)};
      s.rhs = {Gate(b.P, b.N, b.q)};
      return s;
    }
    case RuleId::R3: {
      if (!b.a || !b.b) return std::nullopt;
      const Gate& x = *b.a;
      const Gate& y = *b.b;
      if (!x.positives().intersects(y.negatives()) && !y.positives().intersects(x.negatives())) return std::nullopt;
      s.lhs = {x, y};
      s.rhs = {y, x};
      return s;
    }
    case RuleId::R4: {
      if (b.variant != 1 && b.variant != 2) return std::nullopt;
      if (!valid_line(b.p) || !valid_line(b.q) || b.p == b.q) return std::nullopt;
      const LineSet rest = b.P | b.N;
      if (rest.contains(b.p) || rest.contains(b.q)) return std::nullopt;
      const Gate A = Gate::cnot(b.p, b.q);
      const Gate B = Gate::cnot(b.q, b.p);
      const Gate C1 = b.variant == 1 ? Gate(b.P.with(b.q), b.N, b.p) : Gate(b.P, b.N.with(b.q), b.p);
      const Gate C2 = b.variant == 1 ? Gate(b.P.with(b.p), b.N, b.q) : Gate(b.P, b.N.with(b.p), b.q);
      s.lhs = {A, B, A, C1};
      s.rhs = {C2, A, B, A};
      return s;
    }
    case RuleId::R5: {
      const std::size_t m = b.Q.size();
      if (m == 0 || !distinct_lines(b.Q) || !valid_line(b.q)) return std::nullopt;
      const LineSet Q(b.Q);
      if (Q.contains(b.q) || Q.intersects(b.P | b.N) || b.P.contains(b.q) || b.N.contains(b.q)) return std::nullopt;
      const LineSet Pp = b.P.with(b.q);
      const LineSet Np = b.N.with(b.q);
      std::vector<Gate> B, Bp;
      for (std::size_t i = 0; i < m; ++i) {
        LineSet above, below;
        for (std::size_t k = i + 1; k < m; ++k) above = above.with(b.Q[k]);
        for (std::size_t k = 0; k < i; ++k) below = below.with(b.Q[k]);
        B.emplace_back(Pp | above, b.N | below, b.Q[i]);
        Bp.emplace_back(b.P | above, Np | below, b.Q[i]);
      }
      const Gate A0(b.P, b.N | Q, b.q);
      const Gate A1(b.P | Q, b.N, b.q);
      s.lhs = {A0, A1};
      for (std::size_t i = 0; i < m; ++i) s.lhs.push_back(B[i]);
      for (std::size_t i = m - 1; i-- > 0;) s.lhs.push_back(B[i]);
      s.lhs.push_back(A1);
      s.lhs.push_back(A0);
      for (std::size_t i = 0; i < m; ++i) s.rhs.push_back(Bp[i]);
      for (std::size_t i = m - 1; i-- > 0;) s.rhs.push_back(Bp[i]);
      return s;
    }
    case RuleId::R6: {
      const std::size_t m = b.Q.size();
      if (m == 0 || m > 20 || !std::is_sorted(b.Q.begin(), b.Q.end()) || !distinct_lines(b.Q) || !valid_line(b.q)) {
        return std::nullopt;
      }
      const LineSet Q(b.Q);
      if (Q.contains(b.q) || Q.intersects(b.P | b.N)) return std::nullopt;
      s.lhs = {Gate(b.P, b.N, b.q)};
      for (std::size_t i = 0; i < (std::size_t{1} << m); ++i) {
        LineSet Qi;
        for (std::size_t k = 0; k < m; ++k) {
          if ((i >> (m - 1 - k)) & 1U) Qi = Qi.with(b.Q[k]);
        }
        s.rhs.emplace_back(b.P | Qi, b.N | (Q - Qi), b.q);
      }
      return s;
    }
    case RuleId::R7: {
      if (!b.a || !b.b || b.a->target() != b.b->target() || *b.a == *b.b) return std::nullopt;
      s.lhs = {*b.a, *b.b};
      s.rhs = {*b.b, *b.a};
      return s;
    }
    case RuleId::R8: {
      if (b.N.empty() || !valid_line(b.q) || b.N.contains(b.q)) return std::nullopt;
      const Gate B(b.P | b.N, {}, b.q);
      s.lhs = {Gate(b.P, b.N, b.q)};
      const auto xs = b.N.to_vector();
      for (Line l : xs) s.rhs.push_back(Gate::x(l));
      s.rhs.push_back(B);
      for (Line l : xs) s.rhs.push_back(Gate::x(l));
      return s;
    }
    case RuleId::R9: {
      if (!valid_line(b.p) || !valid_line(b.q)) return std::nullopt;
      if (!b.P1.subset_of(b.P2) || !b.N1.subset_of(b.N2)) return std::nullopt;
      if (b.P2.contains(b.p) || b.N2.contains(b.p)) return std::nullopt;
      const Gate A(b.P1, b.N1, b.p);
      s.lhs = {A, Gate(b.P2.with(b.p), b.N2, b.q)};
      s.rhs = {Gate(b.P2, b.N2.with(b.p), b.q), A};
      return s;
    }
    case RuleId::R10: {
      if (!valid_line(b.p) || !valid_line(b.q) || b.p == b.q) return std::nullopt;
      if (b.P.contains(b.p) || b.P.contains(b.q)) return std::nullopt;
      const Gate A(b.P.with(b.p), {}, b.q);
      const Gate B(b.P.with(b.q), {}, b.p);
      s.lhs = {A, B, A};
      s.rhs = {B, A, B};
      return s;
    }
  }
  return std::nullopt;
}

bool segment_equals(const Circuit& c, std::size_t pos, const std::vector<Gate>& gs) {
  if (pos > c.size() || gs.size() > c.size() - pos) return false;
  return std::equal(gs.begin(), gs.end(), c.gates().begin() + static_cast<std::ptrdiff_t>(pos));
}

std::optional<RuleInstance> confirm(const Circuit& c, RuleId rule, std::size_t pos, Direction dir, Bindings b) {
  RuleInstance inst{rule, pos, dir, std::move(b)};
  const auto sides = inst.sides();
  if (!sides || !segment_equals(c, pos, sides->first)) return std::nullopt;
  for (const Gate& g : sides->second) {
    if (g.max_line() > c.width()) return std::nullopt;
  }
  return inst;
}

std::optional<Bindings> bind_r2_forward(const Gate& a0, const Gate& a1) {
  const LineSet gained = a1.positives() - a0.positives();
  if (a0.target() != a1.target() || gained.size() != 1) return std::nullopt;
  Bindings b;
  b.P = a0.positives();
  b.N = a1.negatives();
  b.p = gained.min();
  b.q = a0.target();
  return b;
}

std::optional<RuleInstance> match_forward(const Circuit& c, RuleId rule, std::size_t pos) {
  const std::size_t avail = c.size() - pos;
  const Gate& g0 = c[pos];
  Bindings b;
  switch (rule) {
    case RuleId::R1:
      if (avail < 2 || c[pos + 1] != g0) return std::nullopt;
      b.a = g0;
      break;
    case RuleId::R2: {
      if (avail < 2) return std::nullopt;
      auto r = bind_r2_forward(g0, c[pos + 1]);
      if (!r) return std::nullopt;
      b = *r;
      break;
    }
    case RuleId::R3:
    case RuleId::R7:
      if (avail < 2) return std::nullopt;
      b.a = g0;
      b.b = c[pos + 1];
      break;
    case RuleId::R4: {
      if (avail < 4 || !g0.negatives().empty() || g0.positives().size() != 1) return std::nullopt;
      b.p = g0.positives().min();
      b.q = g0.target();
      const Gate& c1 = c[pos + 3];
      if (c1.target() != b.p) return std::nullopt;
      if (c1.positives().contains(b.q)) {
        b.variant = 1;
        b.P = c1.positives().without(b.q);
        b.N = c1.negatives();
      } else if (c1.negatives().contains(b.q)) {
        b.variant = 2;
        b.P = c1.positives();
        b.N = c1.negatives().without(b.q);
      } else {
        return std::nullopt;
      }
      break;
    }
    case RuleId::R5: {
      if (avail < 5) return std::nullopt;
      const Gate& a1 = c[pos + 1];
      if (a1.target() != g0.target()) return std::nullopt;
      const LineSet Q = g0.negatives() - a1.negatives();
      if (Q.empty() || a1.positives() - g0.positives() != Q) return std::nullopt;
      const std::size_t m = static_cast<std::size_t>(Q.size());
      if (avail < 2 * m + 3) return std::nullopt;
      b.P = g0.positives();
      b.N = a1.negatives();
      b.q = g0.target();
      for (std::size_t i = 1; i <= m; ++i) b.Q.push_back(c[pos + 1 + i].target());
      break;
    }
    case RuleId::R6: {
      const LineSet free = LineSet::range(c.width()) - g0.lines();
      if (free.empty()) return std::nullopt;
      b.P = g0.positives();
      b.N = g0.negatives();
      b.q = g0.target();
      b.Q = free.to_vector();
      break;
    }
    case RuleId::R8:
      if (g0.negatives().empty()) return std::nullopt;
      b.P = g0.positives();
      b.N = g0.negatives();
      b.q = g0.target();
      break;
    case RuleId::R9: {
      if (avail < 2) return std::nullopt;
      const Gate& b1 = c[pos + 1];
      b.p = g0.target();
      if (!b1.positives().contains(b.p)) return std::nullopt;
      b.P1 = g0.positives();
      b.N1 = g0.negatives();
      b.P2 = b1.positives().without(b.p);
      b.N2 = b1.negatives();
      b.q = b1.target();
      break;
    }
    case RuleId::R10: {
      if (avail < 3 || !g0.negatives().empty()) return std::nullopt;
      b.q = g0.target();
      b.p = c[pos + 1].target();
      if (b.p == b.q || !g0.positives().contains(b.p)) return std::nullopt;
      b.P = g0.positives().without(b.p);
      break;
    }
  }
  return confirm(c, rule, pos, Direction::Forward, std::move(b));
}

std::optional<RuleInstance> match_backward(const Circuit& c, RuleId rule, std::size_t pos) {
  const std::size_t avail = c.size() - pos;
  const Gate& g0 = c[pos];
  Bindings b;
  switch (rule) {
    case RuleId::R1:
    case RuleId::R2:
      return std::nullopt;
    case RuleId::R3:
    case RuleId::R7:
      if (avail < 2) return std::nullopt;
      b.a = c[pos + 1];
      b.b = g0;
      break;
    case RuleId::R4: {
      if (avail < 4) return std::nullopt;
      const Gate& a = c[pos + 1];
      if (!a.negatives().empty() || a.positives().size() != 1) return std::nullopt;
      b.p = a.positives().min();
      b.q = a.target();
      if (g0.target() != b.q) return std::nullopt;
      if (g0.positives().contains(b.p)) {
        b.variant = 1;
        b.P = g0.positives().without(b.p);
        b.N = g0.negatives();
      } else if (g0.negatives().contains(b.p)) {
        b.variant = 2;
        b.P = g0.positives();
        b.N = g0.negatives().without(b.p);
      } else {
        return std::nullopt;
      }
      break;
    }
    case RuleId::R5: {
      for (std::size_t m = (avail + 1) / 2; m >= 1; --m) {
        std::vector<Line> targets;
        LineSet inner;
        for (std::size_t i = 0; i < m; ++i) targets.push_back(c[pos + i].target());
        for (std::size_t i = 0; i + 1 < m; ++i) inner = inner.with(targets[i]);
        const Gate& bm = c[pos + m - 1];
        const LineSet cand = bm.negatives() - inner;
        if (!cand.empty() && inner.subset_of(bm.negatives())) {
          Bindings t;
          t.q = cand.min();
          t.N = cand.without(t.q);
          t.P = bm.positives();
          t.Q = targets;
          if (auto r = confirm(c, rule, pos, Direction::Backward, std::move(t))) return r;
        }
      }
      return std::nullopt;
    }
    case RuleId::R6: {
      std::size_t m = 1;
      while (m < 20 && (std::size_t{1} << (m + 1)) <= avail) ++m;
      for (; m >= 1; --m) {
        const std::size_t len = std::size_t{1} << m;
        if (len > avail) continue;
        const Gate& last = c[pos + len - 1];
        const LineSet Q = g0.negatives() & last.positives();
        if (Q.size() != static_cast<int>(m)) continue;
        Bindings t;
        t.P = g0.positives();
        t.N = g0.negatives() - Q;
        t.q = g0.target();
        t.Q = Q.to_vector();
        if (auto r = confirm(c, rule, pos, Direction::Backward, std::move(t))) return r;
      }
      return std::nullopt;
    }
    case RuleId::R8: {
      std::size_t k = 0;
      Line prev = 0;
      while (k < avail && c[pos + k].controls().empty() && c[pos + k].target() > prev) {
        prev = c[pos + k].target();
        ++k;
      }
      for (std::size_t m = k; m >= 1; --m) {
        if (2 * m + 1 > avail) continue;
        LineSet N;
        for (std::size_t i = 0; i < m; ++i) N = N.with(c[pos + i].target());
        const Gate& mid = c[pos + m];
        if (!N.subset_of(mid.positives())) continue;
        Bindings t;
        t.P = mid.positives() - N;
        t.N = N;
        t.q = mid.target();
        if (auto r = confirm(c, rule, pos, Direction::Backward, std::move(t))) return r;
      }
      return std::nullopt;
    }
    case RuleId::R9: {
      if (avail < 2) return std::nullopt;
      const Gate& a = c[pos + 1];
      b.p = a.target();
      if (!g0.negatives().contains(b.p)) return std::nullopt;
      b.P1 = a.positives();
      b.N1 = a.negatives();
      b.P2 = g0.positives();
      b.N2 = g0.negatives().without(b.p);
      b.q = g0.target();
      break;
    }
    case RuleId::R10: {
      if (avail < 3 || !g0.negatives().empty()) return std::nullopt;
      b.p = g0.target();
      b.q = c[pos + 1].target();
      if (b.p == b.q || !g0.positives().contains(b.q)) return std::nullopt;
      b.P = g0.positives().without(b.q);
      break;
    }
  }
  return confirm(c, rule, pos, Direction::Backward, std::move(b));
}

constexpr std::array<RuleDoc, 10> kDocs{{
    {RuleId::R1, "cancel", "A A", "(empty)", "any gate A"},
    {RuleId::R2, "merge", "G[P,N+{p},q] G[P+{p},N,q]", "G[P,N,q]", "p not in P, N, q"},
    {RuleId::R3, "commute", "A B", "B A", "A and B share a control line with opposite polarities"},
    {RuleId::R4, "swap-through", "CNOT[p,q] CNOT[q,p] CNOT[p,q] C1", "C2 CNOT[p,q] CNOT[q,p] CNOT[p,q]",
     "C1=G[P+{q},N,p], C2=G[P+{p},N,q] (variant 1) or C1=G[P,N+{q},p], C2=G[P,N+{p},q] (variant 2)"},
    {RuleId::R5, "polarity-flip", "A0 A1 B1..Bm..B1 A1 A0", "B'1..B'm..B'1",
     "A0=G[P,N+Q,q], A1=G[P+Q,N,q], Bi=G[P+{q}+{q(i+1)..qm}, N+{q1..q(i-1)}, qi], B'i moves q to the negatives"},
    {RuleId::R6, "expand", "G[P,N,q]", "A_Q0 .. A_Q(2^m-1)",
     "Q disjoint from the gate; A_Qi=G[P+Qi, N+(Q-Qi), q], i read MSB-first over ascending Q"},
    {RuleId::R7, "commute-target", "A B", "B A", "A and B have the same target"},
    {RuleId::R8, "positivize", "G[P,N,q]", "X[n1]..X[nm] G[P+N,{},q] X[n1]..X[nm]", "N={n1<..<nm} nonempty"},
    {RuleId::R9, "pass-control", "G[P1,N1,p] G[P2+{p},N2,q]", "G[P2,N2+{p},q] G[P1,N1,p]", "P1 in P2, N1 in N2"},
    {RuleId::R10, "braid", "A B A", "B A B", "A=G[P+{p},{},q], B=G[P+{q},{},p], p != q"},
}};

}  // namespace

std::string_view to_string(RuleId r) {
  static constexpr std::array<std::string_view, 10> names{"R1", "R2", "R3", "R4", "R5",
                                                          "R6", "R7", "R8", "R9", "R10"};
  return names[static_cast<std::size_t>(r) - 1];
}

std::optional<RuleId> rule_from_string(std::string_view s) {
  for (RuleId r : kAllRules) {
    if (to_string(r) == s) return r;
  }
  if (s.size() >= 2 && (s[0] == 'r')) {
    std::string up(s);
    up[0] = 'R';
    return rule_from_string(up);
  }
  return std::nullopt;
}

bool is_basic(RuleId r) { return static_cast<int>(r) <= 5; }

Direction flipped(Direction d) { return d == Direction::Forward ? Direction::Backward : Direction::Forward; }

const RuleDoc& rule_doc(RuleId r) { return kDocs[static_cast<std::size_t>(r) - 1]; }

std::optional<RuleSides> try_instantiate(RuleId rule, const Bindings& b) {
  try {
    return build(rule, b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<std::pair<std::vector<Gate>, std::vector<Gate>>> RuleInstance::sides() const {
  auto s = try_instantiate(rule, bindings);
  if (!s) return std::nullopt;
  if (direction == Direction::Forward) return std::make_pair(std::move(s->lhs), std::move(s->rhs));
  return std::make_pair(std::move(s->rhs), std::move(s->lhs));
}

std::optional<RuleInstance> match_rule(const Circuit& c, RuleId rule, std::size_t position, Direction dir) {
  if (position >= c.size()) return std::nullopt;
  try {
    return dir == Direction::Forward ? match_forward(c, rule, position) : match_backward(c, rule, position);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<RuleInstance> enumerate_matches(const Circuit& c, const std::set<RuleId>& rules) {
  std::vector<RuleInstance> out;
  for (std::size_t pos = 0; pos < c.size(); ++pos) {
    for (RuleId r : rules) {
      for (Direction d : {Direction::Forward, Direction::Backward}) {
        if (auto m = match_rule(c, r, pos, d)) out.push_back(std::move(*m));
      }
    }
  }
  return out;
}

}  // namespace revrw
