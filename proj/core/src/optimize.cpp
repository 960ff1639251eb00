#include "revrw/rules.hpp"

namespace revrw {

namespace {

bool opposite_polarity(const Gate& a, const Gate& b) {
  return a.positives().intersects(b.negatives()) || b.positives().intersects(a.negatives());
}

std::optional<RuleId> swap_rule(const Gate& a, const Gate& b) {
  if (opposite_polarity(a, b)) return RuleId::R3;
  if (a.target() == b.target() && a != b) return RuleId::R7;
  return std::nullopt;
}

bool reducible(const Gate& a, const Gate& b) {
  if (a == b) return true;
  if (a.target() != b.target() || a.controls() != b.controls()) return false;
  return (a.positives() - b.positives()).size() + (b.positives() - a.positives()).size() == 1;
}

void swap_at(Rewriter& rw, std::size_t k) {
  const Gate a = rw.circuit()[k];
  const Gate b = rw.circuit()[k + 1];
  Bindings bind;
  bind.a = a;
  bind.b = b;
  rw.apply(*swap_rule(a, b), k, Direction::Forward, bind);
}

void reduce_adjacent(Rewriter& rw, std::size_t k) {
  if (match_rule(rw.circuit(), RuleId::R1, k, Direction::Forward)) {
    rw.apply_matched(RuleId::R1, k, Direction::Forward);
    return;
  }
  if (!match_rule(rw.circuit(), RuleId::R2, k, Direction::Forward)) swap_at(rw, k);
  rw.apply_matched(RuleId::R2, k, Direction::Forward);
}

bool direct_reduction(Rewriter& rw) {
  for (std::size_t k = 0; k + 1 < rw.circuit().size(); ++k) {
    if (reducible(rw.circuit()[k], rw.circuit()[k + 1])) {
      reduce_adjacent(rw, k);
      return true;
    }
  }
  return false;
}

bool commuting_reduction(Rewriter& rw, std::size_t budget) {
  const Circuit& c = rw.circuit();
  for (std::size_t j = 1; j < c.size(); ++j) {
    for (std::size_t i = j - 1; i-- > 0;) {
      if (j - i - 1 > budget) break;
      if (!reducible(c[i], c[j])) continue;
      bool left = true;
      bool right = true;
      for (std::size_t k = i + 1; k < j; ++k) {
        left = left && swap_rule(c[k], c[j]).has_value();
        right = right && swap_rule(c[i], c[k]).has_value();
      }
      if (left) {
        for (std::size_t k = j - 1; k > i; --k) swap_at(rw, k);
        reduce_adjacent(rw, i);
        return true;
      }
      if (right) {
        for (std::size_t k = i; k + 1 < j; ++k) swap_at(rw, k);
        reduce_adjacent(rw, j - 1);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::pair<Circuit, RewriteTrace> optimize(const Circuit& c, std::size_t budget) {
  Rewriter rw(c);
  while (direct_reduction(rw) || commuting_reduction(rw, budget)) {
  }
  Circuit out = rw.circuit();
  return {std::move(out), std::move(rw).take_trace()};
}

}  // namespace revrw
