#include <algorithm>

#include "revrw/errors.hpp"
#include "revrw/rules.hpp"

namespace revrw {

namespace {

bool segment_is(const Circuit& c, std::size_t pos, const std::vector<Gate>& gs) {
  if (pos > c.size() || gs.size() > c.size() - pos) return false;
  return std::equal(gs.begin(), gs.end(), c.gates().begin() + static_cast<std::ptrdiff_t>(pos));
}

bool fits(const Circuit& c, const std::vector<Gate>& gs) {
  return std::all_of(gs.begin(), gs.end(), [&](const Gate& g) { return g.max_line() <= c.width(); });
}

RewriteStep prepare(const Circuit& c, const RuleInstance& inst) {
  const auto sides = inst.sides();
  if (!sides) throw StaleInstance(std::string(to_string(inst.rule)) + ": bindings violate the rule conditions");
  if (!segment_is(c, inst.position, sides->first)) {
    throw StaleInstance(std::string(to_string(inst.rule)) + ": segment at " + std::to_string(inst.position) +
                        " does not match");
  }
  if (!fits(c, sides->second)) throw StaleInstance(std::string(to_string(inst.rule)) + ": result exceeds width");
  return RewriteStep{inst, inst.position, sides->first.size(), sides->second};
}

}  // namespace

std::pair<Circuit, RewriteStep> apply_rule(const Circuit& c, const RuleInstance& inst) {
  RewriteStep step = prepare(c, inst);
  Circuit out = c;
  out.splice(step.position, step.removed_count, step.inserted);
  return {std::move(out), std::move(step)};
}

std::optional<std::string> check_step(const Circuit& pre, const RewriteStep& step, const SimOptions& opts) {
  if (step.position > pre.size() || step.removed_count > pre.size() - step.position) {
    return "removed range exceeds the circuit";
  }
  if (!fits(pre, step.inserted)) return "inserted gate exceeds circuit width";
  if (step.instance) {
    const RuleInstance& inst = *step.instance;
    if (inst.position != step.position) return "instance position differs from step position";
    const auto sides = inst.sides();
    if (!sides) return std::string(to_string(inst.rule)) + " bindings violate the rule conditions";
    if (sides->first.size() != step.removed_count) return "removed count differs from the rule side";
    if (!segment_is(pre, step.position, sides->first)) return "segment does not match the rule side";
    if (sides->second != step.inserted) return "inserted gates differ from the rule side";
    return std::nullopt;
  }
  const Circuit removed = pre.segment(step.position, step.removed_count);
  const Circuit inserted(pre.width(), step.inserted);
  try {
    if (!equivalent_by_sim(removed, inserted, opts)) return "macro segments are not equivalent";
  } catch (const WidthCapExceeded& e) {
    return std::string("macro step cannot be simulated: ") + e.what();
  }
  return std::nullopt;
}

bool verify_step(const Circuit& pre, const RewriteStep& step, const SimOptions& opts) {
  return !check_step(pre, step, opts).has_value();
}

void apply_step_unchecked(Circuit& c, const RewriteStep& step) {
  c.splice(step.position, step.removed_count, step.inserted);
}

Circuit replay(const RewriteTrace& trace, const SimOptions& opts) {
  Circuit cur = trace.initial;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    if (auto why = check_step(cur, trace.steps[k], opts)) throw TraceError(k, *why);
    apply_step_unchecked(cur, trace.steps[k]);
  }
  return cur;
}

RewriteTrace reverse_trace(const RewriteTrace& t) {
  Circuit cur = t.initial;
  std::vector<RewriteStep> inv;
  inv.reserve(t.steps.size());
  for (const RewriteStep& s : t.steps) {
    const Circuit removed = cur.segment(s.position, s.removed_count);
    RewriteStep r;
    r.position = s.position;
    r.removed_count = s.inserted.size();
    r.inserted.assign(removed.gates().begin(), removed.gates().end());
    if (s.instance) {
      r.instance = *s.instance;
      r.instance->direction = flipped(s.instance->direction);
    }
    inv.push_back(std::move(r));
    apply_step_unchecked(cur, s);
  }
  RewriteTrace out(std::move(cur));
  out.steps.assign(inv.rbegin(), inv.rend());
  return out;
}

RewriteTrace concat_traces(const RewriteTrace& a, const RewriteTrace& b) {
  Circuit end = a.initial;
  for (const RewriteStep& s : a.steps) apply_step_unchecked(end, s);
  if (end != b.initial) throw PreconditionError("second trace does not start where the first ends");
  RewriteTrace out(a.initial);
  out.steps = a.steps;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

void Rewriter::apply(const RuleInstance& inst) {
  RewriteStep step = prepare(current_, inst);
  apply_step_unchecked(current_, step);
  trace_.steps.push_back(std::move(step));
}

void Rewriter::apply_matched(RuleId rule, std::size_t position, Direction dir) {
  auto inst = match_rule(current_, rule, position, dir);
  if (!inst) {
    throw StaleInstance(std::string(to_string(rule)) + (dir == Direction::Forward ? " forward" : " backward") +
                        " does not match at " + std::to_string(position));
  }
  apply(*inst);
}

void Rewriter::apply_macro(std::size_t position, std::size_t removed, std::vector<Gate> inserted) {
  RewriteStep step{std::nullopt, position, removed, std::move(inserted)};
  if (auto why = check_step(current_, step)) throw PreconditionError("macro step rejected: " + *why);
  apply_step_unchecked(current_, step);
  trace_.steps.push_back(std::move(step));
}

}  // namespace revrw
