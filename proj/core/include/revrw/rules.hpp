#pragma once

// Rule catalog: instantiation, structural matching, application, step
// verification and trace replay for the ten rewrite rules R1..R10.
//
// Every rule relates a left side and a right side. Forward rewrites the left
// side into the right side; backward does the opposite.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revrw/core.hpp"
#include "revrw/sim.hpp"

namespace revrw {

enum class RuleId { R1 = 1, R2, R3, R4, R5, R6, R7, R8, R9, R10 };

inline constexpr RuleId kAllRules[] = {RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5,
                                       RuleId::R6, RuleId::R7, RuleId::R8, RuleId::R9, RuleId::R10};

enum class Direction { Forward, Backward };

std::string_view to_string(RuleId r);
std::optional<RuleId> rule_from_string(std::string_view s);
bool is_basic(RuleId r);
Direction flipped(Direction d);

/// Schema parameters. Each rule reads only the fields it needs:
///   R1  a                      (A A <-> e)
///   R2  P N p q                (G[P,N+p,q] G[P+p,N,q] <-> G[P,N,q])
///   R3  a b                    (A B <-> B A, opposite-polarity shared control)
///   R4  variant P N p q        (A B A C1 <-> C2 A B A)
///   R5  P N q Q                (A0 A1 B1..Bm..B1 A1 A0 <-> B'1..B'm..B'1)
///   R6  P N q Q                (A <-> A_Q0 .. A_Q(2^m-1))
///   R7  a b                    (A B <-> B A, same target)
///   R8  P N q                  (G[P,N,q] <-> X[N] G[P+N,{},q] X[N])
///   R9  P1 N1 p P2 N2 q        (A B1 <-> B2 A)
///   R10 P p q                  (A B A <-> B A B)
struct Bindings {
  LineSet P, N;
  LineSet P1, N1, P2, N2;
  Line p = 0;
  Line q = 0;
  std::vector<Line> Q;
  std::optional<Gate> a, b;
  int variant = 0;

  friend bool operator==(const Bindings&, const Bindings&) = default;
};

struct RuleSides {
  std::vector<Gate> lhs;
  std::vector<Gate> rhs;
};

/// Builds both sides, or nullopt when the bindings violate the rule's
/// side conditions.
std::optional<RuleSides> try_instantiate(RuleId rule, const Bindings& b);

struct RuleInstance {
  RuleId rule;
  std::size_t position = 0;
  Direction direction = Direction::Forward;
  Bindings bindings;

  /// The side currently in the circuit and the side that replaces it.
  std::optional<std::pair<std::vector<Gate>, std::vector<Gate>>> sides() const;

  friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
};

/// Derives bindings from the segment at `position` and confirms the
/// instantiated side equals it. Sides whose parameters are not determined by
/// the circuit (R1 and R2 backward) never match; build those instances
/// directly. R5 backward picks the largest m and the smallest q; R6 forward
/// expands over every line the gate does not touch; R6 and R8 backward pick
/// the largest m.
std::optional<RuleInstance> match_rule(const Circuit& c, RuleId rule, std::size_t position, Direction dir);

/// All matches in (position, rule, direction) order.
std::vector<RuleInstance> enumerate_matches(const Circuit& c, const std::set<RuleId>& rules);

/// One edit of a trace. A step without an instance is a macro step, checked
/// by simulating the removed and inserted segments.
struct RewriteStep {
  std::optional<RuleInstance> instance;
  std::size_t position = 0;
  std::size_t removed_count = 0;
  std::vector<Gate> inserted;

  bool is_macro() const { return !instance.has_value(); }
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct RewriteTrace {
  Circuit initial;
  std::vector<RewriteStep> steps;

  explicit RewriteTrace(Circuit start) : initial(std::move(start)) {}
};

/// Throws StaleInstance if the segment no longer matches or the new side does
/// not fit the circuit width.
std::pair<Circuit, RewriteStep> apply_rule(const Circuit& c, const RuleInstance& inst);

/// nullopt if `step` is valid on `pre`, otherwise the reason.
std::optional<std::string> check_step(const Circuit& pre, const RewriteStep& step, const SimOptions& opts = {});
bool verify_step(const Circuit& pre, const RewriteStep& step, const SimOptions& opts = {});

/// Applies a step that is already known to be valid.
void apply_step_unchecked(Circuit& c, const RewriteStep& step);

/// Throws TraceError at the first invalid step.
Circuit replay(const RewriteTrace& trace, const SimOptions& opts = {});

/// Trace from the final circuit of `t` back to `t.initial`.
RewriteTrace reverse_trace(const RewriteTrace& t);

/// `b` must start where `a` ends.
RewriteTrace concat_traces(const RewriteTrace& a, const RewriteTrace& b);

/// Working circuit plus the trace that produced it.
class Rewriter {
 public:
  explicit Rewriter(Circuit c) : current_(c), trace_(std::move(c)) {}

  const Circuit& circuit() const { return current_; }
  const RewriteTrace& trace() const { return trace_; }
  RewriteTrace take_trace() && { return std::move(trace_); }

  /// Applies a rule instance; throws StaleInstance on mismatch.
  void apply(const RuleInstance& inst);
  void apply(RuleId rule, std::size_t position, Direction dir, Bindings b) {
    apply(RuleInstance{rule, position, dir, std::move(b)});
  }
  /// Matches and applies; throws StaleInstance when nothing matches.
  void apply_matched(RuleId rule, std::size_t position, Direction dir);
  /// Records a macro step; throws PreconditionError unless the segments
  /// simulate identically.
  void apply_macro(std::size_t position, std::size_t removed, std::vector<Gate> inserted);

 private:
  Circuit current_;
  RewriteTrace trace_;
};

/// Greedy size reduction: R1 and R2 reductions, then R3/R7 moves bringing a
/// reducible pair together within `budget` moves. Never increases gate count.
std::pair<Circuit, RewriteTrace> optimize(const Circuit& c, std::size_t budget = 64);

/// Textual summary of a rule for the catalog.
struct RuleDoc {
  RuleId id;
  std::string_view name;
  std::string_view lhs;
  std::string_view rhs;
  std::string_view condition;
};

const RuleDoc& rule_doc(RuleId r);

}  // namespace revrw
