#pragma once

// Text formats: the rc-v1 circuit and trace grammars, a read-only `.real`
// importer, and terminal rendering.
//
// Circuit grammar (one statement per line, `#` starts a comment):
//   .width <n>
//   x <t> | cnot <c> <t> | t <c1> <c2> <t> | g [+|-]<c> ... <t>
//   .end                       (optional)
// Lines run top to bottom, which is leftmost-first execution order.
//
// Trace grammar: the circuit grammar for the initial circuit, then `.steps`
// and one step per line:
//   <R#> <fwd|bwd> <pos> <removed> [key=value ...] | <gate>; <gate>; ...
//   macro - <pos> <removed> | <gate>; ...
// Set-valued keys (P N P1 N1 P2 N2) and Q are comma lists, `a` and `b` are
// gates written as comma-separated signed controls followed by the target.

#include <string>
#include <string_view>

#include "revrw/core.hpp"
#include "revrw/rules.hpp"

namespace revrw {

inline constexpr std::string_view kFormatTag = "# format: rc-v1";

struct PrintOptions {
  /// Use x/cnot/t where the gate has no negative controls.
  bool prefer_short_mnemonics = true;
  /// Emit the `# format: rc-v1` line first.
  bool format_tag = false;
};

/// Throws ParseError with the offending line number.
Circuit parse_circuit(std::string_view text);
std::string print_circuit(const Circuit& c, const PrintOptions& opts = {});

/// One gate statement without a trailing newline.
std::string format_gate(const Gate& g, bool prefer_short_mnemonics = true);

/// Reads `.real` files: `.numvars`, `.variables`, and `t<k>` gates between
/// `.begin` and `.end`. Other gate kinds are rejected.
Circuit parse_real(std::string_view text);

std::string print_trace(const RewriteTrace& t);
RewriteTrace parse_trace(std::string_view text);

struct RenderOptions {
  /// Plain `* o + - |` instead of box-drawing symbols.
  bool ascii = false;
};

/// One row per line q_1..q_n with connector rows between, one column per gate.
std::string render_ascii(const Circuit& c, const RenderOptions& opts = {});

/// `<input> <output>` per encoded input in ascending order.
std::string format_permutation(const Permutation& p);

}  // namespace revrw
