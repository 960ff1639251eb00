#include "revrw/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "revrw/errors.hpp"

namespace revrw {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto k = s.find(sep);
    out.push_back(trim(s.substr(0, k)));
    if (k == std::string_view::npos) break;
    s.remove_prefix(k + 1);
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    const std::size_t start = k;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

std::string_view strip_comment(std::string_view line) { return trim(line.substr(0, line.find('#'))); }

long long to_int(std::string_view tok, std::size_t ln, std::string_view what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(ln, "expected " + std::string(what) + ", got '" + std::string(tok) + "'");
  }
  return v;
}

Line to_line(std::string_view tok, int width, std::size_t ln) {
  const long long v = to_int(tok, ln, "a line index");
  if (v < 1 || v > width) {
    throw ParseError(ln, "line index " + std::string(tok) + " outside 1.." + std::to_string(width));
  }
  return static_cast<Line>(v);
}

/// Signed controls followed by a bare target.
Gate gate_from_operands(const std::vector<std::string_view>& ops, bool signs_allowed, int width, std::size_t ln) {
  if (ops.empty()) throw ParseError(ln, "gate needs a target");
  LineSet pos, neg;
  for (std::size_t k = 0; k + 1 < ops.size(); ++k) {
    std::string_view tok = ops[k];
    bool negative = false;
    if (!tok.empty() && (tok.front() == '+' || tok.front() == '-')) {
      if (!signs_allowed) throw ParseError(ln, "polarity marks are only allowed on g lines");
      negative = tok.front() == '-';
      tok.remove_prefix(1);
    }
    const Line l = to_line(tok, width, ln);
    if (pos.contains(l) || neg.contains(l)) throw ParseError(ln, "duplicate line index " + std::to_string(l));
    (negative ? neg : pos) = (negative ? neg : pos).with(l);
  }
  const std::string_view last = ops.back();
  if (!last.empty() && (last.front() == '+' || last.front() == '-')) throw ParseError(ln, "target must be unsigned");
  const Line t = to_line(last, width, ln);
  if (pos.contains(t) || neg.contains(t)) throw ParseError(ln, "target " + std::to_string(t) + " among controls");
  return Gate(pos, neg, t);
}

Gate parse_gate_statement(std::string_view stmt, int width, std::size_t ln) {
  const auto tok = tokens(stmt);
  if (tok.empty()) throw ParseError(ln, "empty gate");
  const std::string m = lower(tok[0]);
  const std::vector<std::string_view> ops(tok.begin() + 1, tok.end());
  std::size_t arity = 0;
  if (m == "x") {
    arity = 1;
  } else if (m == "cnot") {
    arity = 2;
  } else if (m == "t") {
    arity = 3;
  } else if (m == "g") {
    return gate_from_operands(ops, true, width, ln);
  } else {
    throw ParseError(ln, "unknown gate '" + std::string(tok[0]) + "'");
  }
  if (ops.size() != arity) {
    throw ParseError(ln, m + " takes " + std::to_string(arity) + " line index" + (arity == 1 ? "" : "es"));
  }
  return gate_from_operands(ops, false, width, ln);
}

int parse_width(std::string_view stmt, std::size_t ln) {
  const auto tok = tokens(stmt);
  if (tok.size() != 2 || lower(tok[0]) != ".width") throw ParseError(ln, "expected '.width <n>'");
  const long long n = to_int(tok[1], ln, "a width");
  if (n < 1 || n > kMaxWidth) throw ParseError(ln, "width must be 1.." + std::to_string(kMaxWidth));
  return static_cast<int>(n);
}

std::string join_lines(LineSet s) {
  std::string out;
  for (Line l : s.to_vector()) {
    if (!out.empty()) out += ',';
    out += std::to_string(l);
  }
  return out;
}

std::string binding_gate(const Gate& g) {
  std::string out;
  const LineSet ctrl = g.controls();
  for (Line l : ctrl.to_vector()) {
    out += g.positives().contains(l) ? '+' : '-';
    out += std::to_string(l) + ',';
  }
  return out + std::to_string(g.target());
}

std::string format_bindings(const Bindings& b) {
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out += ' ';
    out += key;
    out += '=';
    out += value;
  };
  if (!b.P.empty()) put("P", join_lines(b.P));
  if (!b.N.empty()) put("N", join_lines(b.N));
  if (!b.P1.empty()) put("P1", join_lines(b.P1));
  if (!b.N1.empty()) put("N1", join_lines(b.N1));
  if (!b.P2.empty()) put("P2", join_lines(b.P2));
  if (!b.N2.empty()) put("N2", join_lines(b.N2));
  if (b.p != 0) put("p", std::to_string(b.p));
  if (b.q != 0) put("q", std::to_string(b.q));
  if (!b.Q.empty()) {
    std::string q;
    for (Line l : b.Q) q += (q.empty() ? "" : ",") + std::to_string(l);
    put("Q", q);
  }
  if (b.a) put("a", binding_gate(*b.a));
  if (b.b) put("b", binding_gate(*b.b));
  if (b.variant != 0) put("variant", std::to_string(b.variant));
  return out;
}

std::vector<Line> line_list(std::string_view value, int width, std::size_t ln) {
  std::vector<Line> out;
  if (value.empty()) return out;
  for (std::string_view tok : split(value, ',')) out.push_back(to_line(tok, width, ln));
  return out;
}

LineSet line_set(std::string_view value, int width, std::size_t ln) {
  const auto v = line_list(value, width, ln);
  return LineSet(std::span<const Line>(v));
}

void parse_binding(Bindings& b, std::string_view kv, int width, std::size_t ln) {
  const auto eq = kv.find('=');
  if (eq == std::string_view::npos) throw ParseError(ln, "expected key=value, got '" + std::string(kv) + "'");
  const std::string_view key = kv.substr(0, eq);
  const std::string_view value = kv.substr(eq + 1);
  if (key == "P") {
    b.P = line_set(value, width, ln);
  } else if (key == "N") {
    b.N = line_set(value, width, ln);
  } else if (key == "P1") {
    b.P1 = line_set(value, width, ln);
  } else if (key == "N1") {
    b.N1 = line_set(value, width, ln);
  } else if (key == "P2") {
    b.P2 = line_set(value, width, ln);
  } else if (key == "N2") {
    b.N2 = line_set(value, width, ln);
  } else if (key == "p") {
    b.p = to_line(value, width, ln);
  } else if (key == "q") {
    b.q = to_line(value, width, ln);
  } else if (key == "Q") {
    b.Q = line_list(value, width, ln);
  } else if (key == "a" || key == "b") {
    Gate g = gate_from_operands(split(value, ','), true, width, ln);
    (key == "a" ? b.a : b.b) = g;
  } else if (key == "variant") {
    b.variant = static_cast<int>(to_int(value, ln, "a variant"));
  } else {
    throw ParseError(ln, "unknown binding '" + std::string(key) + "'");
  }
}

RewriteStep parse_step(std::string_view stmt, int width, std::size_t ln) {
  const auto bar = stmt.find('|');
  if (bar == std::string_view::npos) throw ParseError(ln, "step needs '|' before the inserted gates");
  const auto head = tokens(stmt.substr(0, bar));
  if (head.size() < 4) throw ParseError(ln, "step needs rule, direction, position and removed count");
  RewriteStep step;
  step.position = static_cast<std::size_t>(to_int(head[2], ln, "a position"));
  step.removed_count = static_cast<std::size_t>(to_int(head[3], ln, "a removed count"));
  if (lower(head[0]) == "macro") {
    if (head[1] != "-" || head.size() != 4) throw ParseError(ln, "macro steps take no direction or bindings");
  } else {
    const auto rule = rule_from_string(head[0]);
    if (!rule) throw ParseError(ln, "unknown rule '" + std::string(head[0]) + "'");
    RuleInstance inst;
    inst.rule = *rule;
    inst.position = step.position;
    if (head[1] == "fwd") {
      inst.direction = Direction::Forward;
    } else if (head[1] == "bwd") {
      inst.direction = Direction::Backward;
    } else {
      throw ParseError(ln, "direction must be fwd or bwd");
    }
    for (std::size_t k = 4; k < head.size(); ++k) parse_binding(inst.bindings, head[k], width, ln);
    step.instance = std::move(inst);
  }
  const std::string_view body = trim(stmt.substr(bar + 1));
  if (!body.empty()) {
    for (std::string_view g : split(body, ';')) step.inserted.push_back(parse_gate_statement(g, width, ln));
  }
  return step;
}

struct Document {
  std::optional<Circuit> circuit;
  std::vector<RewriteStep> steps;
  bool has_steps = false;
};

Document parse_document(std::string_view text, bool allow_steps) {
  Document doc;
  bool in_steps = false;
  bool ended = false;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::size_t ln = k + 1;
    const std::string_view stmt = strip_comment(lines[k]);
    if (stmt.empty()) continue;
    if (ended) throw ParseError(ln, "content after .end");
    if (!doc.circuit) {
      doc.circuit = Circuit(parse_width(stmt, ln));
      continue;
    }
    const std::string head = lower(tokens(stmt)[0]);
    if (head == ".end") {
      ended = true;
    } else if (head == ".steps") {
      if (!allow_steps || in_steps) throw ParseError(ln, "unexpected .steps");
      in_steps = true;
      doc.has_steps = true;
    } else if (head == ".width") {
      throw ParseError(ln, "duplicate .width");
    } else if (in_steps) {
      doc.steps.push_back(parse_step(stmt, doc.circuit->width(), ln));
    } else {
      doc.circuit->push_back(parse_gate_statement(stmt, doc.circuit->width(), ln));
    }
  }
  if (!doc.circuit) throw ParseError(lines.empty() ? 1 : lines.size(), "missing '.width <n>' header");
  return doc;
}

}  // namespace

Circuit parse_circuit(std::string_view text) { return *parse_document(text, false).circuit; }

std::string format_gate(const Gate& g, bool prefer_short_mnemonics) {
  const auto ctrl = g.controls().to_vector();
  const std::string t = std::to_string(g.target());
  if (prefer_short_mnemonics && g.negatives().empty()) {
    if (ctrl.empty()) return "x " + t;
    if (ctrl.size() == 1) return "cnot " + std::to_string(ctrl[0]) + " " + t;
    if (ctrl.size() == 2) return "t " + std::to_string(ctrl[0]) + " " + std::to_string(ctrl[1]) + " " + t;
  }
  std::string out = "g";
  for (Line l : ctrl) out += std::string(g.positives().contains(l) ? " +" : " -") + std::to_string(l);
  return out + " " + t;
}

std::string print_circuit(const Circuit& c, const PrintOptions& opts) {
  std::string out;
  if (opts.format_tag) out += std::string(kFormatTag) + "\n";
  out += ".width " + std::to_string(c.width()) + "\n";
  for (const Gate& g : c.gates()) out += format_gate(g, opts.prefer_short_mnemonics) + "\n";
  return out;
}

Circuit parse_real(std::string_view text) {
  std::map<std::string, Line> vars;
  int numvars = 0;
  std::optional<Circuit> c;
  bool in_body = false;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::size_t ln = k + 1;
    const std::string_view stmt = strip_comment(lines[k]);
    if (stmt.empty()) continue;
    const auto tok = tokens(stmt);
    const std::string head = lower(tok[0]);
    if (head == ".numvars") {
      if (tok.size() != 2) throw ParseError(ln, "expected '.numvars <n>'");
      numvars = static_cast<int>(to_int(tok[1], ln, "a variable count"));
      if (numvars < 1 || numvars > kMaxWidth) throw ParseError(ln, "variable count out of range");
    } else if (head == ".variables") {
      for (std::size_t v = 1; v < tok.size(); ++v) {
        if (!vars.emplace(std::string(tok[v]), static_cast<Line>(v)).second) {
          throw ParseError(ln, "duplicate variable '" + std::string(tok[v]) + "'");
        }
      }
    } else if (head == ".begin") {
      if (numvars == 0) numvars = static_cast<int>(vars.size());
      if (numvars < 1 || numvars > kMaxWidth) throw ParseError(ln, "missing .numvars or .variables");
      if (!vars.empty() && static_cast<int>(vars.size()) != numvars) {
        throw ParseError(ln, ".variables does not match .numvars");
      }
      c = Circuit(numvars);
      in_body = true;
    } else if (head == ".end") {
      in_body = false;
    } else if (head.front() == '.') {
      continue;
    } else if (in_body) {
      if (head.size() < 2 || head[0] != 't') throw ParseError(ln, "unsupported gate '" + std::string(tok[0]) + "'");
      const long long arity = to_int(std::string_view(head).substr(1), ln, "a gate size");
      if (arity < 1 || static_cast<std::size_t>(arity) != tok.size() - 1) throw ParseError(ln, "gate size mismatch");
      std::vector<std::string> ops;
      for (std::size_t v = 1; v < tok.size(); ++v) {
        std::string_view name = tok[v];
        std::string sign;
        if (name.front() == '-') {
          sign = "-";
          name.remove_prefix(1);
        }
        const auto it = vars.find(std::string(name));
        if (it == vars.end()) throw ParseError(ln, "unknown variable '" + std::string(name) + "'");
        ops.push_back(sign + std::to_string(it->second));
      }
      const std::vector<std::string_view> views(ops.begin(), ops.end());
      c->push_back(gate_from_operands(views, true, c->width(), ln));
    } else {
      throw ParseError(ln, "gate outside .begin/.end");
    }
  }
  if (!c) throw ParseError(lines.size(), "missing .begin");
  return *c;
}

std::string print_trace(const RewriteTrace& t) {
  std::string out = print_circuit(t.initial, {true, true});
  out += ".steps\n";
  for (const RewriteStep& s : t.steps) {
    if (s.instance) {
      out += std::string(to_string(s.instance->rule)) +
             (s.instance->direction == Direction::Forward ? " fwd " : " bwd ");
    } else {
      out += "macro - ";
    }
    out += std::to_string(s.position) + " " + std::to_string(s.removed_count);
    if (s.instance) out += format_bindings(s.instance->bindings);
    out += " |";
    for (std::size_t k = 0; k < s.inserted.size(); ++k) out += (k == 0 ? " " : "; ") + format_gate(s.inserted[k]);
    out += "\n";
  }
  out += ".end\n";
  return out;
}

RewriteTrace parse_trace(std::string_view text) {
  Document doc = parse_document(text, true);
  RewriteTrace t(std::move(*doc.circuit));
  t.steps = std::move(doc.steps);
  return t;
}

}  // namespace revrw
