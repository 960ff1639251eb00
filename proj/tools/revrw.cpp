// revrw: command-line front end for simulation, canonicalization,
// equivalence checking, optimization and trace replay.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "revrw/canon.hpp"
#include "revrw/errors.hpp"
#include "revrw/io.hpp"
#include "revrw/normalize.hpp"
#include "revrw/rules.hpp"
#include "revrw/sim.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kInequivalent = 1,
  kUsage = 2,
  kParse = 3,
  kWidthCap = 4,
  kTrace = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

revrw::Circuit load_circuit(const std::string& path) {
  const std::string text = read_file(path);
  try {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".real") return revrw::parse_real(text);
    return revrw::parse_circuit(text);
  } catch (const revrw::ParseError& e) {
    throw FileParseError(path + ":" + std::to_string(e.line()) + ": " + e.message());
  }
}

revrw::HamiltonianPath load_path(const std::string& name, int width) {
  if (name != "gray") throw UsageError("unknown path '" + name + "' (available: gray)");
  return revrw::gray_path(width);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible circuit rewriting: simulation, canonical forms, equivalence and traces"};
  app.require_subcommand(1);
  int max_sim_width = 16;
  int max_canon_width = 8;
  app.add_option("--max-sim-width", max_sim_width, "Largest width simulated exhaustively")->capture_default_str();
  app.add_option("--max-canon-width", max_canon_width, "Largest width canonicalized")->capture_default_str();

  std::string file, file_b, trace_file, out_trace, path_name = "gray";
  std::size_t budget = 64;
  bool blocks = false;
  bool ascii = false;
  std::string rule_id;

  auto* sim = app.add_subcommand("sim", "Print the permutation as an input/output table");
  sim->add_option("file", file, "Circuit file")->required();

  auto* canon = app.add_subcommand("canon", "Print the canonical form");
  canon->add_option("file", file, "Circuit file")->required();
  canon->add_option("--path", path_name, "Hamiltonian path")->capture_default_str();
  canon->add_option("--trace", out_trace, "Write the rewrite trace to this file");
  canon->add_flag("--blocks", blocks, "Print block notation instead of the circuit");

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence; exit 0 if equivalent, 1 if not");
  equiv->add_option("a", file, "First circuit")->required();
  equiv->add_option("b", file_b, "Second circuit")->required();
  equiv->add_option("--path", path_name, "Hamiltonian path")->capture_default_str();
  equiv->add_option("--certificate", out_trace, "Write the certificate trace to this file");

  auto* opt = app.add_subcommand("opt", "Greedy R1/R2 reduction with R3/R7 moves");
  opt->add_option("file", file, "Circuit file")->required();
  opt->add_option("--budget", budget, "Largest commutation distance searched")->capture_default_str();
  opt->add_option("--trace", out_trace, "Write the rewrite trace to this file");

  auto* render = app.add_subcommand("render", "Draw the circuit");
  render->add_option("file", file, "Circuit file")->required();
  render->add_flag("--ascii", ascii, "Use plain ASCII symbols");

  auto* rules = app.add_subcommand("rules", "Rule catalog");
  rules->require_subcommand(1);
  auto* rules_list = rules->add_subcommand("list", "List all rules");
  auto* rules_show = rules->add_subcommand("show", "Describe one rule");
  rules_show->add_option("id", rule_id, "Rule id, e.g. R5")->required();

  auto* replay_cmd = app.add_subcommand("replay", "Verify a trace against its circuit");
  replay_cmd->add_option("file", file, "Circuit file")->required();
  replay_cmd->add_option("trace", trace_file, "Trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const revrw::SimOptions sim_opts{max_sim_width};
  revrw::CanonOptions canon_opts;
  canon_opts.max_width = max_canon_width;
  canon_opts.sim = sim_opts;

  try {
    if (*sim) {
      const revrw::Circuit c = load_circuit(file);
      std::cout << revrw::format_permutation(revrw::simulate(c, sim_opts));
      return kOk;
    }
    if (*canon) {
      const revrw::Circuit c = load_circuit(file);
      const auto path = load_path(path_name, c.width());
      auto [form, trace] = revrw::canonicalize(c, path, canon_opts);
      if (blocks) {
        std::cout << revrw::format_canonical(form) << "\n";
      } else {
        std::cout << revrw::print_circuit(form.to_circuit(revrw::delta_gates(path)));
      }
      if (!out_trace.empty()) write_file(out_trace, revrw::print_trace(trace));
      return kOk;
    }
    if (*equiv) {
      const revrw::Circuit a = load_circuit(file);
      const revrw::Circuit b = load_circuit(file_b);
      if (a.width() != b.width()) {
        std::cout << "inequivalent: widths " << a.width() << " and " << b.width() << " differ\n";
        return kInequivalent;
      }
      const auto path = load_path(path_name, a.width());
      const auto r = revrw::equivalent(a, b, path, canon_opts);
      if (!r.equivalent) {
        std::cout << "inequivalent\n";
        if (r.witness) {
          const revrw::Permutation pa = revrw::simulate(a, sim_opts);
          const revrw::Permutation pb = revrw::simulate(b, sim_opts);
          std::cout << "witness " << r.witness->str() << " -> " << pa(*r.witness).str() << " vs "
                    << pb(*r.witness).str() << "\n";
        }
        return kInequivalent;
      }
      std::cout << "equivalent\n";
      if (out_trace.empty()) {
        std::cout << revrw::print_trace(*r.certificate);
      } else {
        write_file(out_trace, revrw::print_trace(*r.certificate));
        std::cout << "certificate: " << r.certificate->steps.size() << " steps written to " << out_trace << "\n";
      }
      return kOk;
    }
    if (*opt) {
      const revrw::Circuit c = load_circuit(file);
      auto [out, trace] = revrw::optimize(c, budget);
      std::cout << revrw::print_circuit(out);
      if (out_trace.empty()) {
        std::cout << revrw::print_trace(trace);
      } else {
        write_file(out_trace, revrw::print_trace(trace));
      }
      return kOk;
    }
    if (*render) {
      std::cout << revrw::render_ascii(load_circuit(file), {ascii});
      return kOk;
    }
    if (*rules_list) {
      for (revrw::RuleId r : revrw::kAllRules) {
        const auto& d = revrw::rule_doc(r);
        std::cout << revrw::to_string(r) << "\t" << d.name << "\t" << d.lhs << "  <->  " << d.rhs << "\n";
      }
      return kOk;
    }
    if (*rules_show) {
      const auto r = revrw::rule_from_string(rule_id);
      if (!r) throw UsageError("unknown rule '" + rule_id + "'");
      const auto& d = revrw::rule_doc(*r);
      std::cout << revrw::to_string(*r) << " (" << d.name << ")\n"
                << "  lhs:       " << d.lhs << "\n"
                << "  rhs:       " << d.rhs << "\n"
                << "  condition: " << d.condition << "\n"
                << "  basic:     " << (revrw::is_basic(*r) ? "yes" : "no (derived)") << "\n";
      return kOk;
    }
    if (*replay_cmd) {
      const revrw::Circuit c = load_circuit(file);
      revrw::RewriteTrace trace = revrw::parse_trace(read_file(trace_file));
      if (trace.initial != c) {
        std::cerr << "trace does not start from " << file << "\n";
        return kTrace;
      }
      const revrw::Circuit end = revrw::replay(trace, sim_opts);
      std::cout << "ok: " << trace.steps.size() << " steps\n" << revrw::print_circuit(end);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const revrw::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const revrw::WidthCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kWidthCap;
  } catch (const revrw::TraceError& e) {
    std::cerr << "invalid trace: " << e.what() << "\n";
    return kTrace;
  } catch (const revrw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
