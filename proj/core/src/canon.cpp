#include "revrw/canon.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <sstream>

#include "revrw/errors.hpp"
#include "moves_internal.hpp"
#include "revrw/sim.hpp"

namespace revrw {

HamiltonianPath HamiltonianPath::from_nodes(int width, std::vector<std::uint64_t> nodes, std::string name) {
  if (width < 1 || width > 24) throw OutOfRange("path width must be 1..24");
  const std::size_t n = std::size_t{1} << width;
  if (nodes.size() != n) throw PreconditionError("path must list all " + std::to_string(n) + " strings");
  HamiltonianPath h;
  h.width = width;
  h.name = std::move(name);
  h.index_of.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i] >= n || h.index_of[nodes[i]] != n) throw PreconditionError("path repeats or leaves the hypercube");
    h.index_of[nodes[i]] = i;
    if (i > 0 && std::popcount(nodes[i] ^ nodes[i - 1]) != 1) {
      throw PreconditionError("path nodes " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " are not adjacent");
    }
  }
  h.nodes = std::move(nodes);
  return h;
}

HamiltonianPath gray_path(int n) {
  if (n < 1) throw OutOfRange("path width must be at least 1");
  if (n > 24) throw OutOfRange("path width must be at most 24");
  std::vector<std::uint64_t> nodes(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < nodes.size(); ++i) nodes[i] = i ^ (i >> 1);
  return HamiltonianPath::from_nodes(n, std::move(nodes), "gray");
}

std::optional<std::size_t> DeltaGateSet::index_of(const Gate& g) const {
  const auto ex = gate_exchanges(g, path.width);
  if (!ex) return std::nullopt;
  const std::size_t i = path.index_of[ex->first.encoded()];
  const std::size_t j = path.index_of[ex->second.encoded()];
  if (i + 1 == j) return i;
  if (j + 1 == i) return j;
  return std::nullopt;
}

namespace detail {

Gate exchange_gate(int n, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t d = a ^ b;
  const Line target = n - std::countr_zero(d);
  LineSet pos, neg;
  for (Line l = 1; l <= n; ++l) {
    if (l == target) continue;
    if ((a >> (n - l)) & 1U) {
      pos = pos.with(l);
    } else {
      neg = neg.with(l);
    }
  }
  return Gate(pos, neg, target);
}

}  // namespace detail

DeltaGateSet delta_gates(const HamiltonianPath& path) {
  DeltaGateSet d{path, {}};
  d.gates.reserve(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    d.gates.push_back(detail::exchange_gate(path.width, path.nodes[i], path.nodes[i + 1]));
  }
  return d;
}

std::vector<std::uint64_t> block_permutation_row(std::size_t start, std::size_t length,
                                                 std::vector<std::uint64_t> row) {
  if (start >= row.size() || length > row.size() - 1 - start) throw OutOfRange("block exceeds the row");
  if (length == 0) return row;
  const std::uint64_t moved = row[start + length];
  std::copy_backward(row.begin() + static_cast<std::ptrdiff_t>(start),
                     row.begin() + static_cast<std::ptrdiff_t>(start + length),
                     row.begin() + static_cast<std::ptrdiff_t>(start + length + 1));
  row[start] = moved;
  return row;
}

std::vector<std::uint64_t> path_row(const Permutation& p, const HamiltonianPath& path) {
  if (p.width() != path.width) throw WidthMismatch("permutation and path widths differ");
  std::vector<std::uint64_t> row(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) row[i] = p(path.nodes[i]);
  return row;
}

std::size_t CanonicalForm::gate_count() const {
  std::size_t n = 0;
  for (const Block& b : blocks) n += b.length;
  return n;
}

Circuit CanonicalForm::to_circuit(const DeltaGateSet& delta) const {
  if (delta.path.width != width) throw WidthMismatch("canonical form and gate set widths differ");
  std::vector<Gate> gs;
  gs.reserve(gate_count());
  for (const Block& b : blocks) {
    if (b.length == 0 || b.start + b.length > delta.size()) throw OutOfRange("block outside the gate set");
    for (std::size_t k = 0; k < b.length; ++k) gs.push_back(delta[b.start + k]);
  }
  return Circuit(width, std::move(gs));
}

CanonicalForm constructive_canonicalize(const Permutation& p, const HamiltonianPath& path) {
  const std::vector<std::uint64_t> target = path_row(p, path);
  std::vector<std::uint64_t> row = path.nodes;
  // position of each value in the current row
  std::vector<std::size_t> where(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) where[row[i]] = i;
  CanonicalForm form;
  form.width = path.width;
  form.path_name = path.name;
  std::vector<Block> built;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const std::size_t l = where[target[i]];
    if (l == i) continue;
    built.push_back({i, l - i});
    const std::uint64_t moved = row[l];
    for (std::size_t k = l; k > i; --k) {
      row[k] = row[k - 1];
      where[row[k]] = k;
    }
    row[i] = moved;
    where[moved] = i;
  }
  form.blocks.assign(built.rbegin(), built.rend());
  return form;
}

std::string_view to_string(CanonRejection r) {
  switch (r) {
    case CanonRejection::GateOutsideDelta:
      return "gate outside the path gate set";
    case CanonRejection::OccurrenceBound:
      return "gate M_i occurs more than i+1 times";
    case CanonRejection::BlockCountBound:
      return "more than 2^n-1 blocks";
    case CanonRejection::StartOrder:
      return "block starts do not strictly decrease";
  }
  return "unknown";
}

CanonValidation validate_canonical(const Circuit& c, const DeltaGateSet& delta) {
  if (c.width() != delta.path.width) throw WidthMismatch("circuit and path widths differ");
  CanonValidation v;
  std::vector<std::size_t> idx;
  idx.reserve(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto i = delta.index_of(c[k]);
    if (!i) {
      v.rejection = CanonRejection::GateOutsideDelta;
      v.detail = "gate " + std::to_string(k);
      return v;
    }
    idx.push_back(*i);
  }
  std::vector<std::size_t> count(delta.size(), 0);
  for (std::size_t i : idx) {
    if (++count[i] > i + 1) {
      v.rejection = CanonRejection::OccurrenceBound;
      v.detail = "M_" + std::to_string(i);
      return v;
    }
  }
  CanonicalForm f;
  f.width = c.width();
  f.path_name = delta.path.name;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && idx[k] == idx[k - 1] + 1) {
      ++f.blocks.back().length;
    } else {
      f.blocks.push_back({idx[k], 1});
    }
  }
  if (f.blocks.size() > delta.size()) {
    v.rejection = CanonRejection::BlockCountBound;
    v.detail = std::to_string(f.blocks.size()) + " blocks";
    return v;
  }
  for (std::size_t k = 1; k < f.blocks.size(); ++k) {
    if (f.blocks[k].start >= f.blocks[k - 1].start) {
      v.rejection = CanonRejection::StartOrder;
      v.detail = "block " + std::to_string(k);
      return v;
    }
  }
  v.form = std::move(f);
  return v;
}

CanonValidation validate_canonical(const Circuit& c, const HamiltonianPath& path) {
  return validate_canonical(c, delta_gates(path));
}

std::vector<CanonicalForm> enumerate_canonical_forms(int n, const HamiltonianPath& path) {
  if (n < 1 || n > 3) throw OutOfRange("canonical form enumeration supports widths 1..3");
  if (path.width != n) throw WidthMismatch("path width differs from n");
  const std::size_t N = path.size();
  // choice[x] = 0 (absent) or a block length starting at x
  std::vector<std::size_t> choice(N - 1, 0);
  std::vector<CanonicalForm> out;
  while (true) {
    CanonicalForm f;
    f.width = n;
    f.path_name = path.name;
    for (std::size_t x = N - 1; x-- > 0;) {
      if (choice[x] > 0) f.blocks.push_back({x, choice[x]});
    }
    out.push_back(std::move(f));
    std::size_t x = 0;
    while (x < N - 1 && choice[x] == N - 1 - x) choice[x++] = 0;
    if (x == N - 1) break;
    ++choice[x];
  }
  return out;
}

std::string format_canonical(const CanonicalForm& f) {
  std::ostringstream os;
  os << "canon n=" << f.width << " path=" << f.path_name << " blocks=[";
  for (std::size_t k = 0; k < f.blocks.size(); ++k) {
    if (k > 0) os << ", ";
    os << '(' << f.blocks[k].start << ',' << f.blocks[k].length - 1 << ')';
  }
  os << ']';
  return os.str();
}

CanonicalForm parse_canonical(std::string_view text) {
  static const std::regex head(R"(^\s*canon\s+n=(\d+)\s+path=(\S+)\s+blocks=\[(.*)\]\s*$)");
  static const std::regex pair(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, head)) throw ParseError(1, "malformed canonical form");
  CanonicalForm f;
  f.width = std::stoi(m[1].str());
  f.path_name = m[2].str();
  const std::string body = m[3].str();
  for (auto it = std::sregex_iterator(body.begin(), body.end(), pair); it != std::sregex_iterator(); ++it) {
    f.blocks.push_back({std::stoul((*it)[1].str()), std::stoul((*it)[2].str()) + 1});
  }
  return f;
}

}  // namespace revrw
