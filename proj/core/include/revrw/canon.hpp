#pragma once

// Hamiltonian paths on the hypercube, the adjacent-exchange gate set they
// induce, and the block canonical form of a reversible function.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revrw/core.hpp"

namespace revrw {

/// Ordering a_0..a_{N-1} of all width-n strings (as encoded integers) where
/// neighbours differ in exactly one bit.
struct HamiltonianPath {
  int width = 0;
  std::vector<std::uint64_t> nodes;
  std::vector<std::size_t> index_of;
  std::string name;

  /// Validates that `nodes` is a Hamming-adjacent permutation of all strings.
  static HamiltonianPath from_nodes(int width, std::vector<std::uint64_t> nodes, std::string name);
  std::size_t size() const { return nodes.size(); }
};

/// Binary reflected Gray code. Widths above 24 are rejected.
HamiltonianPath gray_path(int n);

/// M_0..M_{N-2}, where M_i exchanges a_i and a_{i+1}.
struct DeltaGateSet {
  HamiltonianPath path;
  std::vector<Gate> gates;

  const Gate& operator[](std::size_t i) const { return gates[i]; }
  std::size_t size() const { return gates.size(); }
  /// Index i with gates[i] == g, if any.
  std::optional<std::size_t> index_of(const Gate& g) const;
};

DeltaGateSet delta_gates(const HamiltonianPath& path);

/// Row of a circuit: row[i] is the image of a_i. Returns the row after
/// prepending M_start..M_{start+length-1}: position start receives
/// row[start+length], positions start+1..start+length receive
/// row[start..start+length-1].
std::vector<std::uint64_t> block_permutation_row(std::size_t start, std::size_t length,
                                                 std::vector<std::uint64_t> row);

/// Row of a permutation along a path.
std::vector<std::uint64_t> path_row(const Permutation& p, const HamiltonianPath& path);

struct Block {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Blocks in execution order, so starts strictly decrease left to right.
/// The identity function has no blocks.
struct CanonicalForm {
  int width = 0;
  std::string path_name = "gray";
  std::vector<Block> blocks;

  std::size_t gate_count() const;
  Circuit to_circuit(const DeltaGateSet& delta) const;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm constructive_canonicalize(const Permutation& p, const HamiltonianPath& path);

enum class CanonRejection {
  GateOutsideDelta,
  OccurrenceBound,
  BlockCountBound,
  StartOrder,
};

std::string_view to_string(CanonRejection r);

struct CanonValidation {
  std::optional<CanonicalForm> form;
  std::optional<CanonRejection> rejection;
  std::string detail;

  bool accepted() const { return form.has_value(); }
};

/// Splits `c` into maximal runs of consecutive gates and checks, in order:
/// every gate is in the gate set, M_i occurs at most i+1 times, there are at
/// most N-1 blocks, and block starts strictly decrease.
CanonValidation validate_canonical(const Circuit& c, const DeltaGateSet& delta);
CanonValidation validate_canonical(const Circuit& c, const HamiltonianPath& path);

/// Every canonical form of width n (n <= 3), one per reversible function.
std::vector<CanonicalForm> enumerate_canonical_forms(int n, const HamiltonianPath& path);

/// `canon n=<n> path=<name> blocks=[(x,k), ...]` with k = length - 1.
std::string format_canonical(const CanonicalForm& f);
CanonicalForm parse_canonical(std::string_view text);

}  // namespace revrw
