#pragma once

// Rule-driven normalization: every procedure here rewrites circuits only
// through rule instances (plus simulation-checked macro steps for gate
// decomposition) and returns the trace that certifies the rewrite.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "revrw/canon.hpp"
#include "revrw/core.hpp"
#include "revrw/rules.hpp"
#include "revrw/sim.hpp"

namespace revrw {

// --- coordinate sequences ----------------------------------------------------

struct CoordinateSequence {
  int width = 0;
  std::vector<Line> entries;

  friend bool operator==(const CoordinateSequence&, const CoordinateSequence&) = default;
};

/// Flips bit entries[0], entries[1], ... of b0 in turn.
BitString generate(const CoordinateSequence& omega, const BitString& b0);

struct CoordinateEdit {
  enum class Kind { Swap, Delete };
  Kind kind;
  /// Swap exchanges entries index and index+1; Delete removes both of them.
  std::size_t index;

  friend bool operator==(const CoordinateEdit&, const CoordinateEdit&) = default;
};

CoordinateSequence apply_edit(const CoordinateSequence& omega, const CoordinateEdit& e);

struct CoordinateReduction {
  CoordinateSequence result;
  std::vector<CoordinateEdit> edits;
};

/// Repeatedly takes the closest pair of equal entries (leftmost on ties),
/// swaps the right one next to the left one and deletes both, until every
/// value occurs at most once.
CoordinateReduction reduce_coordinates(const CoordinateSequence& omega);

// --- gate-level moves ------------------------------------------------------------

/// True iff the gates share a control line with opposite polarities.
bool commutes_structurally(const Gate& a, const Gate& b);

/// Same line set, different targets, common controls with equal polarity.
bool braid_compatible(const Gate& a, const Gate& b);

/// A B A at `position` becomes B A B. Negative controls are cleared by
/// passing X gates through the segment, then R10 applies.
RewriteTrace aba_to_bab(const Circuit& c, std::size_t position);

/// A_1..A_m..A_1 at `position` (2m-1 gates) becomes A_m..A_1..A_m.
RewriteTrace palindrome_reverse(const Circuit& c, std::size_t position, std::size_t m);

struct DoubleOccurrenceResult {
  Circuit circuit;
  RewriteTrace trace;
  /// (occurrences of M_i, gates strictly between the tracked pair) after
  /// each internal step, starting with the initial value.
  std::vector<std::pair<std::size_t, std::size_t>> measures;
};

/// Reduces the first two occurrences of M_i to at most one. Every gate
/// between them must be in the gate set with index on one side of i.
DoubleOccurrenceResult reduce_double_occurrence(const Circuit& c, std::size_t i, const DeltaGateSet& delta);

/// `c` is M_i followed by gates of larger index. Returns D' M_i..M_{i+k}
/// with no M_i in D'.
std::pair<Circuit, RewriteTrace> form_block(const Circuit& c, std::size_t i, const DeltaGateSet& delta);

// --- pipeline ----------------------------------------------------------------

std::pair<CanonicalForm, RewriteTrace> canonicalize_delta(const Circuit& c, const DeltaGateSet& delta);

/// Expands every gate with R6 over the lines it does not touch.
std::pair<Circuit, RewriteTrace> widen_gates(const Circuit& c);

/// Full-width M exchanging a_i and a_j (i < j) becomes M_i..M_{j-1}..M_i in
/// one macro step. Gates already in the set are returned unchanged.
std::pair<Circuit, RewriteTrace> decompose_to_delta(const Gate& m, const DeltaGateSet& delta);

/// Inverse of decompose_to_delta, using rule steps only.
std::pair<Gate, RewriteTrace> reduce_palindrome_to_gate(const Circuit& c, const DeltaGateSet& delta);

struct CanonOptions {
  int max_width = 8;
  SimOptions sim;
};

std::pair<CanonicalForm, RewriteTrace> canonicalize(const Circuit& c, const HamiltonianPath& path,
                                                    const CanonOptions& opts = {});

struct EquivalenceResult {
  bool equivalent = false;
  CanonicalForm form_a;
  CanonicalForm form_b;
  /// Rewrites a into b when equivalent.
  std::optional<RewriteTrace> certificate;
  /// Input on which the circuits differ when inequivalent.
  std::optional<BitString> witness;
};

EquivalenceResult equivalent(const Circuit& a, const Circuit& b, const HamiltonianPath& path,
                             const CanonOptions& opts = {});

}  // namespace revrw
