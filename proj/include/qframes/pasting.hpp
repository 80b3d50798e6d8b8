#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qframes/oml.hpp"
#include "qframes/scenario.hpp"

namespace qframes {

/// Greechie-style pasting of a block scenario.
struct PastingResult {
  Orthoposet structure;
  /// Set when every pair has a join and a meet.
  std::optional<FiniteOML> lattice;
  /// When `lattice` is empty: the first pair without a bound.
  std::optional<MissingBound> missing_bound;
  /// When `lattice` is set: first orthomodular-law failure, if any.
  std::optional<std::pair<Element, Element>> orthomodularity_witness;
  /// block_elements[b][mask] is the element for the atom subset `mask`
  /// (bit i = i-th atom of block b in scenario order).
  std::vector<std::vector<Element>> block_elements;
  /// Scenario atom index -> element.
  std::vector<Element> atom_elements;

  bool is_lattice() const noexcept { return lattice.has_value(); }
};

/// Elements are 0, 1, the atoms and all joins of atoms inside single blocks;
/// two block elements are identified when they have the same atom set or the
/// same block-complement atom set. The order is generated blockwise and
/// transitively closed. Throws ScenarioError on inconsistent sharing (two
/// distinct elements of one block forced equal, or an order cycle).
PastingResult scenario_orthoposet(const BlockScenario& s);

}  // namespace qframes
