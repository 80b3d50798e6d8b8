#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qframes/frames.hpp"
#include "qframes/pasting.hpp"
#include "qframes/scenario.hpp"

namespace qframes {

/// 0/1 value per variable (ray or atom).
using Valuation = std::vector<std::uint8_t>;

/// Exactly one variable of every context is 1; at most one variable of
/// every exclusion pair is 1.
struct ConstraintSystem {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> contexts;
  std::vector<std::pair<std::size_t, std::size_t>> exclusions;

  std::size_t size() const noexcept { return names.size(); }
};

/// Contexts plus an exclusion for every orthogonal ray pair that shares no
/// context: orthogonal projections cannot both be 1.
ConstraintSystem constraints_of(const RayScenario& s);
ConstraintSystem constraints_of(const BlockScenario& s);

struct SearchOptions {
  bool enumerate_all = false;
  std::size_t cap = 1'000'000;
  /// Node budget; the search stops with an unknown verdict when exceeded.
  std::optional<std::uint64_t> max_nodes;
  /// Branching order as a permutation of the variables; empty means
  /// ascending index.
  std::vector<std::size_t> branching_order;
  /// Extra test on complete assignments (used for cross-block consistency).
  std::function<bool(const Valuation&)> accept;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  double elapsed_seconds = 0;
};

enum class Verdict { sat, unsat, unknown };

struct KSResult {
  Verdict verdict = Verdict::unknown;
  /// First solution, or every solution up to the cap with enumerate_all.
  std::vector<Valuation> valuations;
  bool truncated = false;
  bool node_limit_hit = false;
  SearchStats stats;
};

std::string to_string(Verdict v);

/// Backtracking with unit propagation. Branches on the first unassigned
/// variable in branching order, value 1 first.
KSResult solve(const ConstraintSystem& cs, const SearchOptions& options = {});

/// Throws ScenarioError when the scenario has no contexts.
KSResult ks_search(const RayScenario& s, const SearchOptions& options = {});
KSResult ks_search(const BlockScenario& s, const SearchOptions& options = {});

struct ValuationCheck {
  bool ok = true;
  std::string witness;
};

/// Independent of the solver. Throws std::invalid_argument when the
/// assignment is partial (wrong length or a value other than 0/1).
ValuationCheck verify_valuation(const ConstraintSystem& cs, const Valuation& v);
ValuationCheck verify_valuation(const RayScenario& s, const Valuation& v);
ValuationCheck verify_valuation(const BlockScenario& s, const Valuation& v);

/// Every variable lies in an even number of contexts while the number of
/// contexts is odd: summing the per-context constraint gives an odd total,
/// yet every valuation contributes an even one.
struct ParityResult {
  bool applies = false;
  std::size_t contexts = 0;
  std::string explanation;
};

ParityResult parity_obstruction(const ConstraintSystem& cs);

/// Atoms and blocks of an orthoposet, with each block's elements by mask so
/// valuations can be checked for a single value per element.
struct BlockStructure {
  std::vector<std::string> atom_labels;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<Element>> block_elements;
  std::size_t element_count = 0;
};

BlockStructure block_structure(const OMLRef& l);
BlockStructure block_structure(const PastingResult& pasted, const BlockScenario& s);

/// Valuations on atoms that are Boolean homomorphisms on every block and
/// give every element one value across the blocks holding it.
KSResult global_valuations(const BlockStructure& bs, SearchOptions options = {});
KSResult global_valuations(const OMLRef& l, SearchOptions options = {});

struct NoninvertibilityReport {
  bool global_section_exists = false;
  std::size_t valuation_count = 0;
  bool truncated = false;
  /// Set when a scenario was supplied: whether ks_search agrees.
  std::optional<bool> scenario_agrees;
  std::string summary;
};

NoninvertibilityReport noninvertibility_witness(const BlockStructure& bs,
                                                const std::optional<ConstraintSystem>& scenario = std::nullopt);
NoninvertibilityReport noninvertibility_witness(const OMLRef& l);

}  // namespace qframes
