#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qframes {

/// Dense element index inside one lattice or orthoposet.
using Element = std::uint32_t;

/// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

/// An ordered set with an orthocomplementation, not necessarily a lattice.
/// `leq` is the full (reflexive, transitive) relation in row-major order.
struct Orthoposet {
  std::vector<std::string> labels;
  std::vector<std::uint8_t> leq;
  std::vector<Element> ortho;

  std::size_t size() const noexcept { return labels.size(); }
  bool less_equal(Element a, Element b) const { return leq[a * size() + b] != 0; }
};

/// First pair (in canonical order) lacking a least upper bound
/// (is_join = true) or a greatest lower bound.
struct MissingBound {
  Element a;
  Element b;
  bool is_join;
};

std::optional<MissingBound> find_missing_bound(const Orthoposet& p);

/// Finite orthomodular lattice given by total tables.
///
/// The class stores whatever tables it is handed: `from_tables` accepts
/// arbitrary (well-formed) data so validators can be exercised on defective
/// input. Every other constructor in the library yields a lattice that
/// passes validate_ortholattice and verify_orthomodularity.
class FiniteOML {
 public:
  /// Builds join/meet from a partial order. The relation is reflexively and
  /// transitively closed first. Throws StructureError if it is not
  /// antisymmetric or some pair has no join or meet.
  static FiniteOML from_order(std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                              std::vector<Element> ortho);
  static FiniteOML from_orthoposet(const Orthoposet& p);

  /// Raw constructor. Only checks that tables are total and closed
  /// (throws std::invalid_argument otherwise).
  static FiniteOML from_tables(std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                               std::vector<Element> join, std::vector<Element> meet, std::vector<Element> ortho,
                               Element zero, Element one);

  std::size_t size() const noexcept { return labels_.size(); }
  Element zero() const noexcept { return zero_; }
  Element one() const noexcept { return one_; }

  bool leq(Element a, Element b) const { return leq_[a * size() + b] != 0; }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element ortho(Element a) const { return ortho_[a]; }
  bool orthogonal(Element a, Element b) const { return leq(a, ortho(b)); }

  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Throws std::out_of_range for unknown labels.
  Element find(std::string_view label) const;

  /// Elements covering zero, ascending.
  std::vector<Element> atoms() const;

  Orthoposet as_orthoposet() const { return {labels_, leq_, ortho_}; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> leq_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
  std::vector<Element> ortho_;
  Element zero_ = 0;
  Element one_ = 0;
};

struct Violation {
  std::string axiom;
  std::vector<Element> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

/// One entry per violated axiom, carrying the first witness in canonical
/// element order.
ValidationReport validate_ortholattice(const FiniteOML& l);

/// First comparable pair a <= b (a-major order) with b != a v (a* ^ b).
std::optional<std::pair<Element, Element>> verify_orthomodularity(const FiniteOML& l);

/// Commutativity identity a = (a ^ b) v (a ^ b*).
bool compatible(const FiniteOML& l, Element a, Element b);

/// Cross-check: the subalgebra generated by {a, b} is distributive.
bool compatible_by_closure(const FiniteOML& l, Element a, Element b);

/// Smallest set containing s, 0 and 1 closed under meet, join and
/// orthocomplement.
ElementSet generated_subalgebra(const FiniteOML& l, const ElementSet& s);

bool is_distributive(const FiniteOML& l, const ElementSet& s);

/// Boolean algebra with the given atom names as a lattice. Elements are
/// indexed by atom bitmask; labels are "0", atom names, "a|b", ..., "1".
FiniteOML boolean_lattice(const std::vector<std::string>& atom_names);
FiniteOML boolean_lattice(std::size_t atom_count);

/// Horizontal sum of n four-element Boolean algebras (MO2 for n = 2).
FiniteOML mo_lattice(std::size_t n);

/// Parses the lattice-table format (see docs/formats.md).
FiniteOML load_lattice_table(std::string_view text);

}  // namespace qframes
