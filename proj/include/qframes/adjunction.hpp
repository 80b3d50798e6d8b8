#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qframes/frames.hpp"
#include "qframes/oml.hpp"
#include "qframes/presheaf.hpp"

namespace qframes {

/// Colimit of a Boolean diagram: the disjoint union of the algebras over
/// its category of elements, quotiented by the identifications b' ~ u(b')
/// along every element morphism.
struct PastedStructure {
  Orthoposet structure;
  std::optional<FiniteOML> lattice;
  std::optional<MissingBound> missing_bound;
  std::optional<std::pair<Element, Element>> orthomodularity_witness;
  ElementCategory elements;
  /// injection[x][mask]: class of `mask` in the algebra of element-object x.
  std::vector<std::vector<Element>> injection;

  /// True when the classes form an orthomodular lattice.
  bool lattice_flag() const noexcept { return lattice.has_value() && !orthomodularity_witness; }
};

/// Throws std::invalid_argument when the diagram violates the functor laws
/// and StructureError when the complement is ill-defined on a class or the
/// induced order collapses two classes or puts a class below its own
/// complement.
PastedStructure paste_colimit(const BooleanDiagram& p);

/// All Boolean subalgebras of l with their inclusions; each section set is
/// the singleton holding the canonical injection.
BooleanDiagram blocks_diagram(const OMLRef& l);

struct IsoResult {
  bool isomorphic = false;
  /// Element map from the first lattice to the second when isomorphic.
  std::vector<Element> map;
  /// Distinguishing invariant otherwise.
  std::string reason;
};

/// Backtracking over atom bijections with invariant pruning; the first
/// isomorphism in atom order is returned.
IsoResult find_isomorphism(const FiniteOML& k, const FiniteOML& l);

/// paste_colimit(blocks_diagram(l)) compared with l.
IsoResult reconstruct(const OMLRef& l);

/// components[object][section] = index into the frame presheaf's section.
struct NaturalTransformation {
  std::vector<std::vector<std::size_t>> components;
  friend bool operator==(const NaturalTransformation&, const NaturalTransformation&) = default;
};

/// Exhaustive, with restriction-driven propagation. Throws
/// std::invalid_argument when the bases differ.
std::vector<NaturalTransformation> enumerate_nat_transformations(const BooleanDiagram& p, const FramePresheaf& r);

/// Element tables of every map k -> l preserving 0, 1, orthocomplement and
/// joins of orthogonal pairs, in lexicographic order.
std::vector<std::vector<Element>> enumerate_quantum_morphisms(const FiniteOML& k, const FiniteOML& l);

/// The morphism out of the colimit induced by a natural transformation:
/// the class of (x, b) goes to tau(x)(b). Empty if the assignment is not
/// constant on some class.
std::optional<std::vector<Element>> induced_morphism(const PastedStructure& pasted, const FramePresheaf& r,
                                                     const NaturalTransformation& tau);

struct AdjunctionReport {
  bool defined = false;
  std::string reason;
  std::size_t left_count = 0;   // |Nat(P, R(L))|
  std::size_t right_count = 0;  // |Hom(L(P), L)|
  /// correspondence[i] = index of the morphism induced by the i-th
  /// transformation.
  std::vector<std::size_t> correspondence;
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  bool inverse_agrees = false;
  bool natural_in_diagram = false;
  bool natural_in_lattice = false;
  std::string diagram_probe;
  std::string lattice_probe;
  std::string scope;

  bool bijection() const noexcept {
    return defined && well_defined && injective && surjective && inverse_agrees && left_count == right_count;
  }
  bool ok() const noexcept { return bijection() && natural_in_diagram && natural_in_lattice; }
};

AdjunctionReport adjunction_check(const BooleanDiagram& p, const OMLRef& l);

struct FactorizationResult {
  bool ok = false;
  std::size_t frames_checked = 0;
  std::string failure;
};

/// For every frame B -> L: the colimit of the representable diagram at B
/// is B, and the morphism it induces agrees with the frame.
FactorizationResult factorization_check(const BooleanAlgebra& b, const OMLRef& l);

}  // namespace qframes
