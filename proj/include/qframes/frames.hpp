#pragma once

#include <memory>
#include <vector>

#include "qframes/boolean_algebra.hpp"
#include "qframes/oml.hpp"

namespace qframes {

using OMLRef = std::shared_ptr<const FiniteOML>;

/// A morphism from a Boolean algebra into a finite OML, determined by the
/// images of the atoms. The induced map sends x to the join of the images
/// of the atoms under x.
class BooleanFrame {
 public:
  /// Throws std::invalid_argument unless the atom images are pairwise
  /// orthogonal and join to 1.
  BooleanFrame(BooleanAlgebra source, OMLRef target, std::vector<Element> atom_images);

  const BooleanAlgebra& source() const noexcept { return source_; }
  const OMLRef& target() const noexcept { return target_; }
  const FiniteOML& lattice() const noexcept { return *target_; }
  const std::vector<Element>& atom_images() const noexcept { return images_; }

  Element operator()(Mask x) const { return table_[x]; }
  bool injective() const noexcept { return injective_; }
  /// Sorted image of the induced map.
  ElementSet image() const;

  friend bool operator==(const BooleanFrame& x, const BooleanFrame& y) {
    return x.target_ == y.target_ && x.source_ == y.source_ && x.images_ == y.images_;
  }
  friend bool operator<(const BooleanFrame& x, const BooleanFrame& y) {
    if (!(x.source_ == y.source_)) return x.source_ < y.source_;
    return x.images_ < y.images_;
  }

 private:
  BooleanAlgebra source_;
  OMLRef target_;
  std::vector<Element> images_;
  std::vector<Element> table_;
  bool injective_ = false;
};

/// Full check that the induced map preserves 0, 1, orthocomplement and all
/// binary meets and joins.
bool preserves_structure(const BooleanFrame& frame);

struct Subalgebra {
  BooleanAlgebra algebra;
  BooleanFrame injection;
  ElementSet elements;
};

/// All Boolean subalgebras, found as orthogonal decompositions of 1 into
/// nonzero parts. Ordered by atom count, then by atom images.
/// The abstract algebra's atoms carry the labels of their images.
std::vector<Subalgebra> enumerate_boolean_subalgebras(const OMLRef& l);

/// Maximal Boolean subalgebras via maximal cliques of the compatibility
/// graph. Same order convention as enumerate_boolean_subalgebras.
std::vector<Subalgebra> enumerate_blocks(const OMLRef& l);

/// The inclusion-maximal members of a subalgebra list (cross-check route for
/// enumerate_blocks).
std::vector<Subalgebra> maximal_subalgebras(const std::vector<Subalgebra>& all);

/// Every frame B -> L, sorted by atom images. Each result has passed
/// preserves_structure.
std::vector<BooleanFrame> enumerate_frames(const BooleanAlgebra& b, const OMLRef& l);

/// psi after f, for f: C -> B. Throws std::invalid_argument when f's target
/// is not psi's source.
BooleanFrame restrict_frame(const BooleanFrame& psi, const BooleanHom& f);

/// Post-composition of a frame with a lattice map given as an element table
/// (used for naturality in the lattice argument).
BooleanFrame push_frame(const BooleanFrame& psi, const std::vector<Element>& map, const OMLRef& codomain);

}  // namespace qframes
