#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qframes/boolean_algebra.hpp"
#include "qframes/frames.hpp"

namespace qframes {

struct BaseMorphism {
  std::size_t source;
  std::size_t target;
  BooleanHom map;
  std::string name;
};

/// A finite category of Boolean algebras and homomorphisms. Parallel
/// morphisms with the same underlying map are allowed (they are distinct
/// arrows). Construction checks that every object has an identity and that
/// composites exist.
class BaseCategory {
 public:
  BaseCategory() = default;
  /// Throws std::invalid_argument for ill-typed morphisms, a missing
  /// identity, or a missing composite.
  BaseCategory(std::vector<BooleanAlgebra> objects, std::vector<BaseMorphism> morphisms);

  const std::vector<BooleanAlgebra>& objects() const noexcept { return objects_; }
  const std::vector<BaseMorphism>& morphisms() const noexcept { return morphisms_; }
  std::size_t identity(std::size_t object) const { return identity_[object]; }
  bool is_identity(std::size_t morphism) const { return identity_[morphisms_[morphism].source] == morphism; }
  /// Index of g after f (requires target(f) == source(g)).
  std::size_t compose(std::size_t g, std::size_t f) const;
  /// Morphisms into `object`, in index order.
  std::vector<std::size_t> morphisms_into(std::size_t object) const;

  friend bool operator==(const BaseCategory& x, const BaseCategory& y) {
    return x.objects_ == y.objects_ && x.morphisms_.size() == y.morphisms_.size() &&
           std::equal(x.morphisms_.begin(), x.morphisms_.end(), y.morphisms_.begin(),
                      [](const BaseMorphism& a, const BaseMorphism& b) {
                        return a.source == b.source && a.target == b.target && a.map == b.map;
                      });
  }

 private:
  std::vector<BooleanAlgebra> objects_;
  std::vector<BaseMorphism> morphisms_;
  std::vector<std::size_t> identity_;
  std::vector<std::size_t> compose_;  // [g * m + f], npos when not composable
};

/// Objects with every identity and no other arrows.
BaseCategory discrete_base(std::vector<BooleanAlgebra> objects);

/// Objects = the given subalgebras; one arrow C -> B whenever C's element
/// set is contained in B's, with the induced inclusion homomorphism.
BaseCategory inclusion_base(const std::vector<Subalgebra>& subalgebras);

/// Boolean algebras with 1..max_atoms atoms and every homomorphism between
/// them.
BaseCategory boolean_skeleton(std::size_t max_atoms);

/// A presheaf of finite sets on a base category. sections[b] holds labels
/// of P(b); restriction[m] maps indices of P(target m) to indices of
/// P(source m).
struct BooleanDiagram {
  BaseCategory base;
  std::vector<std::vector<std::string>> sections;
  std::vector<std::vector<std::size_t>> restriction;
};

struct FunctorLawReport {
  bool identity_law = true;
  bool composition_law = true;
  bool well_formed = true;
  std::vector<std::string> witnesses;
  std::size_t pairs_checked = 0;
  bool ok() const noexcept { return identity_law && composition_law && well_formed; }
};

/// Exhaustive check of P(id) = id and P(g o f) = P(f) o P(g).
FunctorLawReport check_functor_laws(const BooleanDiagram& p);

/// Hom(-, object) restricted to the base: P(c) = arrows c -> object.
BooleanDiagram representable_diagram(const BaseCategory& base, std::size_t object);

/// The functor of Boolean frames of a lattice, over a finite base.
struct FramePresheaf {
  OMLRef lattice;
  BooleanDiagram diagram;
  std::vector<std::vector<BooleanFrame>> frames;
};

/// Sections via enumerate_frames, restrictions via restrict_frame; throws
/// std::logic_error if the functor laws fail.
FramePresheaf build_presheaf(const OMLRef& l, const BaseCategory& base);

struct ElementObject {
  std::size_t base_object;
  std::size_t section;
};

struct ElementMorphism {
  std::size_t base_morphism;
  std::size_t source;  // index into objects
  std::size_t target;
};

/// Category of elements of a diagram with its projection to the base.
struct ElementCategory {
  BaseCategory base;
  std::vector<ElementObject> objects;
  std::vector<ElementMorphism> morphisms;
};

ElementCategory category_of_elements(const BooleanDiagram& p);

struct FibrationReport {
  bool discrete = true;
  bool split_lifts = true;
  std::vector<std::string> witnesses;
  std::string notes;
};

/// Fibers contain only identities, and every (object, base arrow into its
/// base object) pair has exactly one lift.
FibrationReport check_discrete_fibration(const ElementCategory& ec);

}  // namespace qframes
