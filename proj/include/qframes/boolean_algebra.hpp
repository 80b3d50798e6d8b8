#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qframes {

/// Element of a finite Boolean algebra as a subset of its atoms
/// (bit i = i-th atom).
using Mask = std::uint32_t;

/// The powerset algebra on a list of named atoms, 1 to 20 atoms.
class BooleanAlgebra {
 public:
  explicit BooleanAlgebra(std::vector<std::string> atoms);
  /// Atoms named p, q, r, ... (x1, x2, ... beyond eight atoms).
  static BooleanAlgebra with_atoms(std::size_t count);

  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t size() const noexcept { return std::size_t{1} << atoms_.size(); }
  Mask top() const noexcept { return static_cast<Mask>(size() - 1); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }

  /// "B_8" style name (subscript = number of elements).
  std::string name() const { return "B_" + std::to_string(size()); }
  std::string label(Mask x) const;

  friend bool operator==(const BooleanAlgebra&, const BooleanAlgebra&) = default;
  friend auto operator<=>(const BooleanAlgebra& x, const BooleanAlgebra& y) {
    if (x.atom_count() != y.atom_count()) return x.atom_count() <=> y.atom_count();
    return x.atoms_ <=> y.atoms_;
  }

 private:
  std::vector<std::string> atoms_;
};

/// Unital Boolean homomorphism, given by the images of the source atoms:
/// pairwise disjoint masks whose union is the target top. Atoms may map to 0.
class BooleanHom {
 public:
  /// Throws std::invalid_argument if the images are not a partition of top
  /// (empty parts allowed).
  BooleanHom(BooleanAlgebra source, BooleanAlgebra target, std::vector<Mask> atom_images);
  static BooleanHom identity(const BooleanAlgebra& b);

  const BooleanAlgebra& source() const noexcept { return source_; }
  const BooleanAlgebra& target() const noexcept { return target_; }
  const std::vector<Mask>& atom_images() const noexcept { return images_; }

  Mask operator()(Mask x) const;
  bool injective() const;
  bool is_identity() const;

  friend bool operator==(const BooleanHom&, const BooleanHom&) = default;

 private:
  BooleanAlgebra source_;
  BooleanAlgebra target_;
  std::vector<Mask> images_;
};

/// g after f. Throws std::invalid_argument unless f.target() == g.source().
BooleanHom compose(const BooleanHom& g, const BooleanHom& f);

/// Every unital homomorphism from `source` to `target`, in lexicographic
/// order of atom images.
std::vector<BooleanHom> all_homomorphisms(const BooleanAlgebra& source, const BooleanAlgebra& target);

}  // namespace qframes
