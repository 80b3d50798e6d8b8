#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qframes/boolean_algebra.hpp"
#include "qframes/frames.hpp"

namespace qframes {

/// Overlap of two frames with a common target: all pairs (b, b') with
/// left(b) = right(b'), with componentwise operations.
struct PullbackAlgebra {
  BooleanFrame left;
  BooleanFrame right;
  std::vector<std::pair<Mask, Mask>> carrier;  // sorted

  bool contains(Mask b, Mask b2) const;
  /// Minimal nonzero carrier elements.
  std::vector<std::pair<Mask, Mask>> atoms() const;
  /// left(proj_left(x)) for every carrier element, as a sorted set in L.
  ElementSet image() const;
};

/// Throws std::invalid_argument when the frames have different targets, and
/// std::logic_error if the carrier is not a Boolean subalgebra of the
/// product or the square does not commute.
PullbackAlgebra pullback(const BooleanFrame& left, const BooleanFrame& right);

/// Closure, distributivity and commutation of the square.
bool is_boolean_overlap(const PullbackAlgebra& pb);

/// For injective frames: the pullback image equals the intersection of the
/// two frame images. Throws std::invalid_argument for non-injective input.
bool check_intersection(const BooleanFrame& left, const BooleanFrame& right);

/// Omega(B, B'): the right-hand copy of the overlap (inside B') mapped onto
/// the left-hand copy (inside B).
struct GluingIso {
  BooleanAlgebra domain_algebra;    // B'
  BooleanAlgebra codomain_algebra;  // B
  std::vector<std::optional<Mask>> table;  // indexed by masks of B'

  std::optional<Mask> operator()(Mask x) const { return x < table.size() ? table[x] : std::nullopt; }
  std::vector<Mask> domain() const;
  std::vector<Mask> codomain() const;
};

/// Throws std::invalid_argument unless both frames are injective, and
/// std::logic_error if the result is not a structure-preserving bijection.
GluingIso gluing_iso(const BooleanFrame& left, const BooleanFrame& right);

bool is_structure_preserving(const GluingIso& omega);

struct LawResult {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;
};

struct CocycleReport {
  LawResult identity_law;
  LawResult symmetry_law;
  LawResult triangle_law;
  bool ok() const noexcept { return identity_law.holds && symmetry_law.holds && triangle_law.holds; }
};

/// Omega(B,B) = id; Omega(B,B') o Omega(B',B) = id; and
/// Omega(B,B') o Omega(B',B'') = Omega(B,B'') on triple overlaps, over all
/// ordered pairs and triples. Every overlap contains 1, so no tuple is
/// skipped.
CocycleReport verify_cocycles(const std::vector<BooleanFrame>& frames);

/// Every injective frame whose image is a block of l: for each block, all
/// orderings of its atoms.
std::vector<BooleanFrame> injective_block_frames(const OMLRef& l);

/// For a cone (test, h: test -> B, g: test -> B') over the pullback: true iff
/// exactly one homomorphism u: test -> carrier satisfies
/// proj_left o u = h and proj_right o u = g. Throws std::invalid_argument if
/// the outer square does not commute or the maps are ill-typed.
bool verify_pullback_universality(const PullbackAlgebra& pb, const BooleanHom& h, const BooleanHom& g);

}  // namespace qframes
