#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qframes/quadratic_integer.hpp"

namespace qframes {

struct Ray {
  std::string name;
  std::vector<QuadraticInteger> coords;
};

/// Exact inner-product test in Z[sqrt(D)]. Throws std::invalid_argument on
/// dimension mismatch.
bool orthogonal(const Ray& r1, const Ray& r2);

/// True iff the two coordinate vectors are proportional over Q(sqrt(D)),
/// i.e. every 2x2 minor vanishes.
bool proportional(const Ray& r1, const Ray& r2);

/// A finite set of rays in dimension d together with its complete
/// orthogonal bases ("contexts"). Contexts hold ray indices in ascending
/// order and are themselves sorted.
struct RayScenario {
  std::size_t dimension = 0;
  std::int64_t radicand = 1;
  std::vector<Ray> rays;
  std::vector<std::vector<std::size_t>> contexts;
  bool explicit_contexts = false;
  /// Maximal orthogonal sets with fewer than d rays. They are not contexts.
  std::vector<std::vector<std::size_t>> partial_cliques;

  /// Symmetric orthogonality matrix, row-major.
  std::vector<std::uint8_t> orthogonality() const;
  std::size_t index_of(std::string_view name) const;
};

/// Parses the ray-file format (see docs/formats.md).
/// Throws ParseError for grammar violations and ScenarioError for duplicate
/// rays, wrong-size or non-orthogonal explicit contexts.
RayScenario load_ray_scenario(std::string_view text);

/// Abstract presentation: atoms and the atom sets of the maximal Boolean
/// subalgebras (Greechie convention).
struct BlockScenario {
  std::vector<std::string> atoms;
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t index_of(std::string_view name) const;
};

/// Checks the block invariants and throws ScenarioError on violation.
void validate_block_scenario(const BlockScenario& s);

BlockScenario load_block_scenario(std::string_view text);

/// Rays become atoms and contexts become blocks. Rays that lie in no
/// context are dropped.
BlockScenario to_block_scenario(const RayScenario& s);

}  // namespace qframes
