#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qframes/catalog.hpp"
#include "qframes/frames.hpp"
#include "qframes/oml.hpp"
#include "qframes/pasting.hpp"
#include "qframes/scenario.hpp"

namespace support {

inline std::string_view text(std::string_view name) {
  const auto t = qframes::catalog_text(name);
  if (!t) throw std::out_of_range("no catalog entry " + std::string(name));
  return *t;
}

inline qframes::RayScenario rays(std::string_view name) { return qframes::load_ray_scenario(text(name)); }

inline qframes::BlockScenario blocks(std::string_view name) {
  const auto t = text(name);
  if (qframes::detect_kind(t) == qframes::InputKind::rays) return qframes::to_block_scenario(rays(name));
  return qframes::load_block_scenario(t);
}

/// Catalog entry as a lattice (block files are pasted, tables loaded as is).
inline qframes::OMLRef lattice(std::string_view name) {
  const auto t = text(name);
  if (qframes::detect_kind(t) == qframes::InputKind::lattice) {
    return std::make_shared<const qframes::FiniteOML>(qframes::load_lattice_table(t));
  }
  auto pasted = qframes::scenario_orthoposet(blocks(name));
  if (!pasted.lattice) throw std::runtime_error(std::string(name) + " does not paste to a lattice");
  return std::make_shared<const qframes::FiniteOML>(std::move(*pasted.lattice));
}

inline qframes::OMLRef share(qframes::FiniteOML l) { return std::make_shared<const qframes::FiniteOML>(std::move(l)); }

/// Catalog entries whose pasting is an orthomodular lattice.
inline constexpr std::string_view kOmlEntries[] = {"b2", "b4", "b8", "mo2", "mo3", "twoblocks"};

}  // namespace support
