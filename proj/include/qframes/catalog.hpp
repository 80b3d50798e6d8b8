#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qframes {

/// Bundled input files, addressed as catalog:<name>.
struct CatalogEntry {
  std::string_view name;
  std::string_view text;
};

/// Sorted by name.
const std::vector<CatalogEntry>& catalog_entries();

std::optional<std::string_view> catalog_text(std::string_view name);

/// The leading comment block, without the comment markers.
std::string catalog_description(std::string_view text);

enum class InputKind { rays, blocks, lattice };

std::string to_string(InputKind kind);

/// Decided by the first keyword: dim/radicand (rays), atoms (blocks) or
/// elements (lattice table). Throws ParseError otherwise.
InputKind detect_kind(std::string_view text);

}  // namespace qframes
