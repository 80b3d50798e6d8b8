#include "qframes/catalog.hpp"

#include <algorithm>

#include "line_reader.hpp"
#include "qframes/errors.hpp"

namespace qframes {

namespace detail {
extern const std::vector<CatalogEntry> bundled_catalog;
}

const std::vector<CatalogEntry>& catalog_entries() { return detail::bundled_catalog; }

std::optional<std::string_view> catalog_text(std::string_view name) {
  for (const auto& e : catalog_entries()) {
    if (e.name == name) return e.text;
  }
  return std::nullopt;
}

std::string catalog_description(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line.front() != '#') break;
    line.remove_prefix(1);
    if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (!out.empty()) out += ' ';
    out += line;
  }
  return out;
}

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::rays:
      return "rays";
    case InputKind::blocks:
      return "blocks";
    case InputKind::lattice:
      break;
  }
  return "lattice";
}

InputKind detect_kind(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError(0, 0, "empty input");
  const auto& head = lines.front().tokens.front();
  if (head.text == "dim" || head.text == "radicand") return InputKind::rays;
  if (head.text == "atoms") return InputKind::blocks;
  if (head.text == "elements") return InputKind::lattice;
  throw ParseError(lines.front().number, head.column,
                   "unknown input format: expected 'dim', 'atoms' or 'elements', found '" + std::string(head.text) + "'");
}

}  // namespace qframes
