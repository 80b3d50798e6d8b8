#include "qframes/scenario.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <stdexcept>

#include "cliques.hpp"
#include "line_reader.hpp"
#include "qframes/errors.hpp"

namespace qframes {
namespace {

using detail::Line;
using detail::Token;

QuadraticInteger inner_product(const Ray& r1, const Ray& r2) {
  if (r1.coords.size() != r2.coords.size()) {
    throw std::invalid_argument("dimension mismatch: ray '" + r1.name + "' has " + std::to_string(r1.coords.size()) +
                                " coordinates, ray '" + r2.name + "' has " + std::to_string(r2.coords.size()));
  }
  QuadraticInteger sum;
  for (std::size_t i = 0; i < r1.coords.size(); ++i) sum += r1.coords[i] * r2.coords[i];
  return sum;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && detail::is_space(s[b])) ++b;
  while (e > b && detail::is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// <c> := a | a+b*rt | a-b*rt, plus the shorthands rt, -rt, b*rt, a+rt.
QuadraticInteger parse_coordinate(std::string_view raw, std::int64_t radicand, std::size_t line, std::size_t column) {
  std::string s;
  for (char c : raw) {
    if (!detail::is_space(c)) s.push_back(c);
  }
  static const std::regex integer_only(R"(^[+-]?[0-9]+$)");
  static const std::regex with_root(R"(^(?:([+-]?[0-9]+)([+-])|([+-]?))(?:([0-9]+)\*)?rt$)");
  std::smatch m;
  try {
    if (std::regex_match(s, integer_only)) return QuadraticInteger(std::stoll(s), 0, radicand);
    if (std::regex_match(s, m, with_root)) {
      if (radicand == 1) throw ParseError(line, column, "'rt' used but no radicand declared");
      const std::int64_t a = m[1].matched ? std::stoll(m[1].str()) : 0;
      const std::string sign = m[2].matched ? m[2].str() : m[3].str();
      std::int64_t b = m[4].matched ? std::stoll(m[4].str()) : 1;
      if (sign == "-") b = -b;
      return QuadraticInteger(a, b, radicand);
    }
  } catch (const std::out_of_range&) {
    throw ParseError(line, column, "coefficient out of range in '" + s + "'");
  }
  throw ParseError(line, column, "malformed coordinate '" + s + "'");
}

Ray parse_ray_line(const Line& line, std::size_t dimension, std::int64_t radicand) {
  const auto content = line.content;
  const auto eq = content.find('=');
  if (eq == std::string_view::npos) throw ParseError(line.number, line.tokens[0].column, "expected 'ray <name> = (...)'");
  if (line.tokens.size() < 2 || line.tokens[1].column - 1 >= eq) {
    throw ParseError(line.number, eq + 1, "missing ray name");
  }
  const auto& name_tok = line.tokens[1];
  auto name = name_tok.text;
  if (const auto cut = name.find('='); cut != std::string_view::npos) name = name.substr(0, cut);
  if (name.empty()) throw ParseError(line.number, name_tok.column, "missing ray name");
  detail::require_name({name, name_tok.column}, line.number);
  if (trim(content.substr(name_tok.column - 1 + name.size(), eq - (name_tok.column - 1 + name.size()))) != "") {
    throw ParseError(line.number, name_tok.column + name.size(), "unexpected text before '='");
  }
  const auto open = content.find('(', eq);
  if (open == std::string_view::npos || trim(content.substr(eq + 1, open - eq - 1)) != "") {
    throw ParseError(line.number, eq + 2, "expected '(' after '='");
  }
  const auto close = content.find(')', open);
  if (close == std::string_view::npos) throw ParseError(line.number, content.size() + 1, "missing ')'");
  if (trim(content.substr(close + 1)) != "") throw ParseError(line.number, close + 2, "unexpected text after ')'");

  Ray ray{std::string(name), {}};
  std::size_t start = open + 1;
  while (true) {
    const auto comma = content.find(',', start);
    const auto end = (comma == std::string_view::npos || comma > close) ? close : comma;
    ray.coords.push_back(parse_coordinate(content.substr(start, end - start), radicand, line.number, start + 1));
    if (end == close) break;
    start = end + 1;
  }
  if (ray.coords.size() != dimension) {
    throw ParseError(line.number, open + 1,
                     "ray '" + ray.name + "' has " + std::to_string(ray.coords.size()) + " coordinates, expected " +
                         std::to_string(dimension));
  }
  if (std::all_of(ray.coords.begin(), ray.coords.end(), [](const auto& c) { return c.is_zero(); })) {
    throw ScenarioError("line " + std::to_string(line.number) + ": ray '" + ray.name + "' is the zero vector");
  }
  return ray;
}

}  // namespace

bool orthogonal(const Ray& r1, const Ray& r2) { return inner_product(r1, r2).is_zero(); }

bool proportional(const Ray& r1, const Ray& r2) {
  if (r1.coords.size() != r2.coords.size()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < r1.coords.size(); ++i) {
    for (std::size_t j = i + 1; j < r1.coords.size(); ++j) {
      if (!(r1.coords[i] * r2.coords[j] - r1.coords[j] * r2.coords[i]).is_zero()) return false;
    }
  }
  return true;
}

std::vector<std::uint8_t> RayScenario::orthogonality() const {
  const auto n = rays.size();
  std::vector<std::uint8_t> adj(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      adj[i * n + j] = adj[j * n + i] = orthogonal(rays[i], rays[j]) ? 1 : 0;
    }
  }
  return adj;
}

std::size_t RayScenario::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].name == name) return i;
  }
  throw std::out_of_range("unknown ray '" + std::string(name) + "'");
}

RayScenario load_ray_scenario(std::string_view text) {
  RayScenario s;
  std::map<std::string, std::size_t, std::less<>> names;
  std::vector<std::pair<const Line*, std::vector<std::size_t>>> context_lines;
  const auto lines = detail::split_lines(text);
  bool have_dim = false;
  bool have_radicand = false;

  for (const auto& line : lines) {
    const auto& head = line.tokens[0];
    if (head.text == "dim") {
      if (have_dim) throw ParseError(line.number, head.column, "duplicate 'dim'");
      if (line.tokens.size() != 2) throw ParseError(line.number, head.column, "expected 'dim <d>'");
      const auto d = detail::parse_int(line.tokens[1], line.number);
      if (d < 1) throw ParseError(line.number, line.tokens[1].column, "dimension must be positive");
      s.dimension = static_cast<std::size_t>(d);
      have_dim = true;
    } else if (head.text == "radicand") {
      if (have_radicand) throw ParseError(line.number, head.column, "duplicate 'radicand'");
      if (!s.rays.empty()) throw ParseError(line.number, head.column, "'radicand' must precede all rays");
      if (line.tokens.size() != 2) throw ParseError(line.number, head.column, "expected 'radicand <D>'");
      const auto d = detail::parse_int(line.tokens[1], line.number);
      if (!is_square_free(d)) {
        throw ParseError(line.number, line.tokens[1].column, "radicand must be a square-free positive integer");
      }
      s.radicand = d;
      have_radicand = true;
    } else if (head.text == "ray") {
      if (!have_dim) throw ParseError(line.number, head.column, "'dim' must precede all rays");
      auto ray = parse_ray_line(line, s.dimension, s.radicand);
      if (names.count(ray.name)) {
        throw ScenarioError("line " + std::to_string(line.number) + ": duplicate ray name '" + ray.name + "'");
      }
      for (const auto& other : s.rays) {
        if (proportional(ray, other)) {
          throw ScenarioError("line " + std::to_string(line.number) + ": duplicate ray '" + ray.name +
                              "' is proportional to '" + other.name + "'");
        }
      }
      names.emplace(ray.name, s.rays.size());
      s.rays.push_back(std::move(ray));
    } else if (head.text == "context") {
      std::vector<std::size_t> members;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        const auto it = names.find(line.tokens[t].text);
        if (it == names.end()) {
          throw ParseError(line.number, line.tokens[t].column,
                           "unknown ray '" + std::string(line.tokens[t].text) + "' (rays must be declared first)");
        }
        members.push_back(it->second);
      }
      context_lines.emplace_back(&line, std::move(members));
    } else {
      throw ParseError(line.number, head.column, "unknown keyword '" + std::string(head.text) + "'");
    }
  }
  if (!have_dim) throw ParseError(0, 0, "missing 'dim' line");

  const auto adj = s.orthogonality();
  const auto n = s.rays.size();
  if (!context_lines.empty()) {
    s.explicit_contexts = true;
    std::set<std::vector<std::size_t>> seen;
    for (auto& [line, members] : context_lines) {
      const auto where = "line " + std::to_string(line->number) + ": ";
      if (members.size() != s.dimension) {
        throw ScenarioError(where + "context of wrong size (" + std::to_string(members.size()) + " rays, dimension " +
                            std::to_string(s.dimension) + ")");
      }
      std::sort(members.begin(), members.end());
      if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw ScenarioError(where + "context lists a ray twice");
      }
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if (!adj[members[i] * n + members[j]]) {
            throw ScenarioError(where + "non-orthogonal explicit context: '" + s.rays[members[i]].name + "' and '" +
                                s.rays[members[j]].name + "'");
          }
        }
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (std::find(members.begin(), members.end(), r) != members.end()) continue;
        if (std::all_of(members.begin(), members.end(), [&](auto m) { return adj[r * n + m] != 0; })) {
          throw ScenarioError(where + "context is not maximal: '" + s.rays[r].name + "' is orthogonal to all members");
        }
      }
      if (!seen.insert(members).second) throw ScenarioError(where + "duplicate context");
      s.contexts.push_back(members);
    }
    std::sort(s.contexts.begin(), s.contexts.end());
  } else {
    auto cliques = detail::MaximalCliques(adj, n).run();
    for (auto& c : cliques) {
      if (c.size() == s.dimension) {
        s.contexts.push_back(std::move(c));
      } else {
        s.partial_cliques.push_back(std::move(c));
      }
    }
  }
  return s;
}

std::size_t BlockScenario::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i] == name) return i;
  }
  throw std::out_of_range("unknown atom '" + std::string(name) + "'");
}

void validate_block_scenario(const BlockScenario& s) {
  std::vector<std::uint8_t> covered(s.atoms.size(), 0);
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    const auto& block = s.blocks[b];
    if (block.empty()) throw ScenarioError("block " + std::to_string(b + 1) + " is empty");
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (block[i] >= s.atoms.size()) throw ScenarioError("block " + std::to_string(b + 1) + " names an unknown atom");
      if (i > 0 && block[i - 1] >= block[i]) {
        throw ScenarioError("block " + std::to_string(b + 1) + " is not sorted or repeats an atom");
      }
      covered[block[i]] = 1;
    }
  }
  for (std::size_t a = 0; a < s.atoms.size(); ++a) {
    if (!covered[a]) throw ScenarioError("atom '" + s.atoms[a] + "' belongs to no block");
  }
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    for (std::size_t c = 0; c < s.blocks.size(); ++c) {
      if (b == c) continue;
      if (std::includes(s.blocks[c].begin(), s.blocks[c].end(), s.blocks[b].begin(), s.blocks[b].end())) {
        throw ScenarioError("block " + std::to_string(b + 1) + " is contained in block " + std::to_string(c + 1));
      }
    }
  }
}

BlockScenario load_block_scenario(std::string_view text) {
  BlockScenario s;
  std::map<std::string, std::size_t, std::less<>> names;
  for (const auto& line : detail::split_lines(text)) {
    const auto& head = line.tokens[0];
    if (head.text == "atoms") {
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        detail::require_name(line.tokens[t], line.number);
        const std::string name(line.tokens[t].text);
        if (names.count(name)) throw ParseError(line.number, line.tokens[t].column, "duplicate atom '" + name + "'");
        names.emplace(name, s.atoms.size());
        s.atoms.push_back(name);
      }
    } else if (head.text == "block") {
      std::vector<std::size_t> block;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        const auto it = names.find(line.tokens[t].text);
        if (it == names.end()) {
          throw ParseError(line.number, line.tokens[t].column,
                           "unknown atom '" + std::string(line.tokens[t].text) + "'");
        }
        if (std::find(block.begin(), block.end(), it->second) != block.end()) {
          throw ParseError(line.number, line.tokens[t].column, "atom repeated in block");
        }
        block.push_back(it->second);
      }
      if (block.empty()) throw ParseError(line.number, head.column, "empty block");
      std::sort(block.begin(), block.end());
      s.blocks.push_back(std::move(block));
    } else {
      throw ParseError(line.number, head.column, "unknown keyword '" + std::string(head.text) + "'");
    }
  }
  if (s.blocks.empty()) throw ParseError(0, 0, "no 'block' lines");
  validate_block_scenario(s);
  return s;
}

BlockScenario to_block_scenario(const RayScenario& s) {
  std::vector<std::uint8_t> used(s.rays.size(), 0);
  std::vector<std::size_t> remap(s.rays.size(), 0);
  BlockScenario out;
  for (const auto& ctx : s.contexts) {
    for (auto r : ctx) used[r] = 1;
  }
  for (std::size_t r = 0; r < s.rays.size(); ++r) {
    if (used[r]) {
      remap[r] = out.atoms.size();
      out.atoms.push_back(s.rays[r].name);
    }
  }
  for (const auto& ctx : s.contexts) {
    std::vector<std::size_t> block;
    for (auto r : ctx) block.push_back(remap[r]);
    std::sort(block.begin(), block.end());
    out.blocks.push_back(std::move(block));
  }
  validate_block_scenario(out);
  return out;
}

}  // namespace qframes
