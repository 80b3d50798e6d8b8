#include "qframes/pasting.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "disjoint_sets.hpp"
#include "qframes/errors.hpp"

namespace qframes {
namespace {

constexpr std::size_t kMaxBlockSize = 20;

struct Raw {
  std::size_t block;
  std::uint32_t mask;
};

std::vector<std::size_t> atom_set(const std::vector<std::size_t>& block, std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (mask >> i & 1u) out.push_back(block[i]);
  }
  return out;
}

std::string brace_label(const BlockScenario& s, const std::vector<std::size_t>& atoms) {
  std::string out = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? "," : "") + s.atoms[atoms[i]];
  return out + "}";
}

}  // namespace

PastingResult scenario_orthoposet(const BlockScenario& s) {
  validate_block_scenario(s);
  std::vector<std::size_t> offset;
  std::vector<Raw> raws;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    if (s.blocks[b].size() > kMaxBlockSize) throw ScenarioError("block " + std::to_string(b + 1) + " is too large");
    offset.push_back(raws.size());
    const std::uint32_t count = 1u << s.blocks[b].size();
    for (std::uint32_t m = 0; m < count; ++m) raws.push_back({b, m});
  }

  detail::DisjointSets sets(raws.size());
  std::map<std::vector<std::size_t>, std::size_t> by_set, by_complement;
  for (std::size_t r = 0; r < raws.size(); ++r) {
    const auto& block = s.blocks[raws[r].block];
    const std::uint32_t full = (1u << block.size()) - 1;
    if (auto [it, fresh] = by_set.emplace(atom_set(block, raws[r].mask), r); !fresh) sets.unite(it->second, r);
    if (auto [it, fresh] = by_complement.emplace(atom_set(block, full & ~raws[r].mask), r); !fresh) {
      sets.unite(it->second, r);
    }
  }

  // One representative per block per class.
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> seen;
  for (std::size_t r = 0; r < raws.size(); ++r) {
    const auto key = std::pair{sets.find(r), raws[r].block};
    const auto [it, fresh] = seen.emplace(key, raws[r].mask);
    if (!fresh && it->second != raws[r].mask) {
      const auto& block = s.blocks[raws[r].block];
      throw ScenarioError("inconsistent block sharing: " + brace_label(s, atom_set(block, it->second)) + " and " +
                          brace_label(s, atom_set(block, raws[r].mask)) + " of block " +
                          std::to_string(raws[r].block + 1) + " are forced equal");
    }
  }

  // Canonical element order: 0, atoms in scenario order, the rest by first
  // appearance (block, popcount, mask), 1 last.
  const auto zero_root = sets.find(offset[0]);
  const auto one_root = sets.find(offset[0] + (1u << s.blocks[0].size()) - 1);
  std::vector<std::tuple<int, std::size_t, std::size_t, std::uint32_t>> keys;
  std::map<std::size_t, std::size_t> key_of_root;
  auto propose = [&](std::size_t root, std::tuple<int, std::size_t, std::size_t, std::uint32_t> key) {
    auto [it, fresh] = key_of_root.emplace(root, keys.size());
    if (fresh) {
      keys.push_back(key);
    } else if (key < keys[it->second]) {
      keys[it->second] = key;
    }
  };
  for (std::size_t r = 0; r < raws.size(); ++r) {
    const auto root = sets.find(r);
    const auto& block = s.blocks[raws[r].block];
    if (root == zero_root) {
      propose(root, {0, 0, 0, 0});
    } else if (root == one_root) {
      propose(root, {3, 0, 0, 0});
    } else if (std::popcount(raws[r].mask) == 1) {
      propose(root, {1, block[std::countr_zero(raws[r].mask)], 0, 0});
    } else {
      propose(root, {2, raws[r].block, static_cast<std::size_t>(std::popcount(raws[r].mask)), raws[r].mask});
    }
  }
  std::vector<std::size_t> roots;
  for (const auto& [root, _] : key_of_root) roots.push_back(root);
  std::sort(roots.begin(), roots.end(),
            [&](auto x, auto y) { return keys[key_of_root[x]] < keys[key_of_root[y]]; });
  std::map<std::size_t, Element> element_of_root;
  for (std::size_t i = 0; i < roots.size(); ++i) element_of_root[roots[i]] = static_cast<Element>(i);
  const auto n = roots.size();

  PastingResult result;
  auto& p = result.structure;
  p.labels.resize(n);
  p.leq.assign(n * n, 0);
  p.ortho.resize(n);
  result.block_elements.resize(s.blocks.size());
  result.atom_elements.assign(s.atoms.size(), 0);
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    const std::uint32_t count = 1u << s.blocks[b].size();
    auto& local = result.block_elements[b];
    local.resize(count);
    for (std::uint32_t m = 0; m < count; ++m) local[m] = element_of_root[sets.find(offset[b] + m)];
    for (std::uint32_t m = 0; m < count; ++m) {
      p.ortho[local[m]] = local[(count - 1) & ~m];
      // Every superset of m inside the block lies above it.
      const std::uint32_t rest = (count - 1) & ~m;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        p.leq[local[m] * n + local[m | sub]] = 1;
        if (sub == 0) break;
      }
    }
    for (std::size_t i = 0; i < s.blocks[b].size(); ++i) result.atom_elements[s.blocks[b][i]] = local[1u << i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.leq[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.leq[k * n + j]) p.leq[i * n + j] = 1;
      }
    }
  }

  // Labels.
  std::set<std::string> used;
  std::vector<std::uint8_t> is_atom_class(n, 0);
  for (std::size_t a = 0; a < s.atoms.size(); ++a) is_atom_class[result.atom_elements[a]] = 1;
  auto representative = [&](Element e) -> std::vector<std::size_t> {
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
      const auto& local = result.block_elements[b];
      for (std::uint32_t m = 0; m < local.size(); ++m) {
        if (local[m] == e) return atom_set(s.blocks[b], m);
      }
    }
    return {};
  };
  auto claim = [&](Element e, std::string label) {
    if (used.count(label)) label = brace_label(s, representative(e));
    if (used.count(label)) label += "#" + std::to_string(e);
    used.insert(label);
    p.labels[e] = std::move(label);
  };
  const auto zero = element_of_root[zero_root];
  const auto one = element_of_root[one_root];
  claim(zero, "0");
  claim(one, "1");
  for (std::size_t a = 0; a < s.atoms.size(); ++a) {
    const auto e = result.atom_elements[a];
    if (p.labels[e].empty()) claim(e, s.atoms[a]);
  }
  for (Element e = 0; e < n; ++e) {
    if (!p.labels[e].empty()) continue;
    const auto c = p.ortho[e];
    if (is_atom_class[c] && c != one && c != zero) {
      claim(e, p.labels[c] + "'");
    } else {
      claim(e, brace_label(s, representative(e)));
    }
  }

  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (p.leq[a * n + b] && p.leq[b * n + a]) {
        throw ScenarioError("inconsistent block sharing: '" + p.labels[a] + "' and '" + p.labels[b] +
                            "' collapse under the generated order");
      }
    }
  }

  result.missing_bound = find_missing_bound(p);
  if (!result.missing_bound) {
    result.lattice = FiniteOML::from_orthoposet(p);
    result.orthomodularity_witness = verify_orthomodularity(*result.lattice);
  }
  return result;
}

}  // namespace qframes
