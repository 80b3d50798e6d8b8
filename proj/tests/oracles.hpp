#pragma once

// Brute-force reference computations. They read only the lattice tables
// (leq, join, meet, ortho) and never call the enumeration engines.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <utility>
#include <vector>

#include "qframes/oml.hpp"

namespace oracle {

using qframes::Element;
using qframes::FiniteOML;

/// Assignments in {0,1}^n with exactly one 1 per context and at most one 1
/// per exclusion pair.
inline std::size_t count_valuations(std::size_t n, const std::vector<std::vector<std::size_t>>& contexts,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& exclusions = {}) {
  std::size_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool ok = true;
    for (const auto& c : contexts) {
      int ones = 0;
      for (auto x : c) ones += (bits >> x) & 1u;
      ok = ok && ones == 1;
    }
    for (const auto& [a, b] : exclusions) ok = ok && !(((bits >> a) & 1u) && ((bits >> b) & 1u));
    count += ok;
  }
  return count;
}

/// Element map of the candidate frame with the given atom images: mask m
/// goes to the join of the images of its atoms.
inline std::vector<Element> induced_map(const FiniteOML& l, const std::vector<Element>& images) {
  std::vector<Element> f(std::size_t{1} << images.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    Element v = l.zero();
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (m >> i & 1u) v = l.join(v, images[i]);
    }
    f[m] = v;
  }
  return f;
}

/// Homomorphism test on the full element map of B_(2^k) -> L.
inline bool is_boolean_hom(const FiniteOML& l, const std::vector<Element>& f) {
  const auto top = f.size() - 1;
  if (f[0] != l.zero() || f[top] != l.one()) return false;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[top & ~x] != l.ortho(f[x])) return false;
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (f[x | y] != l.join(f[x], f[y]) || f[x & y] != l.meet(f[x], f[y])) return false;
    }
  }
  return true;
}

struct FrameCount {
  std::size_t total = 0;
  std::size_t injective = 0;
};

/// Every atom-image tuple in L^k, kept when the induced map is a
/// homomorphism.
inline FrameCount count_frames(std::size_t atoms, const FiniteOML& l) {
  FrameCount out;
  std::vector<Element> images(atoms, 0);
  const auto n = l.size();
  while (true) {
    const auto f = induced_map(l, images);
    if (is_boolean_hom(l, f)) {
      ++out.total;
      auto sorted = f;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) ++out.injective;
    }
    std::size_t i = 0;
    while (i < atoms && ++images[i] == n) images[i++] = 0;
    if (i == atoms) break;
  }
  return out;
}

inline bool closed_boolean(const FiniteOML& l, const std::vector<Element>& s) {
  std::vector<std::uint8_t> in(l.size(), 0);
  for (auto x : s) in[x] = 1;
  for (auto x : s) {
    if (!in[l.ortho(x)]) return false;
    for (auto y : s) {
      if (!in[l.join(x, y)] || !in[l.meet(x, y)]) return false;
    }
  }
  for (auto x : s) {
    for (auto y : s) {
      for (auto z : s) {
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
      }
    }
  }
  return true;
}

/// Element sets of all Boolean subalgebras, by subset enumeration.
inline std::vector<std::vector<Element>> boolean_subalgebras(const FiniteOML& l) {
  std::vector<Element> middle;
  for (Element x = 0; x < l.size(); ++x) {
    if (x != l.zero() && x != l.one()) middle.push_back(x);
  }
  std::vector<std::vector<Element>> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << middle.size()); ++bits) {
    std::vector<Element> s{l.zero(), l.one()};
    for (std::size_t i = 0; i < middle.size(); ++i) {
      if (bits >> i & 1u) s.push_back(middle[i]);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (closed_boolean(l, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<Element>> blocks(const FiniteOML& l) {
  const auto all = boolean_subalgebras(l);
  std::vector<std::vector<Element>> out;
  for (const auto& s : all) {
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const auto& t) {
      return t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end());
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

/// x and y commute: x = (x ^ y) v (x ^ y*).
inline bool commute(const FiniteOML& l, Element x, Element y) {
  return x == l.join(l.meet(x, y), l.meet(x, l.ortho(y)));
}

/// Maps L -> {0,1} that respect 0, 1, complements, and meets and joins of
/// commuting pairs.
inline std::size_t count_global_valuations(const FiniteOML& l) {
  const auto n = l.size();
  std::size_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    auto v = [&](Element x) { return (bits >> x) & 1u; };
    bool ok = v(l.zero()) == 0 && v(l.one()) == 1;
    for (Element x = 0; x < n && ok; ++x) {
      ok = v(l.ortho(x)) == 1 - v(x);
      for (Element y = 0; y < n && ok; ++y) {
        if (!commute(l, x, y)) continue;
        ok = v(l.meet(x, y)) == (v(x) & v(y)) && v(l.join(x, y)) == (v(x) | v(y));
      }
    }
    count += ok;
  }
  return count;
}

/// Maps K -> L preserving 0, 1, complements and joins of orthogonal pairs.
/// Enumerated over one representative of each {x, x*} pair.
inline std::size_t count_quantum_morphisms(const FiniteOML& k, const FiniteOML& l) {
  std::vector<Element> reps;
  std::vector<std::uint8_t> seen(k.size(), 0);
  for (Element x = 0; x < k.size(); ++x) {
    if (x == k.zero() || x == k.one() || seen[x]) continue;
    seen[x] = seen[k.ortho(x)] = 1;
    reps.push_back(x);
  }
  std::vector<Element> choice(reps.size(), 0);
  std::vector<Element> phi(k.size());
  std::size_t count = 0;
  while (true) {
    phi[k.zero()] = l.zero();
    phi[k.one()] = l.one();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      phi[reps[i]] = choice[i];
      phi[k.ortho(reps[i])] = l.ortho(choice[i]);
    }
    bool ok = true;
    for (Element x = 0; x < k.size() && ok; ++x) {
      for (Element y = 0; y < k.size() && ok; ++y) {
        if (!k.leq(x, k.ortho(y))) continue;
        ok = l.leq(phi[x], l.ortho(phi[y])) && phi[k.join(x, y)] == l.join(phi[x], phi[y]);
      }
    }
    count += ok;
    std::size_t i = 0;
    while (i < reps.size() && ++choice[i] == l.size()) choice[i++] = 0;
    if (i == reps.size()) break;
  }
  return count;
}

/// Elements in both images.
inline std::vector<Element> intersection(std::vector<Element> a, std::vector<Element> b) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Element count of a block pasting computed by closing the atom sets
/// directly: every subset of a block's atoms, identified across blocks
/// when the subsets or their in-block complements coincide.
inline std::size_t pasting_size(const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> items;  // (set, complement)
  for (const auto& b : blocks) {
    for (std::uint32_t m = 0; m < (1u << b.size()); ++m) {
      std::vector<std::size_t> s, c;
      for (std::size_t i = 0; i < b.size(); ++i) (m >> i & 1u ? s : c).push_back(b[i]);
      std::sort(s.begin(), s.end());
      std::sort(c.begin(), c.end());
      items.emplace_back(s, c);
    }
  }
  // Union-find over items.
  std::vector<std::size_t> parent(items.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (items[i].first == items[j].first || items[i].second == items[j].second) parent[find(j)] = find(i);
    }
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < items.size(); ++i) roots += find(i) == i;
  return roots;
}

}  // namespace oracle
