#include "qframes/oml.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "line_reader.hpp"
#include "qframes/errors.hpp"

namespace qframes {
namespace {

void close_order(std::vector<std::uint8_t>& leq, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq[k * n + j]) leq[i * n + j] = 1;
      }
    }
  }
}

// Least upper bound (or greatest lower bound when `upper` is false) of a
// and b under `leq`, if it exists.
std::optional<Element> bound(const std::vector<std::uint8_t>& leq, std::size_t n, Element a, Element b,
                             bool upper) {
  auto le = [&](Element x, Element y) { return upper ? leq[x * n + y] != 0 : leq[y * n + x] != 0; };
  std::optional<Element> best;
  for (Element c = 0; c < n; ++c) {
    if (!le(a, c) || !le(b, c)) continue;
    if (!best || le(c, *best)) best = c;
  }
  if (!best) return std::nullopt;
  for (Element c = 0; c < n; ++c) {
    if (le(a, c) && le(b, c) && !le(*best, c)) return std::nullopt;
  }
  return best;
}

std::string element_list(const FiniteOML& l, std::initializer_list<Element> xs) {
  std::string out;
  for (auto x : xs) {
    if (!out.empty()) out += ", ";
    out += l.label(x);
  }
  return out;
}

}  // namespace

std::optional<MissingBound> find_missing_bound(const Orthoposet& p) {
  const auto n = p.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      if (!bound(p.leq, n, a, b, true)) return MissingBound{a, b, true};
      if (!bound(p.leq, n, a, b, false)) return MissingBound{a, b, false};
    }
  }
  return std::nullopt;
}

FiniteOML FiniteOML::from_order(std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                                std::vector<Element> ortho) {
  const auto n = labels.size();
  if (n == 0) throw StructureError("empty lattice");
  if (leq.size() != n * n || ortho.size() != n) throw std::invalid_argument("FiniteOML: table size mismatch");
  for (auto o : ortho) {
    if (o >= n) throw std::invalid_argument("FiniteOML: orthocomplement out of range");
  }
  close_order(leq, n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (leq[a * n + b] && leq[b * n + a]) {
        throw StructureError("order is not antisymmetric: '" + labels[a] + "' and '" + labels[b] +
                             "' are mutually below each other");
      }
    }
  }
  FiniteOML l;
  l.join_.resize(n * n);
  l.meet_.resize(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      const auto j = bound(leq, n, a, b, true);
      const auto m = bound(leq, n, a, b, false);
      if (!j) throw StructureError("not a lattice: '" + labels[a] + "' and '" + labels[b] + "' have no join");
      if (!m) throw StructureError("not a lattice: '" + labels[a] + "' and '" + labels[b] + "' have no meet");
      l.join_[a * n + b] = l.join_[b * n + a] = *j;
      l.meet_[a * n + b] = l.meet_[b * n + a] = *m;
    }
  }
  Element zero = 0, one = 0;
  for (Element a = 1; a < n; ++a) {
    zero = l.meet_[zero * n + a];
    one = l.join_[one * n + a];
  }
  l.labels_ = std::move(labels);
  l.leq_ = std::move(leq);
  l.ortho_ = std::move(ortho);
  l.zero_ = zero;
  l.one_ = one;
  return l;
}

FiniteOML FiniteOML::from_orthoposet(const Orthoposet& p) { return from_order(p.labels, p.leq, p.ortho); }

FiniteOML FiniteOML::from_tables(std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                                 std::vector<Element> join, std::vector<Element> meet, std::vector<Element> ortho,
                                 Element zero, Element one) {
  const auto n = labels.size();
  if (leq.size() != n * n || join.size() != n * n || meet.size() != n * n || ortho.size() != n) {
    throw std::invalid_argument("FiniteOML: tables are not total");
  }
  const auto in_range = [n](Element x) { return x < n; };
  if (!std::all_of(join.begin(), join.end(), in_range) || !std::all_of(meet.begin(), meet.end(), in_range) ||
      !std::all_of(ortho.begin(), ortho.end(), in_range) || zero >= n || one >= n) {
    throw std::invalid_argument("FiniteOML: tables are not closed");
  }
  FiniteOML l;
  l.labels_ = std::move(labels);
  l.leq_ = std::move(leq);
  l.join_ = std::move(join);
  l.meet_ = std::move(meet);
  l.ortho_ = std::move(ortho);
  l.zero_ = zero;
  l.one_ = one;
  return l;
}

Element FiniteOML::find(std::string_view label) const {
  for (Element a = 0; a < size(); ++a) {
    if (labels_[a] == label) return a;
  }
  throw std::out_of_range("unknown element '" + std::string(label) + "'");
}

std::vector<Element> FiniteOML::atoms() const {
  std::vector<Element> out;
  for (Element a = 0; a < size(); ++a) {
    if (a == zero_) continue;
    bool covers = true;
    for (Element b = 0; b < size() && covers; ++b) {
      if (b != zero_ && b != a && leq(b, a)) covers = false;
    }
    if (covers) out.push_back(a);
  }
  return out;
}

ValidationReport validate_ortholattice(const FiniteOML& l) {
  ValidationReport report;
  const auto n = static_cast<Element>(l.size());
  auto fail = [&](std::string axiom, std::vector<Element> witness, std::string detail) {
    report.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };
  auto first = [&](auto&& pred) -> std::optional<Element> {
    for (Element a = 0; a < n; ++a) {
      if (pred(a)) return a;
    }
    return std::nullopt;
  };
  auto first_pair = [&](auto&& pred) -> std::optional<std::pair<Element, Element>> {
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (pred(a, b)) return std::pair{a, b};
      }
    }
    return std::nullopt;
  };

  if (auto a = first([&](Element a) { return !l.leq(a, a); })) {
    fail("order reflexive", {*a}, l.label(*a) + " is not below itself");
  }
  if (auto p = first_pair([&](Element a, Element b) { return a != b && l.leq(a, b) && l.leq(b, a); })) {
    fail("order antisymmetric", {p->first, p->second}, element_list(l, {p->first, p->second}));
  }
  {
    bool found = false;
    for (Element a = 0; a < n && !found; ++a) {
      for (Element b = 0; b < n && !found; ++b) {
        if (!l.leq(a, b)) continue;
        for (Element c = 0; c < n && !found; ++c) {
          if (l.leq(b, c) && !l.leq(a, c)) {
            fail("order transitive", {a, b, c}, element_list(l, {a, b, c}));
            found = true;
          }
        }
      }
    }
  }
  if (auto a = first([&](Element a) { return !l.leq(l.zero(), a); })) {
    fail("zero is bottom", {*a}, l.label(l.zero()) + " is not below " + l.label(*a));
  }
  if (auto a = first([&](Element a) { return !l.leq(a, l.one()); })) {
    fail("one is top", {*a}, l.label(*a) + " is not below " + l.label(l.one()));
  }
  auto lub_fails = [&](Element a, Element b) {
    const auto j = l.join(a, b);
    if (!l.leq(a, j) || !l.leq(b, j)) return true;
    for (Element c = 0; c < n; ++c) {
      if (l.leq(a, c) && l.leq(b, c) && !l.leq(j, c)) return true;
    }
    return false;
  };
  if (auto p = first_pair(lub_fails)) {
    fail("join is least upper bound", {p->first, p->second},
         "join(" + element_list(l, {p->first, p->second}) + ") = " + l.label(l.join(p->first, p->second)));
  }
  auto glb_fails = [&](Element a, Element b) {
    const auto m = l.meet(a, b);
    if (!l.leq(m, a) || !l.leq(m, b)) return true;
    for (Element c = 0; c < n; ++c) {
      if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) return true;
    }
    return false;
  };
  if (auto p = first_pair(glb_fails)) {
    fail("meet is greatest lower bound", {p->first, p->second},
         "meet(" + element_list(l, {p->first, p->second}) + ") = " + l.label(l.meet(p->first, p->second)));
  }
  if (auto a = first([&](Element a) { return l.ortho(l.ortho(a)) != a; })) {
    fail("orthocomplement involutive", {*a},
         l.label(*a) + "** = " + l.label(l.ortho(l.ortho(*a))));
  }
  if (auto p = first_pair([&](Element a, Element b) { return l.leq(a, b) && !l.leq(l.ortho(b), l.ortho(a)); })) {
    fail("orthocomplement order-reversing", {p->first, p->second}, element_list(l, {p->first, p->second}));
  }
  if (auto a = first([&](Element a) { return l.join(a, l.ortho(a)) != l.one(); })) {
    fail("excluded middle", {*a}, l.label(*a) + " v " + l.label(l.ortho(*a)) + " != 1");
  }
  if (auto a = first([&](Element a) { return l.meet(a, l.ortho(a)) != l.zero(); })) {
    fail("noncontradiction", {*a}, l.label(*a) + " ^ " + l.label(l.ortho(*a)) + " != 0");
  }
  if (auto p = first_pair([&](Element a, Element b) {
        return l.ortho(l.join(a, b)) != l.meet(l.ortho(a), l.ortho(b)) ||
               l.ortho(l.meet(a, b)) != l.join(l.ortho(a), l.ortho(b));
      })) {
    fail("De Morgan", {p->first, p->second}, element_list(l, {p->first, p->second}));
  }
  return report;
}

std::optional<std::pair<Element, Element>> verify_orthomodularity(const FiniteOML& l) {
  const auto n = static_cast<Element>(l.size());
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (l.leq(a, b) && l.join(a, l.meet(l.ortho(a), b)) != b) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

bool compatible(const FiniteOML& l, Element a, Element b) {
  return a == l.join(l.meet(a, b), l.meet(a, l.ortho(b)));
}

bool compatible_by_closure(const FiniteOML& l, Element a, Element b) {
  const auto s = generated_subalgebra(l, {std::min(a, b), std::max(a, b)});
  return is_distributive(l, s);
}

ElementSet generated_subalgebra(const FiniteOML& l, const ElementSet& s) {
  std::vector<std::uint8_t> in(l.size(), 0);
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  add(l.zero());
  add(l.one());
  for (auto x : s) add(x);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto x = members[i];
    add(l.ortho(x));
    for (std::size_t j = 0; j <= i; ++j) {
      add(l.join(x, members[j]));
      add(l.meet(x, members[j]));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_distributive(const FiniteOML& l, const ElementSet& s) {
  for (auto x : s) {
    for (auto y : s) {
      for (auto z : s) {
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
      }
    }
  }
  return true;
}

FiniteOML boolean_lattice(const std::vector<std::string>& atom_names) {
  const auto k = atom_names.size();
  if (k == 0 || k > 20) throw std::invalid_argument("boolean_lattice: need 1..20 atoms");
  const std::size_t n = std::size_t{1} << k;
  const Element full = static_cast<Element>(n - 1);
  std::vector<std::string> labels(n);
  std::vector<std::uint8_t> leq(n * n);
  std::vector<Element> join(n * n), meet(n * n), ortho(n);
  for (Element x = 0; x < n; ++x) {
    if (x == 0) {
      labels[x] = "0";
    } else if (x == full) {
      labels[x] = "1";
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        if (x >> i & 1u) labels[x] += (labels[x].empty() ? "" : "|") + atom_names[i];
      }
    }
    ortho[x] = full & ~x;
    for (Element y = 0; y < n; ++y) {
      leq[x * n + y] = (x & ~y) == 0;
      join[x * n + y] = x | y;
      meet[x * n + y] = x & y;
    }
  }
  return FiniteOML::from_tables(std::move(labels), std::move(leq), std::move(join), std::move(meet),
                                std::move(ortho), 0, full);
}

FiniteOML boolean_lattice(std::size_t atom_count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atom_count; ++i) names.push_back("x" + std::to_string(i + 1));
  return boolean_lattice(names);
}

FiniteOML mo_lattice(std::size_t n) {
  if (n == 0 || n > 26) throw std::invalid_argument("mo_lattice: need 1..26 complement pairs");
  std::vector<std::string> labels{"0"};
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name(1, static_cast<char>('a' + i));
    labels.push_back(name);
    labels.push_back(name + "'");
  }
  labels.push_back("1");
  const auto size = labels.size();
  const auto top = static_cast<Element>(size - 1);
  std::vector<std::uint8_t> leq(size * size, 0);
  std::vector<Element> ortho(size);
  for (Element x = 0; x < size; ++x) {
    leq[0 * size + x] = 1;
    leq[x * size + top] = 1;
    leq[x * size + x] = 1;
  }
  ortho[0] = top;
  ortho[top] = 0;
  for (Element i = 1; i < top; i += 2) {
    ortho[i] = i + 1;
    ortho[i + 1] = i;
  }
  return FiniteOML::from_order(std::move(labels), std::move(leq), std::move(ortho));
}

FiniteOML load_lattice_table(std::string_view text) {
  std::vector<std::string> labels;
  std::map<std::string, Element, std::less<>> index;
  std::vector<std::pair<Element, Element>> order;
  std::vector<std::optional<Element>> ortho;
  std::size_t elements_line = 0;

  auto lookup = [&](const detail::Token& tok, std::size_t line) {
    const auto it = index.find(tok.text);
    if (it == index.end()) throw ParseError(line, tok.column, "unknown element '" + std::string(tok.text) + "'");
    return it->second;
  };
  auto set_ortho = [&](Element x, Element y, const detail::Token& tok, std::size_t line) {
    if (ortho[x] && *ortho[x] != y) {
      throw ParseError(line, tok.column, "conflicting orthocomplement for '" + labels[x] + "'");
    }
    ortho[x] = y;
  };

  for (const auto& line : detail::split_lines(text)) {
    const auto& head = line.tokens[0];
    if (head.text == "elements") {
      if (elements_line) throw ParseError(line.number, head.column, "duplicate 'elements' line");
      elements_line = line.number;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        detail::require_name(line.tokens[t], line.number);
        const std::string name(line.tokens[t].text);
        if (index.count(name)) throw ParseError(line.number, line.tokens[t].column, "duplicate element '" + name + "'");
        index.emplace(name, static_cast<Element>(labels.size()));
        labels.push_back(name);
      }
      ortho.assign(labels.size(), std::nullopt);
    } else if (!elements_line) {
      throw ParseError(line.number, head.column, "'elements' must come first");
    } else if (head.text == "leq") {
      if (line.tokens.size() < 3) throw ParseError(line.number, head.column, "expected 'leq <x> <y> ...'");
      for (std::size_t t = 1; t + 1 < line.tokens.size(); ++t) {
        order.emplace_back(lookup(line.tokens[t], line.number), lookup(line.tokens[t + 1], line.number));
      }
    } else if (head.text == "ortho" || head.text == "complement") {
      if (line.tokens.size() != 3) {
        throw ParseError(line.number, head.column, "expected '" + std::string(head.text) + " <x> <y>'");
      }
      const auto x = lookup(line.tokens[1], line.number);
      const auto y = lookup(line.tokens[2], line.number);
      set_ortho(x, y, line.tokens[1], line.number);
      if (head.text == "ortho") set_ortho(y, x, line.tokens[2], line.number);
    } else {
      throw ParseError(line.number, head.column, "unknown keyword '" + std::string(head.text) + "'");
    }
  }
  if (labels.empty()) throw ParseError(0, 0, "missing 'elements' line");

  const auto n = labels.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (auto [a, b] : order) leq[a * n + b] = 1;
  close_order(leq, n);
  // Bottom and top complement each other unless stated otherwise.
  std::optional<Element> bottom, top;
  for (Element a = 0; a < n; ++a) {
    bool is_bottom = true, is_top = true;
    for (Element b = 0; b < n; ++b) {
      is_bottom = is_bottom && leq[a * n + b];
      is_top = is_top && leq[b * n + a];
    }
    if (is_bottom) bottom = a;
    if (is_top) top = a;
  }
  if (bottom && top) {
    if (!ortho[*bottom]) ortho[*bottom] = *top;
    if (!ortho[*top]) ortho[*top] = *bottom;
  }
  std::vector<Element> comp(n);
  for (Element a = 0; a < n; ++a) {
    if (!ortho[a]) throw StructureError("orthocomplement undefined for '" + labels[a] + "'");
    comp[a] = *ortho[a];
  }
  return FiniteOML::from_order(std::move(labels), std::move(leq), std::move(comp));
}

}  // namespace qframes
