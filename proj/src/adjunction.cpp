#include "qframes/adjunction.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <tuple>

#include "disjoint_sets.hpp"
#include "qframes/errors.hpp"

namespace qframes {
namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> block_profile(const FiniteOML& l) {
  std::vector<std::size_t> sizes;
  for (const auto& b : enumerate_blocks(std::make_shared<const FiniteOML>(l))) sizes.push_back(b.algebra.atom_count());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::string profile_text(const std::vector<std::size_t>& sizes) {
  std::string out = "[";
  for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "," : "") + std::to_string(sizes[i]);
  return out + "]";
}

/// (orthogonal atoms, elements above) for each atom.
std::vector<std::pair<std::size_t, std::size_t>> atom_invariants(const FiniteOML& l, const std::vector<Element>& atoms) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto a : atoms) {
    std::size_t orth = 0, above = 0;
    for (auto b : atoms) orth += l.orthogonal(a, b);
    for (Element x = 0; x < l.size(); ++x) above += l.leq(a, x);
    out.emplace_back(orth, above);
  }
  return out;
}

/// Greedy orthogonal decomposition of x into atoms.
std::vector<Element> decompose(const FiniteOML& l, const std::vector<Element>& atoms, Element x) {
  std::vector<Element> parts;
  while (x != l.zero()) {
    const auto it = std::find_if(atoms.begin(), atoms.end(), [&](Element a) { return l.leq(a, x); });
    if (it == atoms.end()) throw std::logic_error("decompose: lattice is not atomistic");
    parts.push_back(*it);
    x = l.meet(l.ortho(*it), x);
  }
  return parts;
}

bool is_quantum_morphism(const FiniteOML& k, const FiniteOML& l, const std::vector<Element>& phi) {
  if (phi[k.zero()] != l.zero() || phi[k.one()] != l.one()) return false;
  for (Element x = 0; x < k.size(); ++x) {
    if (phi[k.ortho(x)] != l.ortho(phi[x])) return false;
    for (Element y = 0; y < k.size(); ++y) {
      if (!k.orthogonal(x, y)) continue;
      if (!l.orthogonal(phi[x], phi[y]) || phi[k.join(x, y)] != l.join(phi[x], phi[y])) return false;
    }
  }
  return true;
}

std::optional<std::size_t> frame_index(const std::vector<BooleanFrame>& section, const BooleanFrame& f) {
  const auto it = std::lower_bound(section.begin(), section.end(), f);
  if (it == section.end() || !(*it == f)) return std::nullopt;
  return static_cast<std::size_t>(it - section.begin());
}

/// The transformation whose component at (x, s) is phi restricted along the
/// colimit injection; empty if some component is not a frame in R.
std::optional<NaturalTransformation> transformation_of(const PastedStructure& pasted, const FramePresheaf& r,
                                                       const std::vector<Element>& phi) {
  NaturalTransformation tau;
  tau.components.resize(r.frames.size());
  std::vector<std::size_t> count(r.frames.size(), 0);
  for (const auto& x : pasted.elements.objects) count[x.base_object] = std::max(count[x.base_object], x.section + 1);
  for (std::size_t o = 0; o < r.frames.size(); ++o) tau.components[o].assign(count[o], 0);
  for (std::size_t x = 0; x < pasted.elements.objects.size(); ++x) {
    const auto [o, s] = pasted.elements.objects[x];
    const auto& b = pasted.elements.base.objects()[o];
    std::vector<Element> images;
    for (std::size_t i = 0; i < b.atom_count(); ++i) images.push_back(phi[pasted.injection[x][Mask{1} << i]]);
    try {
      const auto index = frame_index(r.frames[o], BooleanFrame(b, r.lattice, std::move(images)));
      if (!index) return std::nullopt;
      tau.components[o][s] = *index;
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return tau;
}

std::string describe_map(const FiniteOML& l, const std::vector<Element>& g) {
  std::string out;
  for (auto a : l.atoms()) out += (out.empty() ? "" : ", ") + l.label(a) + "->" + l.label(g[a]);
  return out;
}

}  // namespace

PastedStructure paste_colimit(const BooleanDiagram& p) {
  if (const auto laws = check_functor_laws(p); !laws.ok()) {
    throw std::invalid_argument("functor-law violation: " + laws.witnesses.front());
  }
  PastedStructure out;
  out.elements = category_of_elements(p);
  const auto& ec = out.elements;
  const auto& objects = p.base.objects();
  const auto& mors = p.base.morphisms();

  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& x : ec.objects) {
    offset.push_back(total);
    total += objects[x.base_object].size();
  }
  detail::DisjointSets sets(total);
  for (const auto& m : ec.morphisms) {
    const auto& u = mors[m.base_morphism].map;
    for (Mask b = 0; b < u.source().size(); ++b) sets.unite(offset[m.source] + b, offset[m.target] + u(b));
  }

  // Class order: bottom, classes holding an atom, the rest, top; ties by
  // first appearance.
  std::map<std::size_t, std::tuple<int, std::size_t>> key;
  for (std::size_t x = 0; x < ec.objects.size(); ++x) {
    const auto& b = objects[ec.objects[x].base_object];
    for (Mask m = 0; m < b.size(); ++m) {
      const auto r = offset[x] + m;
      const int kind = m == 0 ? 0 : m == b.top() ? 3 : std::popcount(m) == 1 ? 1 : 2;
      const auto proposal = std::tuple{kind, r};
      const auto [it, fresh] = key.emplace(sets.find(r), proposal);
      if (!fresh && proposal < it->second) it->second = proposal;
    }
  }
  std::vector<std::size_t> roots;
  for (const auto& [root, _] : key) roots.push_back(root);
  std::sort(roots.begin(), roots.end(), [&](auto a, auto b) { return key[a] < key[b]; });
  std::map<std::size_t, Element> class_of_root;
  for (std::size_t i = 0; i < roots.size(); ++i) class_of_root[roots[i]] = static_cast<Element>(i);
  const auto n = roots.size();

  out.injection.resize(ec.objects.size());
  for (std::size_t x = 0; x < ec.objects.size(); ++x) {
    const auto& b = objects[ec.objects[x].base_object];
    for (Mask m = 0; m < b.size(); ++m) out.injection[x].push_back(class_of_root[sets.find(offset[x] + m)]);
  }

  auto& s = out.structure;
  s.labels.resize(n);
  s.leq.assign(n * n, 0);
  s.ortho.assign(n, std::numeric_limits<Element>::max());
  std::vector<std::string> origin(n);
  for (std::size_t x = 0; x < ec.objects.size(); ++x) {
    const auto& b = objects[ec.objects[x].base_object];
    const auto& local = out.injection[x];
    for (Mask m = 0; m < b.size(); ++m) {
      const auto c = local[m];
      const auto oc = local[b.top() & ~m];
      if (s.ortho[c] == std::numeric_limits<Element>::max()) {
        s.ortho[c] = oc;
        origin[c] = b.label(m) + " in element-object " + std::to_string(x);
      } else if (s.ortho[c] != oc) {
        throw StructureError("ill-defined complement on the class of " + origin[c] + ": also " + b.label(m) +
                             " in element-object " + std::to_string(x));
      }
      const Mask rest = b.top() & ~m;
      for (Mask sub = rest;; sub = (sub - 1) & rest) {
        s.leq[c * n + local[m | sub]] = 1;
        if (sub == 0) break;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.leq[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (s.leq[k * n + j]) s.leq[i * n + j] = 1;
      }
    }
  }

  // Labels: 0 and 1, then atom names, then primed atom names, then the
  // first member's own label.
  std::vector<std::string> atom_name(n), first_label(n);
  std::vector<int> kind(n, -1);
  for (std::size_t x = 0; x < ec.objects.size(); ++x) {
    const auto& b = objects[ec.objects[x].base_object];
    for (Mask m = 0; m < b.size(); ++m) {
      const auto c = out.injection[x][m];
      if (first_label[c].empty()) first_label[c] = b.label(m);
      if (atom_name[c].empty() && std::popcount(m) == 1 && m != b.top()) atom_name[c] = b.atoms()[std::countr_zero(m)];
    }
  }
  std::set<std::string> used;
  auto claim = [&](Element c, std::string label) {
    if (used.count(label)) label += "#" + std::to_string(c);
    used.insert(label);
    s.labels[c] = std::move(label);
  };
  const Element zero = out.injection.empty() ? 0 : out.injection[0][0];
  const Element one = out.injection.empty() ? 0 : out.injection[0].back();
  if (n > 0) claim(zero, "0");
  if (n > 0 && one != zero) claim(one, "1");
  for (Element c = 0; c < n; ++c) {
    if (s.labels[c].empty() && !atom_name[c].empty()) claim(c, atom_name[c]);
  }
  for (Element c = 0; c < n; ++c) {
    if (!s.labels[c].empty()) continue;
    const auto oc = s.ortho[c];
    if (!atom_name[oc].empty() && oc != zero && oc != one) {
      claim(c, s.labels[oc] + "'");
    } else {
      claim(c, first_label[c]);
    }
  }

  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (s.leq[a * n + b] && s.leq[b * n + a]) {
        throw StructureError("pasting collapse: '" + s.labels[a] + "' and '" + s.labels[b] +
                             "' are forced below each other");
      }
    }
  }

  for (Element c = 0; c < n; ++c) {
    if (c != zero && s.leq[c * n + s.ortho[c]]) {
      throw StructureError("pasting collapse: '" + s.labels[c] + "' lies below its own complement");
    }
  }

  out.missing_bound = find_missing_bound(s);
  if (!out.missing_bound) {
    out.lattice = FiniteOML::from_orthoposet(s);
    out.orthomodularity_witness = verify_orthomodularity(*out.lattice);
  }
  return out;
}

BooleanDiagram blocks_diagram(const OMLRef& l) {
  const auto subalgebras = enumerate_boolean_subalgebras(l);
  BooleanDiagram p{inclusion_base(subalgebras), {}, {}};
  for (std::size_t i = 0; i < subalgebras.size(); ++i) p.sections.push_back({"incl" + std::to_string(i)});
  for (std::size_t m = 0; m < p.base.morphisms().size(); ++m) p.restriction.push_back({0});
  return p;
}

IsoResult find_isomorphism(const FiniteOML& k, const FiniteOML& l) {
  IsoResult out;
  if (k.size() != l.size()) {
    out.reason = "element count " + std::to_string(k.size()) + " vs " + std::to_string(l.size());
    return out;
  }
  const auto ka = k.atoms();
  const auto la = l.atoms();
  if (ka.size() != la.size()) {
    out.reason = "atom count " + std::to_string(ka.size()) + " vs " + std::to_string(la.size());
    return out;
  }
  const auto kp = block_profile(k);
  const auto lp = block_profile(l);
  if (kp != lp) {
    out.reason = "block sizes " + profile_text(kp) + " vs " + profile_text(lp);
    return out;
  }
  const auto ki = atom_invariants(k, ka);
  const auto li = atom_invariants(l, la);
  auto ks = ki, ls = li;
  std::sort(ks.begin(), ks.end());
  std::sort(ls.begin(), ls.end());
  if (ks != ls) {
    out.reason = "atom orthogonality degrees differ";
    return out;
  }

  const auto n = ka.size();
  std::vector<std::size_t> image(n);
  std::vector<std::uint8_t> taken(n, 0);
  std::vector<Element> phi;

  auto extend_and_check = [&]() -> bool {
    phi.assign(k.size(), l.zero());
    for (Element x = 0; x < k.size(); ++x) {
      Element v = l.zero();
      for (std::size_t i = 0; i < n; ++i) {
        if (k.leq(ka[i], x)) v = l.join(v, la[image[i]]);
      }
      phi[x] = v;
    }
    std::vector<std::uint8_t> hit(l.size(), 0);
    for (auto v : phi) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    for (Element x = 0; x < k.size(); ++x) {
      if (phi[k.ortho(x)] != l.ortho(phi[x])) return false;
      for (Element y = 0; y < k.size(); ++y) {
        if (k.leq(x, y) != l.leq(phi[x], phi[y])) return false;
      }
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return extend_and_check();
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j] || ki[i] != li[j]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p) ok = k.orthogonal(ka[i], ka[p]) == l.orthogonal(la[j], la[image[p]]);
      if (!ok) continue;
      taken[j] = 1;
      image[i] = j;
      if (self(self, i + 1)) return true;
      taken[j] = 0;
    }
    return false;
  };
  if (search(search, 0)) {
    out.isomorphic = true;
    out.map = std::move(phi);
  } else {
    out.reason = "no atom bijection extends to an isomorphism";
  }
  return out;
}

IsoResult reconstruct(const OMLRef& l) {
  const auto pasted = paste_colimit(blocks_diagram(l));
  if (!pasted.lattice) {
    IsoResult out;
    out.reason = "pasting is not a lattice";
    return out;
  }
  return find_isomorphism(*pasted.lattice, *l);
}

std::vector<NaturalTransformation> enumerate_nat_transformations(const BooleanDiagram& p, const FramePresheaf& r) {
  if (!(p.base == r.diagram.base)) throw std::invalid_argument("natural transformations: the diagrams have different bases");
  const auto& base = p.base;
  const auto& mors = base.morphisms();
  const auto objects = base.objects().size();

  std::vector<std::size_t> offset;
  std::size_t nv = 0;
  for (std::size_t o = 0; o < objects; ++o) {
    offset.push_back(nv);
    nv += p.sections[o].size();
  }
  std::vector<std::size_t> var_object(nv);
  for (std::size_t o = 0; o < objects; ++o) {
    for (std::size_t s = 0; s < p.sections[o].size(); ++s) var_object[offset[o] + s] = o;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (r.frames[var_object[v]].empty()) return {};
  }
  // deps[v]: (morphism u into v's object, variable at u's source).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> deps(nv);
  for (std::size_t u = 0; u < mors.size(); ++u) {
    if (base.is_identity(u)) continue;
    for (std::size_t s = 0; s < p.sections[mors[u].target].size(); ++s) {
      deps[offset[mors[u].target] + s].emplace_back(u, offset[mors[u].source] + p.restriction[u][s]);
    }
  }
  std::vector<std::size_t> order(nv);
  for (std::size_t v = 0; v < nv; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return base.objects()[var_object[a]].atom_count() > base.objects()[var_object[b]].atom_count();
  });

  std::vector<std::size_t> value(nv, npos);
  std::vector<std::size_t> trail;
  auto assign = [&](std::size_t v, std::size_t x) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{v, x}};
    while (!stack.empty()) {
      const auto [w, y] = stack.back();
      stack.pop_back();
      if (value[w] == npos) {
        value[w] = y;
        trail.push_back(w);
        for (const auto& [u, src] : deps[w]) stack.emplace_back(src, r.diagram.restriction[u][y]);
      } else if (value[w] != y) {
        return false;
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      value[trail.back()] = npos;
      trail.pop_back();
    }
  };

  std::vector<NaturalTransformation> out;
  auto search = [&](auto&& self, std::size_t pos) -> void {
    while (pos < nv && value[order[pos]] != npos) ++pos;
    if (pos == nv) {
      NaturalTransformation tau;
      for (std::size_t o = 0; o < objects; ++o) {
        tau.components.emplace_back(value.begin() + static_cast<std::ptrdiff_t>(offset[o]),
                                    value.begin() + static_cast<std::ptrdiff_t>(offset[o] + p.sections[o].size()));
      }
      out.push_back(std::move(tau));
      return;
    }
    const auto v = order[pos];
    for (std::size_t x = 0; x < r.frames[var_object[v]].size(); ++x) {
      const auto mark = trail.size();
      if (assign(v, x)) self(self, pos + 1);
      undo(mark);
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.components < b.components; });
  return out;
}

std::vector<std::vector<Element>> enumerate_quantum_morphisms(const FiniteOML& k, const FiniteOML& l) {
  const auto ka = k.atoms();
  const auto n = ka.size();
  std::vector<std::vector<Element>> parts(k.size());
  for (Element x = 0; x < k.size(); ++x) parts[x] = decompose(k, ka, x);

  std::map<Element, std::size_t> atom_index;
  for (std::size_t i = 0; i < n; ++i) atom_index[ka[i]] = i;
  std::vector<std::vector<std::size_t>> contexts;
  for (const auto& block : enumerate_blocks(std::make_shared<const FiniteOML>(k))) {
    std::vector<std::size_t> c;
    for (auto a : block.injection.atom_images()) c.push_back(atom_index.at(a));
    std::sort(c.begin(), c.end());
    contexts.push_back(std::move(c));
  }
  // closing[i]: contexts whose largest atom index is i.
  std::vector<std::vector<std::size_t>> closing(n);
  for (std::size_t c = 0; c < contexts.size(); ++c) closing[contexts[c].back()].push_back(c);

  std::vector<Element> image(n);
  std::vector<std::vector<Element>> out;
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      std::vector<Element> phi(k.size());
      for (Element x = 0; x < k.size(); ++x) {
        Element v = l.zero();
        for (auto a : parts[x]) v = l.join(v, image[atom_index[a]]);
        phi[x] = v;
      }
      if (is_quantum_morphism(k, l, phi)) out.push_back(std::move(phi));
      return;
    }
    std::vector<Element> candidates;
    if (!closing[i].empty()) {
      Element rest = l.zero();
      for (auto j : contexts[closing[i].front()]) {
        if (j != i) rest = l.join(rest, image[j]);
      }
      candidates.push_back(l.ortho(rest));
    } else {
      for (Element e = 0; e < l.size(); ++e) candidates.push_back(e);
    }
    for (auto e : candidates) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (k.orthogonal(ka[i], ka[j])) ok = l.orthogonal(e, image[j]);
      }
      if (!ok) continue;
      image[i] = e;
      for (auto c : closing[i]) {
        Element joined = l.zero();
        for (auto j : contexts[c]) joined = l.join(joined, image[j]);
        ok = ok && joined == l.one();
      }
      if (ok) self(self, i + 1);
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Element>> induced_morphism(const PastedStructure& pasted, const FramePresheaf& r,
                                                     const NaturalTransformation& tau) {
  const auto n = pasted.structure.size();
  std::vector<Element> phi(n);
  std::vector<std::uint8_t> set(n, 0);
  for (std::size_t x = 0; x < pasted.elements.objects.size(); ++x) {
    const auto [o, s] = pasted.elements.objects[x];
    const auto& frame = r.frames[o].at(tau.components[o].at(s));
    for (Mask m = 0; m < pasted.injection[x].size(); ++m) {
      const auto c = pasted.injection[x][m];
      const auto v = frame(m);
      if (set[c] && phi[c] != v) return std::nullopt;
      phi[c] = v;
      set[c] = 1;
    }
  }
  if (std::find(set.begin(), set.end(), 0) != set.end()) return std::nullopt;
  return phi;
}

AdjunctionReport adjunction_check(const BooleanDiagram& p, const OMLRef& l) {
  AdjunctionReport rep;
  rep.scope =
      "exhaustive over Nat(P, R(L)) and Hom(L(P), L); naturality spot-checked at one endomorphism of L and one "
      "representable map into P";
  std::optional<PastedStructure> maybe;
  try {
    maybe = paste_colimit(p);
  } catch (const StructureError& e) {
    rep.reason = std::string("pasting failed: ") + e.what();
    return rep;
  }
  const auto& pasted = *maybe;
  if (!pasted.lattice) {
    const auto& mb = *pasted.missing_bound;
    rep.reason = "pasting is not a lattice: '" + pasted.structure.labels[mb.a] + "' and '" +
                 pasted.structure.labels[mb.b] + "' have no " + (mb.is_join ? "join" : "meet") +
                 "; Hom(L(P), L) is undefined here";
    return rep;
  }
  if (pasted.orthomodularity_witness) {
    const auto [a, b] = *pasted.orthomodularity_witness;
    rep.reason = "pasting is not orthomodular at ('" + pasted.structure.labels[a] + "', '" +
                 pasted.structure.labels[b] + "'); Hom(L(P), L) is undefined here";
    return rep;
  }
  rep.defined = true;
  const auto& k = *pasted.lattice;
  const auto r = build_presheaf(l, p.base);
  const auto nats = enumerate_nat_transformations(p, r);
  const auto homs = enumerate_quantum_morphisms(k, *l);
  rep.left_count = nats.size();
  rep.right_count = homs.size();

  auto hom_index = [&](const std::vector<Element>& phi) -> std::size_t {
    const auto it = std::lower_bound(homs.begin(), homs.end(), phi);
    return it != homs.end() && *it == phi ? static_cast<std::size_t>(it - homs.begin()) : npos;
  };

  rep.well_defined = true;
  std::vector<std::optional<std::vector<Element>>> induced;
  for (const auto& tau : nats) {
    induced.push_back(induced_morphism(pasted, r, tau));
    const auto idx = induced.back() ? hom_index(*induced.back()) : npos;
    if (idx == npos) rep.well_defined = false;
    rep.correspondence.push_back(idx);
  }
  std::vector<std::uint8_t> hit(homs.size(), 0);
  rep.injective = rep.well_defined;
  for (auto idx : rep.correspondence) {
    if (idx == npos) continue;
    if (hit[idx]) rep.injective = false;
    hit[idx] = 1;
  }
  rep.surjective = std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; });

  rep.inverse_agrees = true;
  for (std::size_t j = 0; j < homs.size() && rep.inverse_agrees; ++j) {
    const auto tau = transformation_of(pasted, r, homs[j]);
    if (!tau || std::find(nats.begin(), nats.end(), *tau) == nats.end()) {
      rep.inverse_agrees = false;
      break;
    }
    const auto back = induced_morphism(pasted, r, *tau);
    rep.inverse_agrees = back && *back == homs[j];
  }

  // Naturality in L along the first endomorphism that is not the identity.
  {
    const auto endos = enumerate_quantum_morphisms(*l, *l);
    std::vector<Element> g(l->size());
    for (Element x = 0; x < l->size(); ++x) g[x] = x;
    for (const auto& e : endos) {
      if (e != g) {
        g = e;
        break;
      }
    }
    rep.lattice_probe = "endomorphism " + describe_map(*l, g);
    rep.natural_in_lattice = true;
    for (std::size_t i = 0; i < nats.size() && rep.natural_in_lattice; ++i) {
      NaturalTransformation pushed = nats[i];
      for (std::size_t o = 0; o < pushed.components.size() && rep.natural_in_lattice; ++o) {
        for (auto& idx : pushed.components[o]) {
          const auto moved = frame_index(r.frames[o], push_frame(r.frames[o][idx], g, l));
          if (!moved) {
            rep.natural_in_lattice = false;
            break;
          }
          idx = *moved;
        }
      }
      if (!rep.natural_in_lattice || !induced[i]) {
        rep.natural_in_lattice = false;
        break;
      }
      const auto lhs = induced_morphism(pasted, r, pushed);
      std::vector<Element> rhs(induced[i]->size());
      for (std::size_t c = 0; c < rhs.size(); ++c) rhs[c] = g[(*induced[i])[c]];
      rep.natural_in_lattice = lhs && *lhs == rhs;
    }
  }

  // Naturality in P along the Yoneda map at the first section of the
  // largest object with a nonempty section set.
  {
    const auto& objects = p.base.objects();
    std::size_t o = npos;
    for (std::size_t c = 0; c < objects.size(); ++c) {
      if (p.sections[c].empty()) continue;
      if (o == npos || objects[c].atom_count() > objects[o].atom_count()) o = c;
    }
    if (o == npos) {
      rep.diagram_probe = "empty diagram: nothing to probe";
      rep.natural_in_diagram = true;
    } else {
      rep.diagram_probe = "representable at object " + std::to_string(o) + " (" + objects[o].name() +
                          "), section '" + p.sections[o][0] + "'";
      const auto rep_p = representable_diagram(p.base, o);
      const auto small = paste_colimit(rep_p);
      const auto& mors = p.base.morphisms();
      // Arrows into o, grouped by source, in index order (the sections of
      // the representable).
      std::vector<std::vector<std::size_t>> arrows(objects.size());
      for (std::size_t m = 0; m < mors.size(); ++m) {
        if (mors[m].target == o) arrows[mors[m].source].push_back(m);
      }
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> element_object;
      for (std::size_t x = 0; x < pasted.elements.objects.size(); ++x) {
        element_object[{pasted.elements.objects[x].base_object, pasted.elements.objects[x].section}] = x;
      }
      // alpha_c(f) = P(f)(s) and the induced class map L(alpha).
      auto alpha = [&](std::size_t c, std::size_t j) { return p.restriction[arrows[c][j]][0]; };
      std::vector<Element> l_alpha(small.structure.size());
      std::vector<std::uint8_t> seen(small.structure.size(), 0);
      bool ok = true;
      for (std::size_t x = 0; x < small.elements.objects.size(); ++x) {
        const auto [c, j] = small.elements.objects[x];
        const auto target = element_object.at({c, alpha(c, j)});
        for (Mask m = 0; m < small.injection[x].size(); ++m) {
          const auto from = small.injection[x][m];
          const auto to = pasted.injection[target][m];
          if (seen[from] && l_alpha[from] != to) ok = false;
          l_alpha[from] = to;
          seen[from] = 1;
        }
      }
      for (std::size_t i = 0; i < nats.size() && ok; ++i) {
        NaturalTransformation restricted;
        for (std::size_t c = 0; c < objects.size(); ++c) {
          restricted.components.emplace_back();
          for (std::size_t j = 0; j < arrows[c].size(); ++j) {
            restricted.components[c].push_back(nats[i].components[c][alpha(c, j)]);
          }
        }
        const auto lhs = induced_morphism(small, r, restricted);
        if (!lhs || !induced[i]) {
          ok = false;
          break;
        }
        for (std::size_t cls = 0; cls < lhs->size() && ok; ++cls) ok = (*lhs)[cls] == (*induced[i])[l_alpha[cls]];
      }
      rep.natural_in_diagram = ok;
    }
  }
  return rep;
}

FactorizationResult factorization_check(const BooleanAlgebra& b, const OMLRef& l) {
  FactorizationResult out;
  const auto base = discrete_base({b});
  const auto p = representable_diagram(base, 0);
  const auto pasted = paste_colimit(p);
  if (!pasted.lattice || pasted.structure.size() != b.size()) {
    out.failure = "colimit of the representable diagram is not " + b.name();
    return out;
  }
  const auto& k = *pasted.lattice;
  const auto& iota = pasted.injection.at(0);
  for (Mask x = 0; x < b.size(); ++x) {
    if (iota[b.top() & ~x] != k.ortho(iota[x])) {
      out.failure = "colimit injection does not preserve complements at " + b.label(x);
      return out;
    }
    for (Mask y = 0; y < b.size(); ++y) {
      if (((x & ~y) == 0) != k.leq(iota[x], iota[y])) {
        out.failure = "colimit injection is not an order embedding at " + b.label(x) + ", " + b.label(y);
        return out;
      }
    }
  }
  const auto r = build_presheaf(l, base);
  const auto homs = enumerate_quantum_morphisms(k, *l);
  if (homs.size() != r.frames[0].size()) {
    out.failure = std::to_string(r.frames[0].size()) + " frames but " + std::to_string(homs.size()) +
                  " morphisms out of the colimit";
    return out;
  }
  for (std::size_t i = 0; i < r.frames[0].size(); ++i) {
    const auto& psi = r.frames[0][i];
    const auto phi = induced_morphism(pasted, r, NaturalTransformation{{{i}}});
    ++out.frames_checked;
    if (!phi || !std::binary_search(homs.begin(), homs.end(), *phi)) {
      out.failure = "frame " + std::to_string(i) + " induces no morphism out of the colimit";
      return out;
    }
    for (Mask x = 0; x < b.size(); ++x) {
      if ((*phi)[iota[x]] != psi(x)) {
        out.failure = "frame " + std::to_string(i) + " does not factor through the colimit at " + b.label(x);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

}  // namespace qframes
