#include "qframes/presheaf.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace qframes {
namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string frame_label(const BooleanFrame& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.atom_images().size(); ++i) {
    out += (i ? ", " : "") + f.lattice().label(f.atom_images()[i]);
  }
  return out + ")";
}

}  // namespace

BaseCategory::BaseCategory(std::vector<BooleanAlgebra> objects, std::vector<BaseMorphism> morphisms)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)) {
  const auto m = morphisms_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& mor = morphisms_[i];
    if (mor.source >= objects_.size() || mor.target >= objects_.size() ||
        !(mor.map.source() == objects_[mor.source]) || !(mor.map.target() == objects_[mor.target])) {
      throw std::invalid_argument("base category: morphism '" + mor.name + "' is ill-typed");
    }
  }
  identity_.assign(objects_.size(), npos);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& mor = morphisms_[i];
    if (mor.source == mor.target && identity_[mor.source] == npos && mor.map.is_identity()) identity_[mor.source] = i;
  }
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    if (identity_[o] == npos) throw std::invalid_argument("base category: object " + std::to_string(o) + " has no identity");
  }
  compose_.assign(m * m, npos);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      if (morphisms_[f].target != morphisms_[g].source) continue;
      if (is_identity(f)) {
        compose_[g * m + f] = g;
        continue;
      }
      if (is_identity(g)) {
        compose_[g * m + f] = f;
        continue;
      }
      const auto composite = qframes::compose(morphisms_[g].map, morphisms_[f].map);
      for (std::size_t h = 0; h < m; ++h) {
        if (morphisms_[h].source == morphisms_[f].source && morphisms_[h].target == morphisms_[g].target &&
            morphisms_[h].map == composite) {
          compose_[g * m + f] = h;
          break;
        }
      }
      if (compose_[g * m + f] == npos) {
        throw std::invalid_argument("base category: not closed under composition ('" + morphisms_[g].name +
                                    "' after '" + morphisms_[f].name + "')");
      }
    }
  }
}

std::size_t BaseCategory::compose(std::size_t g, std::size_t f) const {
  const auto h = compose_.at(g * morphisms_.size() + f);
  if (h == npos) throw std::invalid_argument("base category: morphisms are not composable");
  return h;
}

std::vector<std::size_t> BaseCategory::morphisms_into(std::size_t object) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    if (morphisms_[i].target == object) out.push_back(i);
  }
  return out;
}

BaseCategory discrete_base(std::vector<BooleanAlgebra> objects) {
  std::vector<BaseMorphism> morphisms;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    morphisms.push_back({o, o, BooleanHom::identity(objects[o]), "id" + std::to_string(o)});
  }
  return BaseCategory(std::move(objects), std::move(morphisms));
}

BaseCategory inclusion_base(const std::vector<Subalgebra>& subalgebras) {
  std::vector<BooleanAlgebra> objects;
  for (const auto& s : subalgebras) objects.push_back(s.algebra);
  std::vector<BaseMorphism> morphisms;
  for (std::size_t c = 0; c < subalgebras.size(); ++c) {
    for (std::size_t b = 0; b < subalgebras.size(); ++b) {
      const auto& small = subalgebras[c];
      const auto& big = subalgebras[b];
      if (!std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(), small.elements.end())) {
        continue;
      }
      const auto& l = big.injection.lattice();
      std::vector<Mask> images;
      for (auto e : small.injection.atom_images()) {
        Mask m = 0;
        const auto& big_atoms = big.injection.atom_images();
        for (std::size_t j = 0; j < big_atoms.size(); ++j) {
          if (l.leq(big_atoms[j], e)) m |= Mask{1} << j;
        }
        images.push_back(m);
      }
      const auto name = (b == c ? "id" : "incl") + std::to_string(c) + (b == c ? "" : "_" + std::to_string(b));
      morphisms.push_back({c, b, BooleanHom(small.algebra, big.algebra, std::move(images)), name});
    }
  }
  return BaseCategory(std::move(objects), std::move(morphisms));
}

BaseCategory boolean_skeleton(std::size_t max_atoms) {
  std::vector<BooleanAlgebra> objects;
  for (std::size_t k = 1; k <= max_atoms; ++k) objects.push_back(BooleanAlgebra::with_atoms(k));
  std::vector<BaseMorphism> morphisms;
  for (std::size_t s = 0; s < objects.size(); ++s) {
    for (std::size_t t = 0; t < objects.size(); ++t) {
      std::size_t i = 0;
      for (auto& h : all_homomorphisms(objects[s], objects[t])) {
        const auto name = objects[s].name() + "->" + objects[t].name() + "#" + std::to_string(i++);
        morphisms.push_back({s, t, std::move(h), name});
      }
    }
  }
  return BaseCategory(std::move(objects), std::move(morphisms));
}

FunctorLawReport check_functor_laws(const BooleanDiagram& p) {
  FunctorLawReport report;
  const auto& base = p.base;
  const auto& mors = base.morphisms();
  if (p.sections.size() != base.objects().size() || p.restriction.size() != mors.size()) {
    report.well_formed = false;
    report.witnesses.push_back("section or restriction table count does not match the base");
    return report;
  }
  for (std::size_t m = 0; m < mors.size(); ++m) {
    const auto& r = p.restriction[m];
    bool ok = r.size() == p.sections[mors[m].target].size();
    for (auto x : r) ok = ok && x < p.sections[mors[m].source].size();
    if (!ok) {
      report.well_formed = false;
      report.witnesses.push_back("restriction along '" + mors[m].name + "' is not a map P(target) -> P(source)");
    }
  }
  if (!report.well_formed) return report;

  for (std::size_t o = 0; o < base.objects().size(); ++o) {
    const auto& r = p.restriction[base.identity(o)];
    for (std::size_t x = 0; x < r.size(); ++x) {
      if (r[x] != x) {
        report.identity_law = false;
        report.witnesses.push_back("identity law fails at object " + std::to_string(o) + ", section " +
                                   std::to_string(x));
        break;
      }
    }
  }
  for (std::size_t g = 0; g < mors.size(); ++g) {
    for (std::size_t f = 0; f < mors.size(); ++f) {
      if (mors[f].target != mors[g].source) continue;
      ++report.pairs_checked;
      const auto h = base.compose(g, f);
      const auto& rg = p.restriction[g];
      for (std::size_t x = 0; x < rg.size(); ++x) {
        if (p.restriction[h][x] != p.restriction[f][rg[x]]) {
          report.composition_law = false;
          report.witnesses.push_back("composition law fails for '" + mors[g].name + "' after '" + mors[f].name +
                                     "' at section " + std::to_string(x));
          break;
        }
      }
    }
  }
  return report;
}

BooleanDiagram representable_diagram(const BaseCategory& base, std::size_t object) {
  BooleanDiagram p{base, {}, {}};
  const auto& mors = base.morphisms();
  std::vector<std::size_t> position(mors.size(), npos);
  std::vector<std::vector<std::size_t>> arrows(base.objects().size());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    if (mors[m].target != object) continue;
    position[m] = arrows[mors[m].source].size();
    arrows[mors[m].source].push_back(m);
  }
  p.sections.resize(base.objects().size());
  for (std::size_t c = 0; c < arrows.size(); ++c) {
    for (auto m : arrows[c]) p.sections[c].push_back(mors[m].name);
  }
  p.restriction.resize(mors.size());
  for (std::size_t u = 0; u < mors.size(); ++u) {
    for (auto f : arrows[mors[u].target]) p.restriction[u].push_back(position[base.compose(f, u)]);
  }
  return p;
}

FramePresheaf build_presheaf(const OMLRef& l, const BaseCategory& base) {
  FramePresheaf out{l, BooleanDiagram{base, {}, {}}, {}};
  for (const auto& b : base.objects()) {
    out.frames.push_back(enumerate_frames(b, l));
    std::vector<std::string> labels;
    for (const auto& f : out.frames.back()) labels.push_back(frame_label(f));
    out.diagram.sections.push_back(std::move(labels));
  }
  for (const auto& mor : base.morphisms()) {
    const auto& domain = out.frames[mor.source];
    std::vector<std::size_t> table;
    for (const auto& psi : out.frames[mor.target]) {
      const auto restricted = restrict_frame(psi, mor.map);
      const auto it = std::lower_bound(domain.begin(), domain.end(), restricted);
      if (it == domain.end() || !(*it == restricted)) {
        throw std::logic_error("build_presheaf: restricted frame is not a section");
      }
      table.push_back(static_cast<std::size_t>(it - domain.begin()));
    }
    out.diagram.restriction.push_back(std::move(table));
  }
  if (const auto laws = check_functor_laws(out.diagram); !laws.ok()) {
    throw std::logic_error("build_presheaf: " + laws.witnesses.front());
  }
  return out;
}

ElementCategory category_of_elements(const BooleanDiagram& p) {
  ElementCategory ec{p.base, {}, {}};
  std::vector<std::size_t> offset;
  for (std::size_t o = 0; o < p.sections.size(); ++o) {
    offset.push_back(ec.objects.size());
    for (std::size_t s = 0; s < p.sections[o].size(); ++s) ec.objects.push_back({o, s});
  }
  const auto& mors = p.base.morphisms();
  for (std::size_t m = 0; m < mors.size(); ++m) {
    for (std::size_t s = 0; s < p.sections[mors[m].target].size(); ++s) {
      ec.morphisms.push_back({m, offset[mors[m].source] + p.restriction[m][s], offset[mors[m].target] + s});
    }
  }
  return ec;
}

FibrationReport check_discrete_fibration(const ElementCategory& ec) {
  FibrationReport report;
  report.notes =
      "uniformity is not checked: no finite test distinguishes it from discreteness and split lifting here";
  const auto& mors = ec.base.morphisms();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lifts;  // (target object, base arrow) -> count
  for (std::size_t i = 0; i < ec.morphisms.size(); ++i) {
    const auto& m = ec.morphisms[i];
    const auto& bm = mors.at(m.base_morphism);
    if (ec.objects.at(m.source).base_object != bm.source || ec.objects.at(m.target).base_object != bm.target) {
      report.split_lifts = false;
      report.witnesses.push_back("morphism " + std::to_string(i) + " does not lie over '" + bm.name + "'");
    }
    if (ec.base.is_identity(m.base_morphism) && m.source != m.target) {
      report.discrete = false;
      report.witnesses.push_back("morphism " + std::to_string(i) + " over identity '" + bm.name +
                                 "' joins distinct objects " + std::to_string(m.source) + " and " +
                                 std::to_string(m.target));
    }
    ++lifts[{m.target, m.base_morphism}];
  }
  for (std::size_t x = 0; x < ec.objects.size(); ++x) {
    for (auto u : ec.base.morphisms_into(ec.objects[x].base_object)) {
      const auto it = lifts.find({x, u});
      const auto count = it == lifts.end() ? 0 : it->second;
      if (count != 1) {
        report.split_lifts = false;
        report.witnesses.push_back("object " + std::to_string(x) + " has " + std::to_string(count) +
                                   " lifts of '" + mors[u].name + "'");
        if (ec.base.is_identity(u) && count > 1) report.discrete = false;
      }
    }
  }
  return report;
}

}  // namespace qframes
