#include "qframes/frames.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cliques.hpp"

namespace qframes {
namespace {

bool orthogonal_family(const FiniteOML& l, const std::vector<Element>& images) {
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (!l.orthogonal(images[i], images[j])) return false;
    }
  }
  return true;
}

Subalgebra make_subalgebra(const OMLRef& l, const std::vector<Element>& atoms) {
  std::vector<std::string> names;
  for (auto a : atoms) names.push_back(l->label(a));
  BooleanAlgebra algebra(std::move(names));
  BooleanFrame injection(algebra, l, atoms);
  return Subalgebra{algebra, injection, injection.image()};
}

bool subalgebra_less(const Subalgebra& x, const Subalgebra& y) {
  if (x.algebra.atom_count() != y.algebra.atom_count()) return x.algebra.atom_count() < y.algebra.atom_count();
  return x.injection.atom_images() < y.injection.atom_images();
}

}  // namespace

BooleanFrame::BooleanFrame(BooleanAlgebra source, OMLRef target, std::vector<Element> atom_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(atom_images)) {
  if (!target_) throw std::invalid_argument("BooleanFrame: null target");
  const auto& l = *target_;
  if (images_.size() != source_.atom_count()) throw std::invalid_argument("BooleanFrame: wrong number of atom images");
  for (auto e : images_) {
    if (e >= l.size()) throw std::invalid_argument("BooleanFrame: atom image out of range");
  }
  if (!orthogonal_family(l, images_)) throw std::invalid_argument("BooleanFrame: atom images are not orthogonal");
  table_.assign(source_.size(), l.zero());
  for (Mask x = 1; x < source_.size(); ++x) {
    const auto low = static_cast<std::size_t>(std::countr_zero(x));
    table_[x] = l.join(table_[x & (x - 1)], images_[low]);
  }
  if (table_[source_.top()] != l.one()) throw std::invalid_argument("BooleanFrame: atom images do not join to 1");
  auto sorted = table_;
  std::sort(sorted.begin(), sorted.end());
  injective_ = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

ElementSet BooleanFrame::image() const {
  auto out = table_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool preserves_structure(const BooleanFrame& frame) {
  const auto& l = frame.lattice();
  const auto& b = frame.source();
  if (frame(0) != l.zero() || frame(b.top()) != l.one()) return false;
  for (Mask x = 0; x < b.size(); ++x) {
    if (frame(b.top() & ~x) != l.ortho(frame(x))) return false;
    for (Mask y = 0; y < b.size(); ++y) {
      if (frame(x | y) != l.join(frame(x), frame(y))) return false;
      if (frame(x & y) != l.meet(frame(x), frame(y))) return false;
    }
  }
  return true;
}

std::vector<Subalgebra> enumerate_boolean_subalgebras(const OMLRef& l) {
  std::vector<Subalgebra> out;
  std::vector<Element> parts;
  const auto n = static_cast<Element>(l->size());
  auto extend = [&](auto&& self, Element next, Element joined) -> void {
    if (joined == l->one()) {
      out.push_back(make_subalgebra(l, parts));
      return;
    }
    for (Element e = next; e < n; ++e) {
      if (e == l->zero() || !l->orthogonal(e, joined)) continue;
      if (!std::all_of(parts.begin(), parts.end(), [&](Element p) { return l->orthogonal(e, p); })) continue;
      parts.push_back(e);
      self(self, e + 1, l->join(joined, e));
      parts.pop_back();
    }
  };
  extend(extend, 0, l->zero());
  std::stable_sort(out.begin(), out.end(), subalgebra_less);
  return out;
}

std::vector<Subalgebra> enumerate_blocks(const OMLRef& l) {
  const auto n = l->size();
  std::vector<std::uint8_t> adj(n * n, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (a != b && compatible(*l, a, b)) adj[a * n + b] = 1;
    }
  }
  std::vector<Subalgebra> out;
  for (const auto& clique : detail::MaximalCliques(adj, n).run()) {
    ElementSet members(clique.begin(), clique.end());
    const auto closed = generated_subalgebra(*l, members);
    std::vector<Element> atoms;
    for (auto x : closed) {
      if (x == l->zero()) continue;
      const bool minimal = std::none_of(closed.begin(), closed.end(),
                                        [&](Element y) { return y != x && y != l->zero() && l->leq(y, x); });
      if (minimal) atoms.push_back(x);
    }
    auto block = make_subalgebra(l, atoms);
    if (block.elements != closed) throw std::logic_error("enumerate_blocks: compatible clique is not Boolean");
    out.push_back(std::move(block));
  }
  std::sort(out.begin(), out.end(), subalgebra_less);
  return out;
}

std::vector<Subalgebra> maximal_subalgebras(const std::vector<Subalgebra>& all) {
  std::vector<Subalgebra> out;
  for (const auto& s : all) {
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const Subalgebra& t) {
      return t.elements.size() > s.elements.size() &&
             std::includes(t.elements.begin(), t.elements.end(), s.elements.begin(), s.elements.end());
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::vector<BooleanFrame> enumerate_frames(const BooleanAlgebra& b, const OMLRef& l) {
  std::vector<BooleanFrame> out;
  const auto k = b.atom_count();
  const auto n = static_cast<Element>(l->size());
  std::vector<Element> images;
  auto extend = [&](auto&& self, Element joined) -> void {
    if (images.size() + 1 == k) {
      // Join must reach 1, so the last image is forced.
      images.push_back(l->ortho(joined));
      if (orthogonal_family(*l, images) && l->join(joined, images.back()) == l->one()) {
        BooleanFrame frame(b, l, images);
        if (!preserves_structure(frame)) throw std::logic_error("enumerate_frames: frame fails structure check");
        out.push_back(std::move(frame));
      }
      images.pop_back();
      return;
    }
    for (Element e = 0; e < n; ++e) {
      if (!std::all_of(images.begin(), images.end(), [&](Element p) { return l->orthogonal(e, p); })) continue;
      images.push_back(e);
      self(self, l->join(joined, e));
      images.pop_back();
    }
  };
  extend(extend, l->zero());
  std::sort(out.begin(), out.end());
  return out;
}

BooleanFrame restrict_frame(const BooleanFrame& psi, const BooleanHom& f) {
  if (!(f.target() == psi.source())) {
    throw std::invalid_argument("restrict_frame: homomorphism target " + f.target().name() +
                                " is not the frame source " + psi.source().name());
  }
  std::vector<Element> images;
  for (auto m : f.atom_images()) images.push_back(psi(m));
  return BooleanFrame(f.source(), psi.target(), std::move(images));
}

BooleanFrame push_frame(const BooleanFrame& psi, const std::vector<Element>& map, const OMLRef& codomain) {
  std::vector<Element> images;
  for (auto e : psi.atom_images()) images.push_back(map.at(e));
  return BooleanFrame(psi.source(), codomain, std::move(images));
}

}  // namespace qframes
