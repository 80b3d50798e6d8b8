#include "qframes/boolean_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace qframes {

BooleanAlgebra::BooleanAlgebra(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty() || atoms_.size() > 20) throw std::invalid_argument("BooleanAlgebra: need 1..20 atoms");
}

BooleanAlgebra BooleanAlgebra::with_atoms(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back(count <= 8 ? std::string(1, "pqrstuvw"[i]) : "x" + std::to_string(i + 1));
  }
  return BooleanAlgebra(std::move(names));
}

std::string BooleanAlgebra::label(Mask x) const {
  if (x == 0) return "0";
  if (x == top()) return "1";
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (x >> i & 1u) out += (out.empty() ? "" : "|") + atoms_[i];
  }
  return out;
}

BooleanHom::BooleanHom(BooleanAlgebra source, BooleanAlgebra target, std::vector<Mask> atom_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(atom_images)) {
  if (images_.size() != source_.atom_count()) throw std::invalid_argument("BooleanHom: wrong number of atom images");
  Mask seen = 0;
  for (auto m : images_) {
    if ((m & ~target_.top()) != 0) throw std::invalid_argument("BooleanHom: image outside target");
    if ((m & seen) != 0) throw std::invalid_argument("BooleanHom: atom images overlap");
    seen |= m;
  }
  if (seen != target_.top()) throw std::invalid_argument("BooleanHom: atom images do not cover the top");
}

BooleanHom BooleanHom::identity(const BooleanAlgebra& b) {
  std::vector<Mask> images;
  for (std::size_t i = 0; i < b.atom_count(); ++i) images.push_back(Mask{1} << i);
  return BooleanHom(b, b, std::move(images));
}

Mask BooleanHom::operator()(Mask x) const {
  Mask out = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (x >> i & 1u) out |= images_[i];
  }
  return out;
}

bool BooleanHom::injective() const {
  for (auto m : images_) {
    if (m == 0) return false;
  }
  return true;
}

bool BooleanHom::is_identity() const { return source_ == target_ && *this == identity(source_); }

BooleanHom compose(const BooleanHom& g, const BooleanHom& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("compose: ill-typed composition");
  std::vector<Mask> images;
  for (auto m : f.atom_images()) images.push_back(g(m));
  return BooleanHom(f.source(), g.target(), std::move(images));
}

std::vector<BooleanHom> all_homomorphisms(const BooleanAlgebra& source, const BooleanAlgebra& target) {
  // Each target atom goes to exactly one source atom's image.
  const auto k = source.atom_count();
  const auto m = target.atom_count();
  std::vector<std::size_t> owner(m, 0);
  std::vector<std::vector<Mask>> all;
  while (true) {
    std::vector<Mask> images(k, 0);
    for (std::size_t t = 0; t < m; ++t) images[owner[t]] |= Mask{1} << t;
    all.push_back(std::move(images));
    std::size_t t = 0;
    while (t < m && ++owner[t] == k) owner[t++] = 0;
    if (t == m) break;
  }
  std::sort(all.begin(), all.end());
  std::vector<BooleanHom> out;
  for (auto& images : all) out.emplace_back(source, target, std::move(images));
  return out;
}

}  // namespace qframes
