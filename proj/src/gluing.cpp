#include "qframes/gluing.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qframes {
namespace {

bool same_target(const BooleanFrame& x, const BooleanFrame& y) {
  return x.target() == y.target() || x.lattice().labels() == y.lattice().labels();
}

std::string mask_label(const BooleanAlgebra& b, Mask x) { return b.label(x); }

}  // namespace

bool PullbackAlgebra::contains(Mask b, Mask b2) const {
  return std::binary_search(carrier.begin(), carrier.end(), std::pair{b, b2});
}

std::vector<std::pair<Mask, Mask>> PullbackAlgebra::atoms() const {
  std::vector<std::pair<Mask, Mask>> out;
  for (const auto& x : carrier) {
    if (x.first == 0 && x.second == 0) continue;
    const bool minimal = std::none_of(carrier.begin(), carrier.end(), [&](const auto& y) {
      return y != x && !(y.first == 0 && y.second == 0) && (y.first & ~x.first) == 0 && (y.second & ~x.second) == 0;
    });
    if (minimal) out.push_back(x);
  }
  return out;
}

ElementSet PullbackAlgebra::image() const {
  ElementSet out;
  for (const auto& [b, _] : carrier) out.push_back(left(b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PullbackAlgebra pullback(const BooleanFrame& left, const BooleanFrame& right) {
  if (!same_target(left, right)) throw std::invalid_argument("pullback: frames have different targets");
  std::multimap<Element, Mask> by_value;
  for (Mask y = 0; y < right.source().size(); ++y) by_value.emplace(right(y), y);
  PullbackAlgebra pb{left, right, {}};
  for (Mask x = 0; x < left.source().size(); ++x) {
    const auto [lo, hi] = by_value.equal_range(left(x));
    for (auto it = lo; it != hi; ++it) pb.carrier.emplace_back(x, it->second);
  }
  std::sort(pb.carrier.begin(), pb.carrier.end());
  if (!is_boolean_overlap(pb)) throw std::logic_error("pullback: carrier is not a Boolean algebra");
  return pb;
}

bool is_boolean_overlap(const PullbackAlgebra& pb) {
  const auto top_l = pb.left.source().top();
  const auto top_r = pb.right.source().top();
  if (!pb.contains(0, 0) || !pb.contains(top_l, top_r)) return false;
  for (const auto& [x, y] : pb.carrier) {
    if (pb.left(x) != pb.right(y)) return false;
    if (!pb.contains(top_l & ~x, top_r & ~y)) return false;
    for (const auto& [u, v] : pb.carrier) {
      if (!pb.contains(x | u, y | v) || !pb.contains(x & u, y & v)) return false;
    }
  }
  // Componentwise operations on masks distribute, but check the carrier
  // as an algebra in its own right.
  for (const auto& a : pb.carrier) {
    for (const auto& b : pb.carrier) {
      for (const auto& c : pb.carrier) {
        const std::pair lhs{a.first & (b.first | c.first), a.second & (b.second | c.second)};
        const std::pair rhs{(a.first & b.first) | (a.first & c.first), (a.second & b.second) | (a.second & c.second)};
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

bool check_intersection(const BooleanFrame& left, const BooleanFrame& right) {
  if (!left.injective() || !right.injective()) throw std::invalid_argument("check_intersection: frames must be injective");
  const auto pb = pullback(left, right);
  ElementSet via_right;
  for (const auto& [_, y] : pb.carrier) via_right.push_back(right(y));
  std::sort(via_right.begin(), via_right.end());
  via_right.erase(std::unique(via_right.begin(), via_right.end()), via_right.end());
  const auto a = left.image();
  const auto b = right.image();
  ElementSet both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return pb.image() == both && via_right == both;
}

std::vector<Mask> GluingIso::domain() const {
  std::vector<Mask> out;
  for (Mask x = 0; x < table.size(); ++x) {
    if (table[x]) out.push_back(x);
  }
  return out;
}

std::vector<Mask> GluingIso::codomain() const {
  std::vector<Mask> out;
  for (const auto& y : table) {
    if (y) out.push_back(*y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GluingIso gluing_iso(const BooleanFrame& left, const BooleanFrame& right) {
  if (!left.injective() || !right.injective()) throw std::invalid_argument("gluing_iso: frames must be injective");
  const auto pb = pullback(left, right);
  GluingIso omega{right.source(), left.source(), std::vector<std::optional<Mask>>(right.source().size())};
  for (const auto& [x, y] : pb.carrier) {
    if (omega.table[y]) throw std::logic_error("gluing_iso: right projection is not injective on the overlap");
    omega.table[y] = x;
  }
  if (!is_structure_preserving(omega)) throw std::logic_error("gluing_iso: overlap map is not an isomorphism");
  return omega;
}

bool is_structure_preserving(const GluingIso& omega) {
  const auto dom = omega.domain();
  auto cod = omega.codomain();
  if (std::adjacent_find(cod.begin(), cod.end()) != cod.end()) return false;  // not injective
  const auto top_d = omega.domain_algebra.top();
  const auto top_c = omega.codomain_algebra.top();
  for (auto x : dom) {
    const auto c = omega(top_d & ~x);
    if (!c || *c != (top_c & ~*omega(x))) return false;
    for (auto y : dom) {
      const auto j = omega(x | y);
      const auto m = omega(x & y);
      if (!j || *j != (*omega(x) | *omega(y))) return false;
      if (!m || *m != (*omega(x) & *omega(y))) return false;
    }
  }
  return true;
}

CocycleReport verify_cocycles(const std::vector<BooleanFrame>& frames) {
  for (const auto& f : frames) {
    if (!f.injective()) throw std::invalid_argument("verify_cocycles: frames must be injective");
  }
  const auto k = frames.size();
  std::vector<GluingIso> omega;
  omega.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) omega.push_back(gluing_iso(frames[i], frames[j]));
  }
  auto at = [&](std::size_t i, std::size_t j) -> const GluingIso& { return omega[i * k + j]; };
  CocycleReport report;

  for (std::size_t i = 0; i < k; ++i) {
    ++report.identity_law.checked;
    const auto& o = at(i, i);
    for (Mask x = 0; x < frames[i].source().size(); ++x) {
      if (o(x) != x) {
        report.identity_law.holds = false;
        report.identity_law.witnesses.push_back("frame " + std::to_string(i) + ": Omega(B,B) moves " +
                                                mask_label(frames[i].source(), x));
        break;
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      ++report.symmetry_law.checked;
      const auto& forward = at(i, j);   // B_j -> B_i
      const auto& backward = at(j, i);  // B_i -> B_j
      bool ok = forward.domain() == backward.codomain();
      for (auto y : forward.domain()) {
        if (!ok) break;
        ok = backward(*forward(y)) == y;
      }
      if (!ok) {
        report.symmetry_law.holds = false;
        report.symmetry_law.witnesses.push_back("frames " + std::to_string(i) + ", " + std::to_string(j));
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        if (i == j || j == l || i == l) continue;
        ++report.triangle_law.checked;
        const auto& jl = at(j, l);
        const auto& ij = at(i, j);
        const auto& il = at(i, l);
        for (auto z : jl.domain()) {
          const auto y = *jl(z);
          const auto x = ij(y);
          if (!x) continue;  // outside the triple overlap
          if (il(z) != x) {
            report.triangle_law.holds = false;
            report.triangle_law.witnesses.push_back("frames " + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                                    std::to_string(l) + " at " +
                                                    mask_label(frames[l].source(), z));
            break;
          }
        }
      }
    }
  }
  return report;
}

std::vector<BooleanFrame> injective_block_frames(const OMLRef& l) {
  std::vector<BooleanFrame> out;
  std::size_t index = 0;
  for (const auto& block : enumerate_blocks(l)) {
    auto atoms = block.injection.atom_images();
    std::sort(atoms.begin(), atoms.end());
    // Abstract source named after the block so frames of different blocks
    // have distinct sources.
    std::vector<std::string> names;
    for (std::size_t i = 0; i < atoms.size(); ++i) names.push_back("b" + std::to_string(index) + "_" + std::to_string(i));
    const BooleanAlgebra source(names);
    do {
      out.emplace_back(source, l, atoms);
    } while (std::next_permutation(atoms.begin(), atoms.end()));
    ++index;
  }
  return out;
}

bool verify_pullback_universality(const PullbackAlgebra& pb, const BooleanHom& h, const BooleanHom& g) {
  if (!(h.source() == g.source())) throw std::invalid_argument("universality: h and g have different sources");
  if (!(h.target() == pb.left.source()) || !(g.target() == pb.right.source())) {
    throw std::invalid_argument("universality: h or g has the wrong target");
  }
  const auto& test = h.source();
  for (Mask x = 0; x < test.size(); ++x) {
    if (pb.left(h(x)) != pb.right(g(x))) {
      throw std::invalid_argument("universality: outer square does not commute at " + test.label(x));
    }
  }
  // Present the carrier as a Boolean algebra on its atoms and count the
  // homomorphisms test -> carrier compatible with both projections.
  const auto atoms = pb.atoms();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atoms.size(); ++i) names.push_back("c" + std::to_string(i));
  const BooleanAlgebra carrier_algebra(names);
  std::size_t mediating = 0;
  for (const auto& u : all_homomorphisms(test, carrier_algebra)) {
    bool ok = true;
    for (Mask x = 0; x < test.size() && ok; ++x) {
      const auto c = u(x);
      Mask left = 0, right = 0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (c >> i & 1u) {
          left |= atoms[i].first;
          right |= atoms[i].second;
        }
      }
      ok = pb.contains(left, right) && left == h(x) && right == g(x);
    }
    if (ok) ++mediating;
  }
  return mediating == 1;
}

}  // namespace qframes
