#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qframes/frames.hpp"
#include "qframes/presheaf.hpp"
#include "support.hpp"

using namespace qframes;

namespace {

const auto kB2 = BooleanAlgebra::with_atoms(1);
const auto kB4 = BooleanAlgebra::with_atoms(2);
const auto kB8 = BooleanAlgebra::with_atoms(3);

/// B_2 and B_4 with two distinct arrows B_2 -> B_4 (same underlying map).
BaseCategory two_injections() {
  const BooleanHom in(kB2, kB4, {kB4.top()});
  return BaseCategory({kB2, kB4}, {{0, 0, BooleanHom::identity(kB2), "id0"},
                                   {1, 1, BooleanHom::identity(kB4), "id1"},
                                   {0, 1, in, "i"},
                                   {0, 1, in, "j"}});
}

}  // namespace

TEST_CASE("Boolean homomorphisms") {
  CHECK(all_homomorphisms(kB2, kB4).size() == 1);
  CHECK(all_homomorphisms(kB4, kB4).size() == 4);
  CHECK(all_homomorphisms(kB4, kB8).size() == 8);
  const BooleanHom f(kB4, kB8, {0b011, 0b100});
  CHECK(f.injective());
  CHECK(f(0b01) == 0b011);
  CHECK(compose(f, BooleanHom::identity(kB4)) == f);
  CHECK_THROWS_AS(BooleanHom(kB4, kB8, {0b011, 0b110}), std::invalid_argument);
  CHECK_THROWS_AS(compose(BooleanHom::identity(kB4), f), std::invalid_argument);
}

TEST_CASE("frame counts agree with the brute-force oracle") {
  const auto mo2 = support::share(mo_lattice(2));
  CHECK(enumerate_frames(kB2, mo2).size() == 1);
  const auto b4 = enumerate_frames(kB4, mo2);
  CHECK(b4.size() == 6);
  CHECK(std::count_if(b4.begin(), b4.end(), [](const auto& f) { return f.injective(); }) == 4);
  CHECK(enumerate_frames(kB8, mo2).size() == 15);

  for (auto name : support::kOmlEntries) {
    CAPTURE(name);
    const auto l = support::lattice(name);
    CHECK(enumerate_frames(kB2, l).size() == 1);
    for (const auto& b : {kB4, kB8}) {
      const auto frames = enumerate_frames(b, l);
      const auto expect = oracle::count_frames(b.atom_count(), *l);
      CHECK(frames.size() == expect.total);
      CHECK(std::size_t(std::count_if(frames.begin(), frames.end(), [](const auto& f) { return f.injective(); })) ==
            expect.injective);
      for (const auto& f : frames) CHECK(preserves_structure(f));
    }
  }
}

TEST_CASE("frames reject bad atom images") {
  const auto mo2 = support::share(mo_lattice(2));
  const auto a = mo2->find("a"), b = mo2->find("b");
  CHECK_THROWS_AS(BooleanFrame(kB4, mo2, {a, b}), std::invalid_argument);
  CHECK_NOTHROW(BooleanFrame(kB4, mo2, {a, mo2->ortho(a)}));
}

TEST_CASE("subalgebras and blocks agree with the oracle") {
  const auto mo2 = support::share(mo_lattice(2));
  CHECK(enumerate_boolean_subalgebras(mo2).size() == 3);
  CHECK(enumerate_blocks(mo2).size() == 2);
  const auto b8 = support::share(boolean_lattice(3));
  CHECK(enumerate_boolean_subalgebras(b8).size() == 5);
  CHECK(enumerate_blocks(b8).size() == 1);
  CHECK(enumerate_boolean_subalgebras(support::share(boolean_lattice(std::vector<std::string>{"p"}))).size() == 1);
  CHECK(enumerate_blocks(support::lattice("twoblocks")).size() == 2);

  for (auto name : support::kOmlEntries) {
    CAPTURE(name);
    const auto l = support::lattice(name);
    const auto subs = enumerate_boolean_subalgebras(l);
    std::vector<ElementSet> got;
    for (const auto& s : subs) got.push_back(s.elements);
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::boolean_subalgebras(*l));

    std::vector<ElementSet> blocks, maximal;
    for (const auto& s : enumerate_blocks(l)) blocks.push_back(s.elements);
    for (const auto& s : maximal_subalgebras(subs)) maximal.push_back(s.elements);
    std::sort(blocks.begin(), blocks.end());
    std::sort(maximal.begin(), maximal.end());
    CHECK(blocks == oracle::blocks(*l));
    CHECK(maximal == blocks);
  }
}

TEST_CASE("restriction of frames") {
  const auto mo2 = support::share(mo_lattice(2));
  for (const auto& psi : enumerate_frames(kB4, mo2)) {
    CHECK(restrict_frame(psi, BooleanHom::identity(kB4)) == psi);
    const auto r = restrict_frame(psi, BooleanHom(kB2, kB4, {kB4.top()}));
    CHECK(r == enumerate_frames(kB2, mo2).front());
  }
  const auto b8 = support::share(boolean_lattice(3));
  const BooleanFrame id(kB8, b8, {1, 2, 4});
  const auto r = restrict_frame(id, BooleanHom(kB4, kB8, {0b011, 0b100}));
  CHECK(r.atom_images() == std::vector<Element>{3, 4});
  const auto sections = enumerate_frames(kB4, b8);
  CHECK(std::find(sections.begin(), sections.end(), r) != sections.end());
  CHECK_THROWS_AS(restrict_frame(id, BooleanHom::identity(kB4)), std::invalid_argument);
}

TEST_CASE("base categories") {
  CHECK_THROWS_AS(BaseCategory({kB2, kB4}, {{0, 0, BooleanHom::identity(kB2), "id0"}}), std::invalid_argument);
  const auto base = two_injections();
  CHECK(base.morphisms_into(1).size() == 3);
  CHECK(base.compose(2, 0) == 2);
  const auto skeleton = boolean_skeleton(3);
  CHECK(skeleton.objects().size() == 3);
  std::size_t arrows = 0;
  for (const auto& s : skeleton.objects()) {
    for (const auto& t : skeleton.objects()) arrows += all_homomorphisms(s, t).size();
  }
  CHECK(skeleton.morphisms().size() == arrows);
}

TEST_CASE("frame presheaf with parallel arrows") {
  const auto mo2 = support::share(mo_lattice(2));
  const auto p = build_presheaf(mo2, two_injections());
  CHECK(p.diagram.sections[0].size() == 1);
  CHECK(p.diagram.sections[1].size() == 6);
  CHECK(p.diagram.restriction[2] == std::vector<std::size_t>(6, 0));
  CHECK(p.diagram.restriction[3] == std::vector<std::size_t>(6, 0));
  CHECK(check_functor_laws(p.diagram).ok());

  const auto ec = category_of_elements(p.diagram);
  CHECK(ec.objects.size() == 7);
  for (std::size_t x = 0; x < ec.objects.size(); ++x) {
    if (ec.objects[x].base_object != 1) continue;
    const auto incoming = std::count_if(ec.morphisms.begin(), ec.morphisms.end(), [&](const auto& m) {
      return m.target == x && !ec.base.is_identity(m.base_morphism);
    });
    CHECK(incoming == 2);
  }
  const auto fib = check_discrete_fibration(ec);
  CHECK(fib.discrete);
  CHECK(fib.split_lifts);
}

TEST_CASE("frame presheaf over the subalgebras of MO2") {
  const auto mo2 = support::share(mo_lattice(2));
  const auto p = build_presheaf(mo2, inclusion_base(enumerate_boolean_subalgebras(mo2)));
  std::vector<std::size_t> sizes;
  for (const auto& s : p.diagram.sections) sizes.push_back(s.size());
  CHECK(sizes == std::vector<std::size_t>{1, 6, 6});
}

TEST_CASE("single object presheaf") {
  const auto l = support::lattice("mo3");
  const auto p = build_presheaf(l, discrete_base({kB2}));
  CHECK(p.diagram.sections[0].size() == 1);
  const auto ec = category_of_elements(p.diagram);
  CHECK(ec.objects.size() == 1);
  CHECK(ec.morphisms.size() == 1);
}

TEST_CASE("seeded defects are detected") {
  const auto b8 = support::share(boolean_lattice(3));
  auto p = build_presheaf(b8, boolean_skeleton(3)).diagram;
  REQUIRE(check_functor_laws(p).ok());

  SUBCASE("corrupted restriction") {
    // A non-identity automorphism of B_8: its restriction is a bijection,
    // so swapping two entries breaks P(e^-1 o e) = P(e) o P(e^-1).
    std::size_t m = 0;
    for (; m < p.base.morphisms().size(); ++m) {
      const auto& mor = p.base.morphisms()[m];
      if (mor.source == 2 && mor.target == 2 && mor.map.injective() && !mor.map.is_identity()) break;
    }
    REQUIRE(m < p.base.morphisms().size());
    auto& r = p.restriction[m];
    std::swap(r[0], r[1]);
    const auto report = check_functor_laws(p);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.witnesses.empty());
  }
  SUBCASE("identity not sent to identity") {
    auto& r = p.restriction[p.base.identity(1)];
    std::swap(r[0], r[1]);
    CHECK_FALSE(check_functor_laws(p).identity_law);
  }
  SUBCASE("restriction out of range") {
    p.restriction[p.base.identity(0)][0] = 5;
    CHECK_FALSE(check_functor_laws(p).well_formed);
  }
  SUBCASE("duplicated lift") {
    auto ec = category_of_elements(p);
    REQUIRE(check_discrete_fibration(ec).split_lifts);
    const auto dup = std::find_if(ec.morphisms.begin(), ec.morphisms.end(),
                                  [&](const auto& m) { return !ec.base.is_identity(m.base_morphism); });
    REQUIRE(dup != ec.morphisms.end());
    ec.morphisms.push_back(*dup);
    const auto fib = check_discrete_fibration(ec);
    CHECK_FALSE(fib.split_lifts);
    CHECK_FALSE(fib.witnesses.empty());
  }
  SUBCASE("extra arrow in a fiber") {
    auto ec = category_of_elements(p);
    std::size_t x = 0;
    while (ec.objects[x].base_object != 2) ++x;
    std::size_t y = x + 1;
    while (ec.objects[y].base_object != 2) ++y;
    ec.morphisms.push_back({p.base.identity(2), x, y});
    CHECK_FALSE(check_discrete_fibration(ec).discrete);
  }
}

TEST_CASE("empty base is vacuously a discrete fibration") {
  const auto fib = check_discrete_fibration(ElementCategory{});
  CHECK(fib.discrete);
  CHECK(fib.split_lifts);
}
