// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "qframes/adjunction.hpp"
#include "qframes/gluing.hpp"
#include "qframes/ks.hpp"
#include "support.hpp"

using namespace qframes;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failures for one criterion; the first few are printed.
struct Criterion {
  std::string title;
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void report(int number, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const auto elapsed = seconds_since(start);
  char time[32];
  std::snprintf(time, sizeof time, "%.3fs", elapsed);
  std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << number << ": " << c.title << " [" << time
            << (c.note.empty() ? "" : "; " + c.note) << "]\n";
  for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) std::cout << "    " << c.failures[i] << "\n";
  failed += !c.failures.empty();
}

nlohmann::json cli_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  std::ostringstream out, err;
  qframes::cli::run(args, out, err);
  return nlohmann::json::parse(out.str());
}

std::size_t count_injective(const std::vector<BooleanFrame>& frames) {
  std::size_t n = 0;
  for (const auto& f : frames) n += f.injective();
  return n;
}

}  // namespace

int main() {
  const auto kB2 = BooleanAlgebra::with_atoms(1);
  const auto kB4 = BooleanAlgebra::with_atoms(2);
  const auto kB8 = BooleanAlgebra::with_atoms(3);

  report(1, [](Criterion& c) {
    c.title = "KS sets are UNSAT (18 rays < 1 s, 33 rays < 30 s, parity confirms 18 rays)";
    auto start = Clock::now();
    const auto cabello = cli_json({"ks", "catalog:cabello18"});
    const auto t18 = seconds_since(start);
    c.expect(cabello["results"]["outcome"] == "UNSAT", "cabello18 not UNSAT");
    c.expect(t18 < 1.0, "cabello18 took " + std::to_string(t18) + " s");
    c.expect(parity_obstruction(constraints_of(support::rays("cabello18"))).applies, "parity oracle does not apply");
    start = Clock::now();
    const auto peres = cli_json({"ks", "catalog:peres33"});
    const auto t33 = seconds_since(start);
    c.expect(peres["results"]["outcome"] == "UNSAT", "peres33 not UNSAT");
    c.expect(t33 < 30.0, "peres33 took " + std::to_string(t33) + " s");
    char note[64];
    std::snprintf(note, sizeof note, "18 rays %.4fs, 33 rays %.4fs", t18, t33);
    c.note = note;
  });

  report(2, [&](Criterion& c) {
    c.title = "exact small counts match brute-force oracles";
    auto all = SearchOptions{};
    all.enumerate_all = true;
    auto count_check = [&](const char* name, std::size_t expected) {
      const auto s = support::rays(name);
      const auto cs = constraints_of(s);
      const auto engine = ks_search(s, all).valuations.size();
      const auto brute = oracle::count_valuations(cs.size(), cs.contexts, cs.exclusions);
      c.expect(engine == expected && brute == expected, std::string(name) + ": engine " + std::to_string(engine) +
                                                            ", oracle " + std::to_string(brute));
    };
    count_check("basis3", 3);
    count_check("twobases3", 5);
    const auto mo2 = support::share(mo_lattice(2));
    const auto gv = global_valuations(mo2).valuations.size();
    c.expect(gv == 4 && oracle::count_global_valuations(*mo2) == 4, "global_valuations(MO2) = " + std::to_string(gv));
    const auto f4 = enumerate_frames(kB4, mo2).size();
    c.expect(f4 == 6 && oracle::count_frames(2, *mo2).total == 6, "frames(B_4, MO2) = " + std::to_string(f4));
    const auto f8 = enumerate_frames(kB8, mo2).size();
    c.expect(f8 == 15 && oracle::count_frames(3, *mo2).total == 15, "frames(B_8, MO2) = " + std::to_string(f8));
  });

  report(3, [](Criterion& c) {
    c.title = "cocycle laws over all injective block frames of every catalog lattice, < 5 s total";
    std::size_t frames = 0, triples = 0;
    const auto start = Clock::now();
    for (auto name : support::kOmlEntries) {
      const auto list = injective_block_frames(support::lattice(name));
      const auto r = verify_cocycles(list);
      frames += list.size();
      triples += r.triangle_law.checked;
      c.expect(r.ok(), std::string(name) + ": cocycle law fails");
      c.expect(r.identity_law.checked == list.size(), std::string(name) + ": identity law not exhaustive");
    }
    const auto elapsed = seconds_since(start);
    c.expect(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
    c.note = std::to_string(frames) + " frames, " + std::to_string(triples) + " triples";
  });

  report(4, [&](Criterion& c) {
    c.title = "pullback image equals the intersection for all injective frame pairs";
    std::size_t pairs = 0;
    for (auto name : support::kOmlEntries) {
      const auto l = support::lattice(name);
      std::vector<BooleanFrame> frames;
      for (const auto& b : {kB2, kB4, kB8}) {
        for (auto& f : enumerate_frames(b, l)) {
          if (f.injective()) frames.push_back(std::move(f));
        }
      }
      for (const auto& f : injective_block_frames(l)) frames.push_back(f);
      for (const auto& x : frames) {
        for (const auto& y : frames) {
          ++pairs;
          c.expect(check_intersection(x, y), std::string(name) + ": check_intersection failed");
          c.expect(pullback(x, y).image() == oracle::intersection(x.image(), y.image()),
                   std::string(name) + ": image differs from the set intersection");
        }
      }
    }
    c.note = std::to_string(pairs) + " pairs";
  });

  report(5, [](Criterion& c) {
    c.title = "reconstruct gives an isomorphism for every catalog OML, < 10 s each";
    double worst = 0;
    for (auto name : support::kOmlEntries) {
      const auto start = Clock::now();
      const auto r = cli_json({"reconstruct", "catalog:" + std::string(name)});
      const auto elapsed = seconds_since(start);
      worst = std::max(worst, elapsed);
      c.expect(r["results"]["isomorphic"] == true && r["exit_code"] == 0, std::string(name) + ": not isomorphic");
      c.expect(reconstruct(support::lattice(name)).isomorphic, std::string(name) + ": library reconstruct failed");
      c.expect(elapsed < 10.0, std::string(name) + " took " + std::to_string(elapsed) + " s");
    }
    char note[48];
    std::snprintf(note, sizeof note, "slowest %.3fs", worst);
    c.note = note;
  });

  report(6, [](Criterion& c) {
    c.title = "adjunction bijection for representables at B_2, B_4, B_8 and blocks diagrams";
    const auto skeleton = boolean_skeleton(3);
    std::size_t checks = 0;
    for (auto name : support::kOmlEntries) {
      const auto l = support::lattice(name);
      auto check = [&](const BooleanDiagram& p, const std::string& what) {
        const auto rep = adjunction_check(p, l);
        const auto pasted = paste_colimit(p);
        const auto brute = pasted.lattice ? oracle::count_quantum_morphisms(*pasted.lattice, *l) : 0;
        ++checks;
        c.expect(rep.ok(), std::string(name) + " " + what + ": " + rep.reason);
        c.expect(rep.left_count == rep.right_count && rep.right_count == brute,
                 std::string(name) + " " + what + ": left " + std::to_string(rep.left_count) + ", right " +
                     std::to_string(rep.right_count) + ", oracle " + std::to_string(brute));
      };
      for (std::size_t obj = 0; obj < 3; ++obj) check(representable_diagram(skeleton, obj), "rep " + std::to_string(obj));
      check(blocks_diagram(l), "blocks");
    }
    c.note = std::to_string(checks) + " diagrams";
  });

  report(7, [&](Criterion& c) {
    c.title = "functor laws and unique lifts hold; seeded defects are detected";
    std::size_t presheaves = 0;
    for (auto name : support::kOmlEntries) {
      const auto l = support::lattice(name);
      for (const auto& base : {inclusion_base(enumerate_boolean_subalgebras(l)), boolean_skeleton(3),
                               discrete_base({kB2, kB4, kB8})}) {
        const auto p = build_presheaf(l, base);
        ++presheaves;
        c.expect(check_functor_laws(p.diagram).ok(), std::string(name) + ": functor law fails");
        const auto fib = check_discrete_fibration(category_of_elements(p.diagram));
        c.expect(fib.discrete && fib.split_lifts, std::string(name) + ": fibration check fails");
      }
    }
    auto diagram = build_presheaf(support::share(boolean_lattice(3)), boolean_skeleton(3)).diagram;
    auto ec = category_of_elements(diagram);
    for (const auto& m : ec.morphisms) {
      if (!ec.base.is_identity(m.base_morphism)) {
        ec.morphisms.push_back(m);
        break;
      }
    }
    c.expect(!check_discrete_fibration(ec).split_lifts, "duplicated lift not detected");
    for (std::size_t m = 0; m < diagram.base.morphisms().size(); ++m) {
      const auto& mor = diagram.base.morphisms()[m];
      if (mor.source == 2 && mor.target == 2 && mor.map.injective() && !mor.map.is_identity()) {
        auto& r = diagram.restriction[m];
        std::swap(r[0], r[1]);
        break;
      }
    }
    c.expect(!check_functor_laws(diagram).ok(), "corrupted restriction not detected");
    c.note = std::to_string(presheaves) + " presheaves";
  });

  report(8, [](Criterion& c) {
    c.title = "validator: O6 fails with witness (a, b); catalog OMLs and Boolean algebras pass";
    const auto o6 = support::lattice("o6");
    const auto w = verify_orthomodularity(*o6);
    c.expect(w && o6->label(w->first) == "a" && o6->label(w->second) == "b", "O6 witness is not (a, b)");
    for (auto name : support::kOmlEntries) {
      const auto l = support::lattice(name);
      c.expect(validate_ortholattice(*l).valid() && !verify_orthomodularity(*l), std::string(name) + " fails");
    }
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto b = boolean_lattice(k);
      c.expect(validate_ortholattice(b).valid() && !verify_orthomodularity(b), "B with " + std::to_string(k) + " atoms fails");
    }
  });

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
