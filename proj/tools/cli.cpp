#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <bit>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qframes/adjunction.hpp"
#include "qframes/catalog.hpp"
#include "qframes/errors.hpp"
#include "qframes/frames.hpp"
#include "qframes/gluing.hpp"
#include "qframes/ks.hpp"
#include "qframes/oml.hpp"
#include "qframes/pasting.hpp"
#include "qframes/presheaf.hpp"
#include "qframes/scenario.hpp"

namespace qframes::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Unreadable or malformed input, or input outside a command's domain.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string source;
  std::string text;
  InputKind kind = InputKind::lattice;
  std::optional<RayScenario> rays;
  std::optional<BlockScenario> blocks;
  std::optional<PastingResult> pasting;
  OMLRef lattice;
};

struct Outcome {
  Json results = Json::object();
  Json stats = Json::object();
  int code = success;
};

std::string sha256_hex(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string read_source(const std::string& location) {
  if (location.rfind("catalog:", 0) == 0) {
    const auto name = location.substr(8);
    const auto text = catalog_text(name);
    if (!text) throw InputError("unknown catalog entry '" + name + "' (see 'catalog list')");
    return std::string(*text);
  }
  std::ifstream in(location, std::ios::binary);
  if (!in) throw InputError(location + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Input load_input(const std::string& location) {
  Input in;
  in.source = location;
  in.text = read_source(location);
  try {
    in.kind = detect_kind(in.text);
    switch (in.kind) {
      case InputKind::rays:
        in.rays = load_ray_scenario(in.text);
        in.blocks = to_block_scenario(*in.rays);
        break;
      case InputKind::blocks:
        in.blocks = load_block_scenario(in.text);
        break;
      case InputKind::lattice:
        in.lattice = std::make_shared<const FiniteOML>(load_lattice_table(in.text));
        break;
    }
    if (in.blocks && !in.blocks->blocks.empty()) {
      in.pasting = scenario_orthoposet(*in.blocks);
      if (in.pasting->lattice) in.lattice = std::make_shared<const FiniteOML>(*in.pasting->lattice);
    }
  } catch (const ParseError& e) {
    throw InputError(location + ": " + e.what());
  } catch (const ScenarioError& e) {
    throw InputError(location + ": " + e.what());
  } catch (const StructureError& e) {
    throw InputError(location + ": " + e.what());
  }
  return in;
}

Json input_record(const Input& in) {
  return Json{{"source", in.source}, {"kind", to_string(in.kind)}, {"sha256", sha256_hex(in.text)}};
}

Json labels_of(const FiniteOML& l, const std::vector<Element>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(l.label(x));
  return out;
}

Json missing_bound_json(const Orthoposet& p, const MissingBound& mb) {
  return Json{{"a", p.labels[mb.a]}, {"b", p.labels[mb.b]}, {"missing", mb.is_join ? "join" : "meet"}};
}

std::string missing_bound_text(const Orthoposet& p, const MissingBound& mb) {
  return "'" + p.labels[mb.a] + "' and '" + p.labels[mb.b] + "' have no " + (mb.is_join ? "join" : "meet");
}

OMLRef require_oml(const Input& in) {
  if (!in.lattice) {
    if (in.pasting && in.pasting->missing_bound) {
      throw InputError(in.source + ": the pasting is not a lattice (" +
                       missing_bound_text(in.pasting->structure, *in.pasting->missing_bound) + ")");
    }
    throw InputError(in.source + ": input does not describe a lattice");
  }
  const auto report = validate_ortholattice(*in.lattice);
  if (!report.valid()) {
    const auto& v = report.violations.front();
    throw InputError(in.source + ": not an ortholattice (" + v.axiom + ": " + v.detail + ")");
  }
  if (const auto w = verify_orthomodularity(*in.lattice)) {
    throw InputError(in.source + ": not orthomodular at ('" + in.lattice->label(w->first) + "', '" +
                     in.lattice->label(w->second) + "')");
  }
  return in.lattice;
}

Outcome cmd_validate(const Input& in) {
  Outcome o;
  auto& r = o.results;
  if (!in.lattice) {
    r["summary"] = "not a lattice";
    r["lattice"] = false;
    if (in.pasting && in.pasting->missing_bound) {
      r["summary"] = "not a lattice: " + missing_bound_text(in.pasting->structure, *in.pasting->missing_bound);
      r["missing_bound"] = missing_bound_json(in.pasting->structure, *in.pasting->missing_bound);
    }
    o.code = property_failure;
    return o;
  }
  const auto& l = *in.lattice;
  const auto report = validate_ortholattice(l);
  const auto witness = verify_orthomodularity(l);
  if (!report.valid()) {
    r["summary"] = "not an ortholattice (" + report.violations.front().axiom + ")";
    o.code = property_failure;
  } else if (witness) {
    r["summary"] = "not orthomodular: witness (" + l.label(witness->first) + ", " + l.label(witness->second) + ")";
    o.code = property_failure;
  } else {
    r["summary"] = "orthomodular lattice with " + std::to_string(l.size()) + " elements";
  }
  r["lattice"] = true;
  r["elements"] = l.size();
  r["atoms"] = l.atoms().size();
  r["ortholattice"] = report.valid();
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"axiom", v.axiom}, {"witness", labels_of(l, v.witness)}, {"detail", v.detail}});
  }
  r["violations"] = violations;
  r["orthomodular"] = !witness;
  if (witness) r["witness"] = Json::array({l.label(witness->first), l.label(witness->second)});
  return o;
}

Outcome cmd_blocks(const Input& in) {
  Outcome o;
  auto& r = o.results;
  if (in.lattice) {
    const auto l = require_oml(in);
    const auto blocks = enumerate_blocks(l);
    const auto all = enumerate_boolean_subalgebras(l);
    const auto maximal = maximal_subalgebras(all);
    bool agree = blocks.size() == maximal.size();
    for (std::size_t i = 0; agree && i < blocks.size(); ++i) agree = blocks[i].elements == maximal[i].elements;
    r["summary"] = std::to_string(blocks.size()) + " blocks";
    r["source"] = "lattice";
    Json list = Json::array();
    for (const auto& b : blocks) list.push_back(labels_of(*l, b.injection.atom_images()));
    r["blocks"] = list;
    r["boolean_subalgebras"] = all.size();
    r["cross_check"] = agree;
    if (!agree) o.code = property_failure;
    return o;
  }
  if (!in.blocks) throw InputError(in.source + ": input has no block structure");
  const auto& s = *in.blocks;
  r["summary"] = std::to_string(s.blocks.size()) + " blocks (pasting is not a lattice)";
  r["source"] = "scenario";
  Json list = Json::array();
  for (const auto& b : s.blocks) {
    Json names = Json::array();
    for (auto a : b) names.push_back(s.atoms[a]);
    list.push_back(names);
  }
  r["blocks"] = list;
  if (in.rays) {
    Json partial = Json::array();
    for (const auto& c : in.rays->partial_cliques) {
      Json names = Json::array();
      for (auto a : c) names.push_back(in.rays->rays[a].name);
      partial.push_back(names);
    }
    r["partial_cliques"] = partial;
  }
  return o;
}

BooleanAlgebra parse_probe_algebra(const std::string& probe, Json& inputs) {
  if (!probe.empty() && std::all_of(probe.begin(), probe.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto n = std::stoull(probe);
    if (n < 2 || !std::has_single_bit(n) || n > (1ull << 20)) {
      throw InputError("--probe " + probe + ": expected the element count of a Boolean algebra (2, 4, 8, ...)");
    }
    return BooleanAlgebra::with_atoms(static_cast<std::size_t>(std::countr_zero(n)));
  }
  const auto in = load_input(probe);
  inputs.push_back(input_record(in));
  if (!in.blocks || in.blocks->blocks.size() != 1) {
    throw InputError(probe + ": a probe file must describe exactly one block");
  }
  std::vector<std::string> names;
  for (auto a : in.blocks->blocks.front()) names.push_back(in.blocks->atoms[a]);
  return BooleanAlgebra(names);
}

Outcome cmd_frames(const Input& in, const BooleanAlgebra& b) {
  Outcome o;
  auto& r = o.results;
  const auto l = require_oml(in);
  const auto frames = enumerate_frames(b, l);
  const auto injective = std::count_if(frames.begin(), frames.end(), [](const auto& f) { return f.injective(); });
  r["summary"] = std::to_string(frames.size()) + " frames " + b.name() + " -> L (" + std::to_string(injective) +
                 " injective)";
  r["probe"] = b.name();
  r["probe_atoms"] = b.atoms();
  r["count"] = frames.size();
  r["injective"] = injective;
  Json list = Json::array();
  for (const auto& f : frames) list.push_back(labels_of(*l, f.atom_images()));
  r["frames"] = list;
  return o;
}

Json law_json(const LawResult& law) {
  return Json{{"holds", law.holds}, {"checked", law.checked}, {"witnesses", law.witnesses}};
}

Outcome cmd_glue(const Input& in) {
  Outcome o;
  auto& r = o.results;
  const auto l = require_oml(in);
  const auto frames = injective_block_frames(l);
  std::size_t pairs = 0;
  Json failures = Json::array();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = 0; j < frames.size(); ++j) {
      ++pairs;
      if (!check_intersection(frames[i], frames[j])) {
        failures.push_back(Json::array({i, j}));
      }
    }
  }
  const auto cocycles = verify_cocycles(frames);
  const bool ok = failures.empty() && cocycles.ok();
  r["summary"] = ok ? "pullbacks are intersections and all cocycle laws hold"
                    : "gluing failure (see intersection_failures and cocycles)";
  r["frames"] = frames.size();
  r["pairs_checked"] = pairs;
  r["intersection_holds"] = failures.empty();
  r["intersection_failures"] = failures;
  r["cocycles"] = Json{{"identity", law_json(cocycles.identity_law)},
                       {"symmetry", law_json(cocycles.symmetry_law)},
                       {"triangle", law_json(cocycles.triangle_law)}};
  if (!ok) o.code = property_failure;
  return o;
}

struct KsFlags {
  bool all = false;
  std::size_t cap = 1'000'000;
  std::optional<std::uint64_t> max_nodes;
  std::string expect;
  bool timing = false;
};

Json valuation_json(const std::vector<std::string>& names, const Valuation& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) out.push_back(names[i]);
  }
  return out;
}

Outcome cmd_ks(const Input& in, const KsFlags& flags) {
  Outcome o;
  auto& r = o.results;
  SearchOptions options;
  options.enumerate_all = flags.all;
  options.cap = flags.cap;
  options.max_nodes = flags.max_nodes;
  KSResult result;
  std::vector<std::string> names;
  std::optional<ParityResult> parity;
  std::string mode;
  try {
    if (in.rays || in.blocks) {
      const auto cs = in.rays ? constraints_of(*in.rays) : constraints_of(*in.blocks);
      result = in.rays ? ks_search(*in.rays, options) : ks_search(*in.blocks, options);
      names = cs.names;
      parity = parity_obstruction(cs);
      mode = "scenario";
    } else {
      const auto l = require_oml(in);
      const auto bs = block_structure(l);
      result = global_valuations(bs, options);
      names = bs.atom_labels;
      mode = "global_valuations";
    }
  } catch (const ScenarioError& e) {
    throw InputError(in.source + ": " + e.what());
  }
  const auto outcome = to_string(result.verdict);
  const bool enumerated = flags.all || mode == "global_valuations";
  std::string summary = outcome;
  if (enumerated && result.verdict != Verdict::unknown) {
    summary += " (" + std::to_string(result.valuations.size()) + (result.truncated ? "+" : "") + " valuations)";
  }
  r["summary"] = summary;
  r["mode"] = mode;
  r["outcome"] = outcome;
  r["variables"] = names.size();
  if (enumerated) {
    r["count"] = result.valuations.size();
    r["truncated"] = result.truncated;
  }
  Json vals = Json::array();
  for (const auto& v : result.valuations) vals.push_back(valuation_json(names, v));
  r["valuations"] = vals;
  if (parity) r["parity"] = Json{{"applies", parity->applies}, {"explanation", parity->explanation}};
  r["node_limit_hit"] = result.node_limit_hit;
  o.stats["nodes"] = result.stats.nodes;
  o.stats["propagations"] = result.stats.propagations;
  if (flags.timing) o.stats["elapsed_seconds"] = result.stats.elapsed_seconds;

  if (result.node_limit_hit || result.truncated) {
    o.code = resource_cap;
  } else if (!flags.expect.empty()) {
    const bool want_sat = flags.expect == "sat";
    if (want_sat != (result.verdict == Verdict::sat)) o.code = property_failure;
  }
  return o;
}

Json colimit_json(const PastedStructure& p) {
  Json j;
  j["classes"] = p.structure.size();
  j["labels"] = p.structure.labels;
  j["lattice"] = p.lattice.has_value();
  j["orthomodular"] = p.lattice_flag();
  if (p.missing_bound) j["missing_bound"] = missing_bound_json(p.structure, *p.missing_bound);
  if (p.orthomodularity_witness) {
    j["orthomodularity_witness"] = Json::array(
        {p.structure.labels[p.orthomodularity_witness->first], p.structure.labels[p.orthomodularity_witness->second]});
  }
  return j;
}

Outcome cmd_paste(const Input& in) {
  Outcome o;
  auto& r = o.results;
  Json detail = Json::object();
  bool ok = true;
  std::string summary;
  if (in.pasting) {
    const auto& p = *in.pasting;
    Json j;
    j["elements"] = p.structure.size();
    j["lattice"] = p.is_lattice();
    if (p.missing_bound) j["missing_bound"] = missing_bound_json(p.structure, *p.missing_bound);
    j["orthomodular"] = p.is_lattice() && !p.orthomodularity_witness;
    detail["scenario_pasting"] = j;
    if (!p.is_lattice()) {
      ok = false;
      summary = "scenario pasting is not a lattice: " + missing_bound_text(p.structure, *p.missing_bound);
    } else if (p.orthomodularity_witness) {
      ok = false;
      summary = "scenario pasting is not orthomodular";
    }
  }
  if (in.lattice) {
    const auto l = require_oml(in);
    try {
      const auto pasted = paste_colimit(blocks_diagram(l));
      detail["colimit"] = colimit_json(pasted);
      if (!pasted.lattice_flag()) {
        ok = false;
        summary = pasted.lattice ? "colimit is not orthomodular"
                                 : "colimit is not a lattice: " +
                                       missing_bound_text(pasted.structure, *pasted.missing_bound);
      } else if (ok) {
        summary = "colimit of the blocks diagram: orthomodular lattice with " +
                  std::to_string(pasted.structure.size()) + " elements";
      }
    } catch (const StructureError& e) {
      ok = false;
      summary = std::string("pasting failed: ") + e.what();
      detail["colimit"] = Json{{"error", e.what()}};
    }
  }
  r["summary"] = summary;
  r.update(detail);
  if (!ok) o.code = property_failure;
  return o;
}

Outcome cmd_reconstruct(const Input& in) {
  Outcome o;
  auto& r = o.results;
  const auto l = require_oml(in);
  const auto pasted = paste_colimit(blocks_diagram(l));
  IsoResult iso;
  if (pasted.lattice) {
    iso = find_isomorphism(*pasted.lattice, *l);
  } else {
    iso.reason = "pasting is not a lattice";
  }
  r["summary"] = iso.isomorphic ? "isomorphic" : "not isomorphic: " + iso.reason;
  r["isomorphic"] = iso.isomorphic;
  r["elements"] = l->size();
  r["colimit_classes"] = pasted.structure.size();
  if (iso.isomorphic) {
    Json map = Json::object();
    for (Element x = 0; x < iso.map.size(); ++x) map[pasted.structure.labels[x]] = l->label(iso.map[x]);
    r["map"] = map;
  } else {
    r["reason"] = iso.reason;
    o.code = property_failure;
  }
  return o;
}

Outcome cmd_adjoint(const Input& in, const std::string& probe) {
  Outcome o;
  auto& r = o.results;
  const auto l = require_oml(in);
  std::vector<std::string> probes;
  if (probe == "all") {
    probes = {"blocks", "rep:2", "rep:4", "rep:8"};
  } else {
    probes = {probe};
  }
  Json list = Json::array();
  bool all_ok = true;
  for (const auto& p : probes) {
    BooleanDiagram diagram;
    std::optional<BooleanAlgebra> represented;
    if (p == "blocks") {
      diagram = blocks_diagram(l);
    } else if (p.rfind("rep:", 0) == 0) {
      const auto digits = p.substr(4);
      const bool numeric =
          !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
      const auto n = numeric && digits.size() < 6 ? std::stoull(digits) : 0;
      if (n < 2 || n > 8 || !std::has_single_bit(n)) {
        throw InputError("--probe " + p + ": expected rep:2, rep:4 or rep:8");
      }
      const auto atoms = static_cast<std::size_t>(std::countr_zero(n));
      diagram = representable_diagram(boolean_skeleton(atoms), atoms - 1);
      represented = BooleanAlgebra::with_atoms(atoms);
    } else {
      throw InputError("--probe " + p + ": expected all, blocks or rep:<n>");
    }
    const auto rep = adjunction_check(diagram, l);
    Json j;
    j["probe"] = p;
    j["defined"] = rep.defined;
    if (!rep.defined) j["reason"] = rep.reason;
    j["nat_count"] = rep.left_count;
    j["hom_count"] = rep.right_count;
    j["bijection"] = rep.bijection();
    j["well_defined"] = rep.well_defined;
    j["injective"] = rep.injective;
    j["surjective"] = rep.surjective;
    j["inverse_agrees"] = rep.inverse_agrees;
    j["natural_in_diagram"] = rep.natural_in_diagram;
    j["natural_in_lattice"] = rep.natural_in_lattice;
    j["diagram_probe"] = rep.diagram_probe;
    j["lattice_probe"] = rep.lattice_probe;
    bool ok = rep.ok();
    if (represented) {
      const auto f = factorization_check(*represented, l);
      j["factorization"] = Json{{"ok", f.ok}, {"frames_checked", f.frames_checked}, {"failure", f.failure}};
      ok = ok && f.ok;
    }
    j["ok"] = ok;
    all_ok = all_ok && ok;
    list.push_back(j);
  }
  r["summary"] = all_ok ? "adjunction bijection verified for every probe" : "adjunction check failed";
  r["scope"] = adjunction_check(blocks_diagram(l), l).scope;
  r["probes"] = list;
  if (!all_ok) o.code = property_failure;
  return o;
}

void render_text(const Json& value, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto simple = [](const Json& v) { return !v.is_object() && !v.is_array(); };
  for (const auto& [key, v] : value.items()) {
    if (simple(v)) {
      out << pad << key << ": " << scalar(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), simple)) {
      out << pad << key << ": [";
      bool first = true;
      for (const auto& x : v) {
        out << (first ? "" : ", ") << scalar(x);
        first = false;
      }
      out << "]\n";
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (const auto& x : v) {
        if (x.is_object()) {
          out << pad << "  -\n";
          render_text(x, out, indent + 4);
        } else if (x.is_array()) {
          out << pad << "  - [";
          bool first = true;
          for (const auto& y : x) {
            out << (first ? "" : ", ") << (simple(y) ? scalar(y) : y.dump());
            first = false;
          }
          out << "]\n";
        } else {
          out << pad << "  - " << scalar(x) << "\n";
        }
      }
    } else {
      out << pad << key << ":\n";
      render_text(v, out, indent + 2);
    }
  }
}

void emit(const std::string& format, const Json& report, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  out << "command: " << report["command"].get<std::string>() << "\n";
  for (const auto& in : report["inputs"]) {
    out << "input: " << in["source"].get<std::string>() << " (" << in["kind"].get<std::string>()
        << ", sha256 " << in["sha256"].get<std::string>() << ")\n";
  }
  const auto& results = report["results"];
  if (results.contains("summary")) out << "result: " << results["summary"].get<std::string>() << "\n";
  Json rest = results;
  rest.erase("summary");
  render_text(rest, out, 0);
  if (!report["stats"].empty()) {
    out << "stats:\n";
    render_text(report["stats"], out, 2);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite orthomodular lattices, Boolean frames and Kochen-Specker search", "qframes"};
  app.require_subcommand(1);
  std::string format = "text";
  bool timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", timing, "Include elapsed times in reports");
  app.set_version_flag("--version", std::string(kVersion));

  std::string file;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Input file or catalog:<name>")->required(); };

  auto* validate = app.add_subcommand("validate", "Check ortholattice axioms and orthomodularity")->fallthrough();
  add_file(validate);
  auto* blocks = app.add_subcommand("blocks", "List the blocks (maximal Boolean subalgebras)")->fallthrough();
  add_file(blocks);
  std::string frames_probe;
  auto* frames = app.add_subcommand("frames", "Enumerate Boolean frames from a probe algebra")->fallthrough();
  add_file(frames);
  frames->add_option("--probe", frames_probe, "Element count (2, 4, 8, ...) or a one-block file")->required();
  auto* glue = app.add_subcommand("glue", "Pullbacks and cocycle laws over injective block frames")->fallthrough();
  add_file(glue);
  KsFlags ks_flags;
  auto* ks = app.add_subcommand("ks", "Search for a two-valued assignment")->fallthrough();
  add_file(ks);
  ks->add_flag("--all", ks_flags.all, "Enumerate all valuations");
  ks->add_option("--cap", ks_flags.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  ks->add_option("--expect", ks_flags.expect, "Expected outcome")->check(CLI::IsMember({"sat", "unsat"}));
  std::uint64_t max_nodes = 0;
  auto* max_nodes_opt = ks->add_option("--max-nodes", max_nodes, "Search node budget")->check(CLI::PositiveNumber);
  auto* paste = app.add_subcommand("paste", "Colimit of the blocks diagram")->fallthrough();
  add_file(paste);
  auto* reconstruct = app.add_subcommand("reconstruct", "Paste the blocks and search for an isomorphism")->fallthrough();
  add_file(reconstruct);
  std::string adjoint_probe = "all";
  auto* adjoint = app.add_subcommand("adjoint", "Check the adjunction bijection")->fallthrough();
  add_file(adjoint);
  adjoint->add_option("--probe", adjoint_probe, "all, blocks, or rep:<n> (n = 2, 4, 8)");
  auto* catalog = app.add_subcommand("catalog", "Bundled inputs")->fallthrough();
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List bundled inputs")->fallthrough();
  std::string catalog_name;
  auto* catalog_show = catalog->add_subcommand("show", "Print a bundled input")->fallthrough();
  catalog_show->add_option("name", catalog_name, "Entry name")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? success : input_error;
  }
  if (max_nodes_opt->count() > 0) ks_flags.max_nodes = max_nodes;
  ks_flags.timing = timing;

  Json report;
  report["command"] = app.get_subcommands().front()->get_name();
  report["version"] = kVersion;
  report["inputs"] = Json::array();
  try {
    Outcome outcome;
    if (catalog->parsed()) {
      if (catalog_list->parsed()) {
        report["command"] = "catalog list";
        Json entries = Json::array();
        for (const auto& e : catalog_entries()) {
          entries.push_back(Json{{"name", e.name},
                                 {"kind", to_string(detect_kind(e.text))},
                                 {"description", catalog_description(e.text)}});
        }
        outcome.results["summary"] = std::to_string(entries.size()) + " bundled inputs";
        outcome.results["entries"] = entries;
      } else {
        report["command"] = "catalog show";
        const auto text = catalog_text(catalog_name);
        if (!text) throw InputError("unknown catalog entry '" + catalog_name + "' (see 'catalog list')");
        if (format == "text") {
          out << *text;
          return success;
        }
        outcome.results["summary"] = "catalog:" + catalog_name;
        outcome.results["name"] = catalog_name;
        outcome.results["kind"] = to_string(detect_kind(*text));
        outcome.results["text"] = std::string(*text);
      }
    } else {
      const auto in = load_input(file);
      report["inputs"].push_back(input_record(in));
      if (validate->parsed()) {
        outcome = cmd_validate(in);
      } else if (blocks->parsed()) {
        outcome = cmd_blocks(in);
      } else if (frames->parsed()) {
        const auto b = parse_probe_algebra(frames_probe, report["inputs"]);
        outcome = cmd_frames(in, b);
      } else if (glue->parsed()) {
        outcome = cmd_glue(in);
      } else if (ks->parsed()) {
        outcome = cmd_ks(in, ks_flags);
      } else if (paste->parsed()) {
        outcome = cmd_paste(in);
      } else if (reconstruct->parsed()) {
        outcome = cmd_reconstruct(in);
      } else if (adjoint->parsed()) {
        outcome = cmd_adjoint(in, adjoint_probe);
      }
    }
    report["results"] = outcome.results;
    report["stats"] = outcome.stats;
    report["exit_code"] = outcome.code;
    emit(format, report, out);
    return outcome.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    if (format == "json") {
      report["error"] = e.what();
      report["exit_code"] = static_cast<int>(input_error);
      out << report.dump(2) << "\n";
    }
    return input_error;
  }
}

}  // namespace qframes::cli
