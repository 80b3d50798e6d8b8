#include "qframes/ks.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qframes/errors.hpp"

namespace qframes {
namespace {

class Solver {
 public:
  Solver(const ConstraintSystem& cs, const SearchOptions& options)
      : cs_(cs), options_(options), value_(cs.size(), -1), var_contexts_(cs.size()), partners_(cs.size()) {
    for (std::size_t c = 0; c < cs.contexts.size(); ++c) {
      for (auto v : cs.contexts[c]) var_contexts_.at(v).push_back(c);
    }
    for (const auto& [a, b] : cs.exclusions) {
      partners_.at(a).push_back(b);
      partners_.at(b).push_back(a);
    }
    if (options.branching_order.empty()) {
      order_.resize(cs.size());
      std::iota(order_.begin(), order_.end(), std::size_t{0});
    } else {
      order_ = options.branching_order;
      auto sorted = order_;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i || sorted.size() != cs.size()) {
          throw std::invalid_argument("branching order is not a permutation of the variables");
        }
      }
    }
  }

  KSResult run() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (const auto& c : cs_.contexts) {
      if (c.empty()) ok = false;
      if (ok && c.size() == 1) ok = assign(c.front(), 1);
    }
    if (ok) search(0);
    result_.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!result_.valuations.empty()) {
      result_.verdict = Verdict::sat;
    } else {
      result_.verdict = result_.node_limit_hit ? Verdict::unknown : Verdict::unsat;
    }
    return std::move(result_);
  }

 private:
  bool assign(std::size_t v, std::int8_t x) {
    std::vector<std::pair<std::size_t, std::int8_t>> queue{{v, x}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto [w, y] = queue[qi];
      if (value_[w] == y) continue;
      if (value_[w] != -1) return false;
      value_[w] = y;
      trail_.push_back(w);
      if (qi > 0) ++result_.stats.propagations;
      if (y == 1) {
        for (auto c : var_contexts_[w]) {
          for (auto u : cs_.contexts[c]) {
            if (u == w) continue;
            if (value_[u] == 1) return false;
            if (value_[u] == -1) queue.emplace_back(u, 0);
          }
        }
        for (auto u : partners_[w]) {
          if (value_[u] == 1) return false;
          if (value_[u] == -1) queue.emplace_back(u, 0);
        }
      } else {
        for (auto c : var_contexts_[w]) {
          std::size_t open = 0, last = 0;
          bool has_one = false;
          for (auto u : cs_.contexts[c]) {
            if (value_[u] == 1) has_one = true;
            if (value_[u] == -1) ++open, last = u;
          }
          if (has_one) continue;
          if (open == 0) return false;
          if (open == 1) queue.emplace_back(last, 1);
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  void search(std::size_t pos) {
    if (stop_) return;
    ++result_.stats.nodes;
    if (options_.max_nodes && result_.stats.nodes > *options_.max_nodes) {
      result_.node_limit_hit = true;
      stop_ = true;
      return;
    }
    while (pos < order_.size() && value_[order_[pos]] != -1) ++pos;
    if (pos == order_.size()) {
      leaf();
      return;
    }
    const auto v = order_[pos];
    for (std::int8_t x : {1, 0}) {
      const auto mark = trail_.size();
      if (assign(v, x)) search(pos + 1);
      undo(mark);
      if (stop_) return;
    }
  }

  void leaf() {
    Valuation val(value_.begin(), value_.end());
    if (const auto check = verify_valuation(cs_, val); !check.ok) {
      throw std::logic_error("solver produced an invalid valuation: " + check.witness);
    }
    if (options_.accept && !options_.accept(val)) return;
    if (options_.enumerate_all && result_.valuations.size() == options_.cap) {
      result_.truncated = true;
      stop_ = true;
      return;
    }
    result_.valuations.push_back(std::move(val));
    if (!options_.enumerate_all) stop_ = true;
  }

  const ConstraintSystem& cs_;
  const SearchOptions& options_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::size_t>> var_contexts_;
  std::vector<std::vector<std::size_t>> partners_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> trail_;
  KSResult result_;
  bool stop_ = false;
};

void require_total(const ConstraintSystem& cs, const Valuation& v) {
  if (v.size() != cs.size()) {
    throw std::invalid_argument("partial assignment: " + std::to_string(v.size()) + " values for " +
                                std::to_string(cs.size()) + " variables");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 1) throw std::invalid_argument("partial assignment: '" + cs.names[i] + "' is not 0 or 1");
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::sat:
      return "SAT";
    case Verdict::unsat:
      return "UNSAT";
    case Verdict::unknown:
      break;
  }
  return "UNKNOWN";
}

ConstraintSystem constraints_of(const RayScenario& s) {
  ConstraintSystem cs;
  for (const auto& r : s.rays) cs.names.push_back(r.name);
  cs.contexts = s.contexts;
  const auto n = s.rays.size();
  std::vector<std::uint8_t> together(n * n, 0);
  for (const auto& c : s.contexts) {
    for (auto a : c) {
      for (auto b : c) together[a * n + b] = 1;
    }
  }
  const auto orth = s.orthogonality();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (orth[a * n + b] && !together[a * n + b]) cs.exclusions.emplace_back(a, b);
    }
  }
  return cs;
}

ConstraintSystem constraints_of(const BlockScenario& s) { return {s.atoms, s.blocks, {}}; }

KSResult solve(const ConstraintSystem& cs, const SearchOptions& options) { return Solver(cs, options).run(); }

KSResult ks_search(const RayScenario& s, const SearchOptions& options) {
  if (s.contexts.empty()) throw ScenarioError("scenario has no contexts");
  return solve(constraints_of(s), options);
}

KSResult ks_search(const BlockScenario& s, const SearchOptions& options) {
  if (s.blocks.empty()) throw ScenarioError("scenario has no contexts");
  return solve(constraints_of(s), options);
}

ValuationCheck verify_valuation(const ConstraintSystem& cs, const Valuation& v) {
  require_total(cs, v);
  for (const auto& c : cs.contexts) {
    std::size_t ones = 0;
    for (auto x : c) ones += v[x];
    if (ones != 1) {
      std::string members;
      for (auto x : c) members += (members.empty() ? "" : ",") + cs.names[x];
      return {false, "context {" + members + "} has " + std::to_string(ones) + " members valued 1"};
    }
  }
  for (const auto& [a, b] : cs.exclusions) {
    if (v[a] && v[b]) return {false, "orthogonal '" + cs.names[a] + "' and '" + cs.names[b] + "' are both 1"};
  }
  return {};
}

ValuationCheck verify_valuation(const RayScenario& s, const Valuation& v) {
  return verify_valuation(constraints_of(s), v);
}

ValuationCheck verify_valuation(const BlockScenario& s, const Valuation& v) {
  return verify_valuation(constraints_of(s), v);
}

ParityResult parity_obstruction(const ConstraintSystem& cs) {
  ParityResult out;
  out.contexts = cs.contexts.size();
  std::vector<std::size_t> count(cs.size(), 0);
  for (const auto& c : cs.contexts) {
    for (auto x : c) ++count[x];
  }
  const auto odd = std::find_if(count.begin(), count.end(), [](auto k) { return k % 2 != 0; });
  if (out.contexts % 2 == 0) {
    out.explanation = "even number of contexts (" + std::to_string(out.contexts) + ")";
  } else if (odd != count.end()) {
    const auto i = static_cast<std::size_t>(odd - count.begin());
    out.explanation = "'" + cs.names[i] + "' lies in " + std::to_string(*odd) + " contexts";
  } else {
    out.applies = true;
    out.explanation = std::to_string(out.contexts) +
                      " contexts each need one 1 (odd total), but every variable lies in an even number of "
                      "contexts (even total)";
  }
  return out;
}

BlockStructure block_structure(const OMLRef& l) {
  BlockStructure bs;
  const auto atoms = l->atoms();
  std::vector<std::size_t> index(l->size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    index[atoms[i]] = i;
    bs.atom_labels.push_back(l->label(atoms[i]));
  }
  for (const auto& block : enumerate_blocks(l)) {
    std::vector<std::size_t> members;
    for (auto a : block.injection.atom_images()) members.push_back(index.at(a));
    bs.blocks.push_back(std::move(members));
    std::vector<Element> elements;
    for (Mask m = 0; m < block.algebra.size(); ++m) elements.push_back(block.injection(m));
    bs.block_elements.push_back(std::move(elements));
  }
  bs.element_count = l->size();
  return bs;
}

BlockStructure block_structure(const PastingResult& pasted, const BlockScenario& s) {
  return {s.atoms, s.blocks, pasted.block_elements, pasted.structure.size()};
}

KSResult global_valuations(const BlockStructure& bs, SearchOptions options) {
  ConstraintSystem cs{bs.atom_labels, bs.blocks, {}};
  auto consistent = [&bs](const Valuation& v) {
    std::vector<std::int8_t> seen(bs.element_count, -1);
    for (std::size_t b = 0; b < bs.blocks.size(); ++b) {
      const auto& block = bs.blocks[b];
      for (Mask m = 0; m < bs.block_elements[b].size(); ++m) {
        std::int8_t x = 0;
        for (std::size_t i = 0; i < block.size(); ++i) {
          if ((m >> i & 1u) && v[block[i]]) x = 1;
        }
        auto& s = seen[bs.block_elements[b][m]];
        if (s != -1 && s != x) return false;
        s = x;
      }
    }
    return true;
  };
  auto extra = std::move(options.accept);
  options.accept = [consistent, extra](const Valuation& v) { return consistent(v) && (!extra || extra(v)); };
  options.enumerate_all = true;
  return solve(cs, options);
}

KSResult global_valuations(const OMLRef& l, SearchOptions options) {
  return global_valuations(block_structure(l), std::move(options));
}

NoninvertibilityReport noninvertibility_witness(const BlockStructure& bs,
                                                const std::optional<ConstraintSystem>& scenario) {
  NoninvertibilityReport rep;
  const auto r = global_valuations(bs);
  rep.valuation_count = r.valuations.size();
  rep.truncated = r.truncated;
  rep.global_section_exists = !r.valuations.empty();
  if (scenario) rep.scenario_agrees = (solve(*scenario).verdict == Verdict::sat) == rep.global_section_exists;
  rep.summary = rep.global_section_exists
                    ? std::to_string(rep.valuation_count) + (rep.truncated ? "+" : "") +
                          " global two-valued assignments; the structure does not witness non-invertibility"
                    : "no global two-valued assignment: no Boolean-valued global section exists";
  return rep;
}

NoninvertibilityReport noninvertibility_witness(const OMLRef& l) { return noninvertibility_witness(block_structure(l)); }

}  // namespace qframes
