#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qframes::detail {

/// All maximal cliques of a graph given as a row-major 0/1 adjacency
/// matrix (Bron-Kerbosch with pivoting). Each clique is sorted; the list is
/// sorted lexicographically.
class MaximalCliques {
 public:
  MaximalCliques(const std::vector<std::uint8_t>& adj, std::size_t n) : adj_(adj), n_(n) {}

  std::vector<std::vector<std::size_t>> run() {
    std::vector<std::size_t> r, p(n_), x;
    for (std::size_t i = 0; i < n_; ++i) p[i] = i;
    if (n_ > 0) expand(r, std::move(p), std::move(x));
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  bool edge(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }

  void expand(std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
    if (p.empty()) {
      if (x.empty()) {
        auto clique = r;
        std::sort(clique.begin(), clique.end());
        out_.push_back(std::move(clique));
      }
      return;
    }
    std::size_t pivot = p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (auto u : *set) {
        std::size_t deg = 0;
        for (auto v : p) deg += edge(u, v);
        if (deg > best) best = deg, pivot = u;
      }
    }
    std::vector<std::size_t> candidates;
    for (auto v : p) {
      if (!edge(pivot, v)) candidates.push_back(v);
    }
    for (auto v : candidates) {
      std::vector<std::size_t> p2, x2;
      for (auto w : p) {
        if (w != v && edge(v, w)) p2.push_back(w);
      }
      for (auto w : x) {
        if (edge(v, w)) x2.push_back(w);
      }
      r.push_back(v);
      expand(r, std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  const std::vector<std::uint8_t>& adj_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> out_;
};

}  // namespace qframes::detail
