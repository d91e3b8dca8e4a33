#pragma once

// Enumeration of assignments node -> value subject to "value(to) = map[value(from)]"
// constraints. Choosing a node's value forces everything reachable from it, so
// the branching happens only at nodes not reachable from earlier choices.

#include <cstddef>
#include <functional>
#include <vector>

#include "fcat/error.hpp"

namespace fcat::detail {

struct ForcingProblem {
  struct Edge {
    int to;
    const std::vector<int>* map;
  };
  std::vector<int> domain;                // size of each node's domain
  std::vector<std::vector<Edge>> out;      // edges per source node
  std::vector<std::vector<int>> allowed;   // optional per-node mask (empty = all)

  explicit ForcingProblem(int nodes) : domain(nodes, 0), out(nodes) {}
  void add_edge(int from, int to, const std::vector<int>* map) { out[from].push_back({to, map}); }
};

class ForcingSolver {
 public:
  explicit ForcingSolver(const ForcingProblem& p) : p_(p), value_(p.domain.size(), -1) {}

  /// Calls visit for each solution in lexicographic order of choices; stops when
  /// visit returns false. Throws CapExceeded after `cap` solutions.
  void solve(const std::function<bool(const std::vector<int>&)>& visit, std::size_t cap) {
    visit_ = &visit;
    cap_ = cap;
    recurse(0);
  }

 private:
  bool allowed(int node, int v) const {
    if (p_.allowed.empty() || p_.allowed[node].empty()) return true;
    return p_.allowed[node][v] != 0;
  }

  bool assign(int node, int v, std::vector<int>& trail) {
    std::vector<int> stack{node};
    if (!allowed(node, v)) return false;
    value_[node] = v;
    trail.push_back(node);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& e : p_.out[u]) {
        const int w = (*e.map)[value_[u]];
        if (value_[e.to] >= 0) {
          if (value_[e.to] != w) return false;
          continue;
        }
        if (!allowed(e.to, w)) return false;
        value_[e.to] = w;
        trail.push_back(e.to);
        stack.push_back(e.to);
      }
    }
    return true;
  }

  void recurse(std::size_t start) {
    if (stop_) return;
    std::size_t node = start;
    while (node < value_.size() && value_[node] >= 0) ++node;
    if (node == value_.size()) {
      if (++count_ > cap_) throw CapExceeded("too many solutions", cap_);
      if (!(*visit_)(value_)) stop_ = true;
      return;
    }
    for (int v = 0; v < p_.domain[node] && !stop_; ++v) {
      std::vector<int> trail;
      if (assign(static_cast<int>(node), v, trail)) recurse(node + 1);
      for (int t : trail) value_[t] = -1;
    }
  }

  const ForcingProblem& p_;
  std::vector<int> value_;
  const std::function<bool(const std::vector<int>&)>* visit_ = nullptr;
  std::size_t cap_ = 0;
  std::size_t count_ = 0;
  bool stop_ = false;
};

}  // namespace fcat::detail
