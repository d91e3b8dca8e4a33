#include <algorithm>
#include <map>

#include "fcat/catlang.hpp"

namespace fcat {

namespace {

bool shortlex_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Rule {
  std::vector<int> lhs, rhs;
};

std::vector<int> normalize(std::vector<int> w, const std::vector<Rule>& rules) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : rules) {
      auto it = std::search(w.begin(), w.end(), r.lhs.begin(), r.lhs.end());
      if (it == w.end()) continue;
      const auto at = it - w.begin();
      w.erase(w.begin() + at, w.begin() + at + static_cast<std::ptrdiff_t>(r.lhs.size()));
      w.insert(w.begin() + at, r.rhs.begin(), r.rhs.end());
      changed = true;
      break;
    }
  }
  return w;
}

}  // namespace

FinCat close_generators(const Graph& graph, const std::vector<Relation>& relations, std::size_t max) {
  const int no = static_cast<int>(graph.objects.size());
  std::vector<Rule> rules;
  for (const Relation& r : relations) {
    if (r.lhs.src != r.rhs.src || r.lhs.tgt != r.rhs.tgt)
      throw PreconditionFailed("relation sides have different endpoints");
    if (r.lhs.edges == r.rhs.edges) continue;
    if (shortlex_less(r.lhs.edges, r.rhs.edges))
      rules.push_back({r.rhs.edges, r.lhs.edges});
    else
      rules.push_back({r.lhs.edges, r.rhs.edges});
  }
  std::vector<Word> words;
  std::map<std::pair<int, std::vector<int>>, int> index;
  auto add = [&](int src, int tgt, std::vector<int> edges) {
    edges = normalize(std::move(edges), rules);
    const int s = edges.empty() ? src : graph.edges[edges.front()].src;
    auto key = std::make_pair(s, edges);
    if (index.count(key)) return;
    if (words.size() + 1 > max) throw ClosureExceeded(max);
    index.emplace(key, static_cast<int>(words.size()));
    words.push_back({s, edges.empty() ? tgt : graph.edges[edges.back()].tgt, std::move(edges)});
  };
  for (int x = 0; x < no; ++x) add(x, x, {});
  for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) add(graph.edges[e].src, graph.edges[e].tgt, {e});
  auto concat = [](const Word& first, const Word& then) {
    std::vector<int> w = first.edges;
    w.insert(w.end(), then.edges.begin(), then.edges.end());
    return w;
  };
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Word a = words[i], b = words[j];
      if (a.tgt == b.src) add(a.src, b.tgt, concat(a, b));
      if (b.tgt == a.src) add(b.src, a.tgt, concat(b, a));
    }
  std::vector<int> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Word& x = words[a];
    const Word& y = words[b];
    if (x.edges.empty() != y.edges.empty()) return x.edges.empty();
    if (x.edges.empty()) return x.src < y.src;
    return shortlex_less(x.edges, y.edges);
  });
  std::vector<int> rank(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  FinCat::Builder b;
  for (const auto& o : graph.objects) b.add_object(o);
  for (int w : order) {
    const Word& x = words[w];
    if (x.edges.empty()) {
      b.add_identity(x.src, "id_" + graph.objects[x.src]);
      continue;
    }
    std::string name;
    for (auto it = x.edges.rbegin(); it != x.edges.rend(); ++it) {
      if (!name.empty()) name += ".";
      name += graph.edges[*it].name;
    }
    b.add_morphism(name, x.src, x.tgt);
  }
  for (std::size_t f = 0; f < words.size(); ++f)
    for (std::size_t g = 0; g < words.size(); ++g) {
      if (words[f].tgt != words[g].src) continue;
      auto w = normalize(concat(words[f], words[g]), rules);
      auto it = index.find({w.empty() ? words[f].src : graph.edges[w.front()].src, w});
      if (it == index.end()) throw PreconditionFailed("composite word outside the closure");
      b.set_compose(rank[g], rank[f], rank[it->second]);
    }
  FinCat c = b.build();
  ValidationReport r = validate(c);
  if (!r.ok()) throw PreconditionFailed("relations do not present a category under shortlex rewriting: " + r.summary());
  return c;
}

}  // namespace fcat
