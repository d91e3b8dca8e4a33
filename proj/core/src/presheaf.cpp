#include "fcat/presheaf.hpp"

#include <algorithm>
#include <map>

#include "forcing.hpp"
#include "union_find.hpp"

namespace fcat {

int FinSet::index_of(const std::string& e) const {
  auto it = std::find(elements.begin(), elements.end(), e);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

FinSet product_set(const FinSet& a, const FinSet& b) {
  FinSet s;
  for (const auto& x : a.elements)
    for (const auto& y : b.elements) s.elements.push_back("(" + x + "," + y + ")");
  return s;
}

namespace {

ValidationReport validate_valued(const FinCat& c, const std::vector<FinSet>& at, const std::vector<Function>& action,
                                 bool covariant) {
  ValidationReport r;
  if (static_cast<int>(at.size()) != c.object_count() || static_cast<int>(action.size()) != c.morphism_count()) {
    r.add("value or action table has the wrong size");
    return r;
  }
  for (int x = 0; x < c.object_count(); ++x) {
    auto sorted = at[x].elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      r.add("duplicate element at '" + c.object_name(x) + "'");
  }
  auto from = [&](int m) { return covariant ? c.src(m) : c.tgt(m); };
  auto to = [&](int m) { return covariant ? c.tgt(m) : c.src(m); };
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (static_cast<int>(action[m].size()) != at[from(m)].size()) {
      r.add("action of '" + c.morphism_name(m) + "' has the wrong domain");
      continue;
    }
    for (int v : action[m])
      if (v < 0 || v >= at[to(m)].size()) {
        r.add("action of '" + c.morphism_name(m) + "' leaves its codomain");
        break;
      }
  }
  if (!r.ok()) return r;
  for (int x = 0; x < c.object_count(); ++x) {
    const auto& f = action[c.identity(x)];
    for (int i = 0; i < static_cast<int>(f.size()); ++i)
      if (f[i] != i) {
        r.add("identity of '" + c.object_name(x) + "' acts non-trivially");
        break;
      }
  }
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f : c.in(c.src(g))) {
      const int h = c.compose(g, f);
      // covariant: act(h) = act(g)∘act(f); contravariant: act(h) = act(f)∘act(g)
      const auto& first = covariant ? action[f] : action[g];
      const auto& second = covariant ? action[g] : action[f];
      for (int i = 0; i < static_cast<int>(first.size()); ++i)
        if (second[first[i]] != action[h][i]) {
          r.add("functoriality fails on " + c.morphism_name(g) + "." + c.morphism_name(f));
          break;
        }
    }
  return r;
}

int hom_position(const FinCat& c, int m) {
  auto h = c.hom(c.src(m), c.tgt(m));
  return static_cast<int>(std::find(h.begin(), h.end(), m) - h.begin());
}

}  // namespace

ValidationReport validate(const Presheaf& p) { return validate_valued(*p.base, p.at, p.action, false); }
ValidationReport validate(const SetDiagram& d) { return validate_valued(*d.shape, d.at, d.action, true); }

SetDiagram as_diagram(const Presheaf& p) { return SetDiagram{opposite(p.base), p.at, p.action}; }

SetDiagram restrict_diagram(const FinFunctor& f, const SetDiagram& d) {
  SetDiagram out{f.dom, {}, {}};
  for (int x : f.obj) out.at.push_back(d.at[x]);
  for (int m : f.mor) out.action.push_back(d.action[m]);
  return out;
}

LimitResult limit_set_valued(const SetDiagram& d, std::size_t cap) {
  const FinCat& c = *d.shape;
  detail::ForcingProblem prob(c.object_count());
  for (int x = 0; x < c.object_count(); ++x) prob.domain[x] = d.at[x].size();
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) prob.add_edge(c.src(m), c.tgt(m), &d.action[m]);
  LimitResult r;
  detail::ForcingSolver solver(prob);
  solver.solve(
      [&](const std::vector<int>& v) {
        std::string name = "(";
        for (int x = 0; x < c.object_count(); ++x) {
          if (x) name += ",";
          name += c.object_name(x) + "=" + d.at[x].elements[v[x]];
        }
        name += ")";
        r.set.elements.push_back(std::move(name));
        r.families.push_back(v);
        return true;
      },
      cap);
  return r;
}

ColimitResult colimit_set_valued(const SetDiagram& d) {
  const FinCat& c = *d.shape;
  std::vector<int> offset(c.object_count() + 1, 0);
  for (int x = 0; x < c.object_count(); ++x) offset[x + 1] = offset[x] + d.at[x].size();
  detail::UnionFind uf(offset.back());
  for (int m = 0; m < c.morphism_count(); ++m)
    for (int e = 0; e < d.at[c.src(m)].size(); ++e) uf.unite(offset[c.src(m)] + e, offset[c.tgt(m)] + d.action[m][e]);
  ColimitResult r;
  std::map<int, int> class_of_root;
  std::vector<std::string> best;
  r.injection.assign(c.object_count(), {});
  for (int x = 0; x < c.object_count(); ++x) {
    r.injection[x].assign(d.at[x].size(), -1);
    for (int e = 0; e < d.at[x].size(); ++e) {
      const int root = uf.find(offset[x] + e);
      auto [it, fresh] = class_of_root.emplace(root, static_cast<int>(best.size()));
      std::string tag = c.object_name(x) + ":" + d.at[x].elements[e];
      if (fresh)
        best.push_back(std::move(tag));
      else if (tag < best[it->second])
        best[it->second] = std::move(tag);
      r.injection[x][e] = it->second;
    }
  }
  r.set.elements = std::move(best);
  return r;
}

Presheaf yoneda(const CatRef& c, int x) {
  if (x < 0 || x >= c->object_count()) throw UnknownObject("yoneda: object index out of range");
  Presheaf p{c, {}, {}};
  for (int a = 0; a < c->object_count(); ++a) {
    FinSet s;
    for (int m : c->hom(a, x)) s.elements.push_back(c->morphism_name(m));
    p.at.push_back(std::move(s));
  }
  for (int m = 0; m < c->morphism_count(); ++m) {
    Function f;
    for (int phi : c->hom(c->tgt(m), x)) f.push_back(hom_position(*c, c->compose(phi, m)));
    p.action.push_back(std::move(f));
  }
  return p;
}

Presheaf constant_presheaf(const CatRef& c, const FinSet& s) {
  Presheaf p{c, std::vector<FinSet>(c->object_count(), s), {}};
  Function id(s.size());
  for (int i = 0; i < s.size(); ++i) id[i] = i;
  p.action.assign(c->morphism_count(), id);
  return p;
}

Presheaf empty_presheaf(const CatRef& c) { return constant_presheaf(c, FinSet{}); }

namespace {

std::vector<int> cell_offsets(const Presheaf& p) {
  std::vector<int> off(p.at.size() + 1, 0);
  for (std::size_t x = 0; x < p.at.size(); ++x) off[x + 1] = off[x] + p.at[x].size();
  return off;
}

}  // namespace

PresheafHom presheaf_hom(const Presheaf& p, const Presheaf& q, std::size_t cap) {
  const FinCat& c = *p.base;
  const auto off = cell_offsets(p);
  detail::ForcingProblem prob(off.back());
  for (int x = 0; x < c.object_count(); ++x)
    for (int e = 0; e < p.at[x].size(); ++e) prob.domain[off[x] + e] = q.at[x].size();
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const int a = c.src(m);
    const int b = c.tgt(m);
    for (int e = 0; e < p.at[b].size(); ++e) prob.add_edge(off[b] + e, off[a] + p.action[m][e], &q.action[m]);
  }
  PresheafHom r;
  detail::ForcingSolver solver(prob);
  solver.solve(
      [&](const std::vector<int>& v) {
        PresheafMap phi(c.object_count());
        std::string name = "{";
        bool first = true;
        for (int x = 0; x < c.object_count(); ++x)
          for (int e = 0; e < p.at[x].size(); ++e) {
            phi[x].push_back(v[off[x] + e]);
            if (!first) name += ",";
            first = false;
            name += c.object_name(x) + ":" + p.at[x].elements[e] + "->" + q.at[x].elements[v[off[x] + e]];
          }
        name += "}";
        r.set.elements.push_back(std::move(name));
        r.maps.push_back(std::move(phi));
        return true;
      },
      cap);
  return r;
}

bool is_presheaf_map(const Presheaf& p, const Presheaf& q, const PresheafMap& phi) {
  const FinCat& c = *p.base;
  if (static_cast<int>(phi.size()) != c.object_count()) return false;
  for (int x = 0; x < c.object_count(); ++x) {
    if (static_cast<int>(phi[x].size()) != p.at[x].size()) return false;
    for (int v : phi[x])
      if (v < 0 || v >= q.at[x].size()) return false;
  }
  for (int m = 0; m < c.morphism_count(); ++m) {
    const int a = c.src(m);
    const int b = c.tgt(m);
    for (int e = 0; e < p.at[b].size(); ++e)
      if (phi[a][p.action[m][e]] != q.action[m][phi[b][e]]) return false;
  }
  return true;
}

std::optional<PresheafMap> find_presheaf_iso(const Presheaf& p, const Presheaf& q) {
  const FinCat& c = *p.base;
  for (int x = 0; x < c.object_count(); ++x)
    if (p.at[x].size() != q.at[x].size()) return std::nullopt;
  const auto off = cell_offsets(p);
  detail::ForcingProblem prob(off.back());
  for (int x = 0; x < c.object_count(); ++x)
    for (int e = 0; e < p.at[x].size(); ++e) prob.domain[off[x] + e] = q.at[x].size();
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    for (int e = 0; e < p.at[c.tgt(m)].size(); ++e)
      prob.add_edge(off[c.tgt(m)] + e, off[c.src(m)] + p.action[m][e], &q.action[m]);
  }
  std::optional<PresheafMap> found;
  detail::ForcingSolver solver(prob);
  solver.solve(
      [&](const std::vector<int>& v) {
        PresheafMap phi(c.object_count());
        for (int x = 0; x < c.object_count(); ++x) {
          std::vector<char> hit(q.at[x].size(), 0);
          for (int e = 0; e < p.at[x].size(); ++e) {
            const int w = v[off[x] + e];
            if (hit[w]) return true;
            hit[w] = 1;
            phi[x].push_back(w);
          }
        }
        found = std::move(phi);
        return false;
      },
      kDefaultLimitCap);
  return found;
}

Presheaf restrict(const FinFunctor& f, const Presheaf& p) {
  Presheaf out{f.dom, {}, {}};
  for (int x : f.obj) out.at.push_back(p.at[x]);
  for (int m : f.mor) out.action.push_back(p.action[m]);
  return out;
}

Presheaf left_kan(const FinFunctor& f, const Presheaf& p) {
  const CatRef& dcat = f.cod;
  const CatRef unit = [] {
    FinCat::Builder b;
    b.add_object("*");
    b.add_identity(0, "id_*");
    return share(b.build());
  }();
  struct Slice {
    Comma comma;
    ColimitResult colim;
  };
  std::vector<Slice> slices;
  for (int d = 0; d < dcat->object_count(); ++d) {
    Comma cm = comma(constant_functor(unit, dcat, d), f);
    SetDiagram diag{opposite(cm.cat), {}, {}};
    for (const auto& o : cm.objects) diag.at.push_back(p.at[o.b]);
    for (const auto& m : cm.morphisms) diag.action.push_back(p.action[m.v]);
    ColimitResult colim = colimit_set_valued(diag);
    slices.push_back({std::move(cm), std::move(colim)});
  }
  Presheaf out{dcat, {}, {}};
  for (const auto& s : slices) out.at.push_back(s.colim.set);
  for (int m = 0; m < dcat->morphism_count(); ++m) {
    const int d1 = dcat->src(m);
    const int d = dcat->tgt(m);
    const Slice& from = slices[d];
    const Slice& to = slices[d1];
    Function act(from.colim.set.size(), -1);
    for (std::size_t o = 0; o < from.comma.objects.size(); ++o) {
      const auto& obj = from.comma.objects[o];
      const int target = to.comma.find_object(0, obj.b, dcat->compose(obj.h, m));
      for (int e = 0; e < p.at[obj.b].size(); ++e) {
        const int cls = from.colim.injection[o][e];
        if (act[cls] < 0) act[cls] = to.colim.injection[target][e];
      }
    }
    out.action.push_back(std::move(act));
  }
  return out;
}

}  // namespace fcat
