#include "fcat/twisted.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forcing.hpp"
#include "union_find.hpp"

namespace fcat {

namespace {

int hom_position(const FinCat& c, int m) {
  auto h = c.hom(c.src(m), c.tgt(m));
  return static_cast<int>(std::find(h.begin(), h.end(), m) - h.begin());
}

}  // namespace

TwistedArrow twisted_arrow(const CatRef& c) {
  const FinCat& cc = *c;
  const int n = cc.object_count();
  const int mc = cc.morphism_count();
  TwistedArrow tw;
  FinCat::Builder b;
  for (int f = 0; f < mc; ++f) b.add_object(cc.morphism_name(f));
  std::map<std::tuple<int, int, int>, int> index;  // (f, u, v)
  for (int f = 0; f < mc; ++f)
    for (int f2 = 0; f2 < mc; ++f2)
      for (int u : cc.hom(cc.src(f2), cc.src(f)))
        for (int v : cc.hom(cc.tgt(f), cc.tgt(f2))) {
          if (cc.compose(v, cc.compose(f, u)) != f2) continue;
          const int m = b.add_morphism("[" + cc.morphism_name(u) + "," + cc.morphism_name(v) + "]@" + cc.morphism_name(f), f,
                                       f2);
          index[{f, u, v}] = m;
          tw.pairs.emplace_back(u, v);
        }
  for (int f = 0; f < mc; ++f) b.set_identity(f, index.at({f, cc.identity(cc.src(f)), cc.identity(cc.tgt(f))}));
  // (u2, v2)∘(u1, v1) = (u1∘u2, v2∘v1)
  for (const auto& [k1, m1] : index) {
    const auto [f, u1, v1] = k1;
    const int f2 = cc.compose(v1, cc.compose(f, u1));
    for (const auto& [k2, m2] : index) {
      const auto [g, u2, v2] = k2;
      if (g != f2) continue;
      b.set_compose(m2, m1, index.at({f, cc.compose(u1, u2), cc.compose(v2, v1)}));
    }
  }
  tw.cat = share(b.build());
  tw.base = product(opposite(c), c);
  tw.proj = FinFunctor{tw.cat, tw.base, {}, {}};
  for (int f = 0; f < mc; ++f) tw.proj.obj.push_back(cc.src(f) * n + cc.tgt(f));
  for (const auto& [u, v] : tw.pairs) tw.proj.mor.push_back(u * mc + v);
  return tw;
}

bool has_unique_lifts(const FinFunctor& p, std::string* witness) {
  const FinCat& e = *p.dom;
  const FinCat& c = *p.cod;
  for (int t = 0; t < e.object_count(); ++t)
    for (int f : c.out(p.obj[t])) {
      int count = 0;
      for (int m : e.out(t))
        if (p.mor[m] == f) ++count;
      if (count != 1) {
        if (witness)
          *witness = std::to_string(count) + " lifts of '" + c.morphism_name(f) + "' out of '" + e.object_name(t) + "'";
        return false;
      }
    }
  return true;
}

HetTwisted het_twisted(const OverBase& m) {
  const IntervalSides sides = interval_sides(m.base());
  const CatRef& e = m.proj.dom;
  HetTwisted h;
  h.fiber0 = fiber(m, sides.zero);
  h.fiber1 = fiber(m, sides.one);
  TwistedArrow tw = twisted_arrow(e);
  std::vector<int> objs;
  for (int f = 0; f < e->morphism_count(); ++f)
    if (m.proj.obj[e->src(f)] == sides.zero && m.proj.obj[e->tgt(f)] == sides.one) objs.push_back(f);
  Subcategory sub = full_subcategory(tw.cat, objs);
  h.cat = sub.cat;
  h.het = objs;
  for (int k : sub.mor_incl) h.pairs.push_back(tw.pairs[k]);
  h.base = product(opposite(h.fiber0.cat), h.fiber1.cat);
  const int n1 = h.fiber1.cat->object_count();
  const int m1 = h.fiber1.cat->morphism_count();
  h.proj = FinFunctor{h.cat, h.base, {}, {}};
  for (int f : objs) h.proj.obj.push_back(h.fiber0.obj_back[e->src(f)] * n1 + h.fiber1.obj_back[e->tgt(f)]);
  for (const auto& [u, v] : h.pairs) h.proj.mor.push_back(h.fiber0.mor_back[u] * m1 + h.fiber1.mor_back[v]);
  return h;
}

static bool is_twisted_shape(const FinCat& shape, const FinCat& c);

// Limit over Tw(C) straight from its morphisms (u, v): f -> v.f.u; composition is never needed.
EndResult end_of(const CatRef& c, const SetDiagram& t) {
  const FinCat& cc = *c;
  const int n = cc.object_count();
  const int mc = cc.morphism_count();
  if (!is_twisted_shape(*t.shape, cc)) throw ShapeMismatch("end_of: diagram shape is not C^op x C");
  detail::ForcingProblem prob(mc);
  for (int f = 0; f < mc; ++f) prob.domain[f] = t.at[cc.src(f) * n + cc.tgt(f)].size();
  for (int f = 0; f < mc; ++f)
    for (int u : cc.in(cc.src(f)))
      for (int v : cc.out(cc.tgt(f))) {
        if (cc.is_identity(u) && cc.is_identity(v)) continue;
        prob.add_edge(f, cc.compose(v, cc.compose(f, u)), &t.action[u * mc + v]);
      }
  EndResult r;
  detail::ForcingSolver(prob).solve(
      [&](const std::vector<int>& w) {
        std::string name = "(";
        for (int f = 0; f < mc; ++f) {
          if (f) name += ",";
          name += cc.morphism_name(f) + "=" + t.at[cc.src(f) * n + cc.tgt(f)].elements[w[f]];
        }
        name += ")";
        r.set.elements.push_back(std::move(name));
        r.wedges.push_back(w);
        return true;
      },
      kDefaultLimitCap);
  return r;
}

std::vector<std::vector<int>> end_via_equalizer(const CatRef& c, const SetDiagram& t) {
  const FinCat& cc = *c;
  const int n = cc.object_count();
  const int mc = cc.morphism_count();
  std::vector<std::vector<int>> out;
  std::vector<int> fam(n, -1);
  // T(id_x, f)(t_x) == T(f, id_y)(t_y) in T(x, y) for every f: x -> y.
  auto holds = [&](int f) {
    const int x = cc.src(f);
    const int y = cc.tgt(f);
    const int lhs = t.action[cc.identity(x) * mc + f][fam[x]];
    const int rhs = t.action[f * mc + cc.identity(y)][fam[y]];
    return lhs == rhs;
  };
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      out.push_back(fam);
      return;
    }
    for (int v = 0; v < t.at[x * n + x].size(); ++v) {
      fam[x] = v;
      bool ok = true;
      for (int f = 0; f < mc && ok; ++f)
        if (std::max(cc.src(f), cc.tgt(f)) == x && !holds(f)) ok = false;
      if (ok) rec(x + 1);
    }
    fam[x] = -1;
  };
  rec(0);
  return out;
}

namespace {

CoendResult finish_coend(const FinCat& cc, const SetDiagram& t, detail::UnionFind& uf, const std::vector<int>& off) {
  const int n = cc.object_count();
  CoendResult r;
  r.cls.assign(n, {});
  std::map<int, int> class_of_root;
  for (int x = 0; x < n; ++x) {
    const FinSet& s = t.at[x * n + x];
    for (int e = 0; e < s.size(); ++e) {
      const int root = uf.find(off[x] + e);
      auto [it, fresh] = class_of_root.emplace(root, r.set.size());
      std::string tag = cc.object_name(x) + ":" + s.elements[e];
      if (fresh)
        r.set.elements.push_back(std::move(tag));
      else if (tag < r.set.elements[it->second])
        r.set.elements[it->second] = std::move(tag);
      r.cls[x].push_back(it->second);
    }
  }
  return r;
}

}  // namespace

// Index-level check that `shape` is C^op x C (names ignored).
static bool is_twisted_shape(const FinCat& shape, const FinCat& c) {
  const int n = c.object_count(), mc = c.morphism_count();
  if (shape.object_count() != n * n || shape.morphism_count() != mc * mc) return false;
  for (int u = 0; u < mc; ++u)
    for (int v = 0; v < mc; ++v) {
      const int k = u * mc + v;
      if (shape.src(k) != c.tgt(u) * n + c.src(v) || shape.tgt(k) != c.src(u) * n + c.tgt(v)) return false;
    }
  return true;
}

CoendResult coend_of(const CatRef& c, const SetDiagram& t) {
  const FinCat& cc = *c;
  const int n = cc.object_count();
  const int mc = cc.morphism_count();
  if (!is_twisted_shape(*t.shape, *c)) throw ShapeMismatch("coend_of: diagram shape is not C^op x C");
  std::vector<int> off(n + 1, 0);
  for (int x = 0; x < n; ++x) off[x + 1] = off[x] + t.at[x * n + x].size();
  detail::UnionFind uf(off.back());
  for (int f = 0; f < mc; ++f) {
    const int x = cc.src(f);
    const int y = cc.tgt(f);
    const auto& to_x = t.action[f * mc + cc.identity(x)];  // T(y,x) -> T(x,x)
    const auto& to_y = t.action[cc.identity(y) * mc + f];  // T(y,x) -> T(y,y)
    for (int e = 0; e < t.at[y * n + x].size(); ++e) uf.unite(off[x] + to_x[e], off[y] + to_y[e]);
  }
  return finish_coend(cc, t, uf, off);
}

CoendResult coend_via_colimit(const CatRef& c, const SetDiagram& t) {
  const FinCat& cc = *c;
  const int n = cc.object_count();
  const int mc = cc.morphism_count();
  if (!is_twisted_shape(*t.shape, *c)) throw ShapeMismatch("coend_via_colimit: diagram shape is not C^op x C");
  TwistedArrow tw = twisted_arrow(c);
  // Object f: a -> b carries T(b, a); (u, v): f -> f' becomes T(v, u): T(b', a') -> T(b, a).
  SetDiagram d{opposite(tw.cat), {}, {}};
  for (int f = 0; f < mc; ++f) d.at.push_back(t.at[cc.tgt(f) * n + cc.src(f)]);
  for (const auto& [u, v] : tw.pairs) d.action.push_back(t.action[v * mc + u]);
  ColimitResult colim = colimit_set_valued(d);
  // Re-express classes on the diagonal, named by the diagonal tag rule.
  std::vector<int> off(n + 1, 0);
  for (int x = 0; x < n; ++x) off[x + 1] = off[x] + t.at[x * n + x].size();
  detail::UnionFind uf(off.back());
  std::map<int, int> first_of_class;
  for (int x = 0; x < n; ++x)
    for (int e = 0; e < t.at[x * n + x].size(); ++e) {
      const int k = colim.injection[cc.identity(x)][e];
      auto [it, fresh] = first_of_class.emplace(k, off[x] + e);
      if (!fresh) uf.unite(it->second, off[x] + e);
    }
  return finish_coend(cc, t, uf, off);
}

SetDiagram hom_diagram(const FinFunctor& f, const FinFunctor& g) {
  const CatRef& c = f.dom;
  const FinCat& d = *f.cod;
  const int n = c->object_count();
  const int mc = c->morphism_count();
  SetDiagram t{product(opposite(c), c), {}, {}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      FinSet s;
      for (int m : d.hom(f.obj[a], g.obj[b])) s.elements.push_back(d.morphism_name(m));
      t.at.push_back(std::move(s));
    }
  for (int u = 0; u < mc; ++u)
    for (int v = 0; v < mc; ++v) {
      const int a = c->tgt(u);  // u: a' -> a
      const int b = c->src(v);
      Function fn;
      for (int phi : d.hom(f.obj[a], g.obj[b])) fn.push_back(hom_position(d, d.compose(g.mor[v], d.compose(phi, f.mor[u]))));
      t.action.push_back(std::move(fn));
    }
  return t;
}

std::string nat_name(const NatTrans& t) {
  const FinCat& a = *t.src.dom;
  const FinCat& b = *t.src.cod;
  std::vector<std::pair<std::string, std::string>> entries;
  for (int x = 0; x < a.object_count(); ++x) entries.emplace_back(a.object_name(x), b.morphism_name(t.components[x]));
  std::sort(entries.begin(), entries.end());
  std::string s = "{";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += entries[i].first + ":" + entries[i].second;
  }
  return s + "}";
}

NatSet nat_set_via_end(const FinFunctor& f, const FinFunctor& g) {
  const CatRef& c = f.dom;
  const FinCat& d = *f.cod;
  EndResult e = end_of(c, hom_diagram(f, g));
  NatSet out;
  for (const auto& w : e.wedges) {
    NatTrans t{f, g, {}};
    for (int x = 0; x < c->object_count(); ++x) t.components.push_back(d.hom(f.obj[x], g.obj[x])[w[c->identity(x)]]);
    out.set.elements.push_back(nat_name(t));
    out.transformations.push_back(std::move(t));
  }
  return out;
}

NatSet brute_nat_set(const FinFunctor& f, const FinFunctor& g) {
  NatSet out;
  out.transformations = natural_transformations(f, g);
  for (const auto& t : out.transformations) out.set.elements.push_back(nat_name(t));
  return out;
}

FubiniResult end_fubini(const CatRef& c, const CatRef& d, const SetDiagram& t) {
  const CatRef cd = product(c, d);
  FubiniResult r;
  EndResult direct = end_of(cd, t);
  r.direct = direct.wedges.size();

  const int nc = c->object_count(), nd = d->object_count();
  const int mc = c->morphism_count(), md = d->morphism_count();
  const int ncd = nc * nd, mcd = mc * md;
  auto t_obj = [&](int c1, int d1, int c2, int d2) { return (c1 * nd + d1) * ncd + (c2 * nd + d2); };
  auto t_mor = [&](int u, int g1, int v, int g2) { return (u * md + g1) * mcd + (v * md + g2); };

  const CatRef dd = product(opposite(d), d);
  std::vector<EndResult> inner(static_cast<std::size_t>(nc) * nc);
  std::vector<std::map<std::vector<int>, int>> lookup(inner.size());
  for (int c1 = 0; c1 < nc; ++c1)
    for (int c2 = 0; c2 < nc; ++c2) {
      SetDiagram s{dd, {}, {}};
      for (int d1 = 0; d1 < nd; ++d1)
        for (int d2 = 0; d2 < nd; ++d2) s.at.push_back(t.at[t_obj(c1, d1, c2, d2)]);
      for (int g1 = 0; g1 < md; ++g1)
        for (int g2 = 0; g2 < md; ++g2)
          s.action.push_back(t.action[t_mor(c->identity(c1), g1, c->identity(c2), g2)]);
      auto& slot = inner[c1 * nc + c2];
      slot = end_of(d, s);
      for (std::size_t i = 0; i < slot.wedges.size(); ++i) lookup[c1 * nc + c2][slot.wedges[i]] = static_cast<int>(i);
    }
  SetDiagram w{product(opposite(c), c), {}, {}};
  for (const auto& e : inner) w.at.push_back(e.set);
  for (int u = 0; u < mc; ++u)
    for (int v = 0; v < mc; ++v) {
      const int c1 = c->tgt(u), c1b = c->src(u);
      const int c2 = c->src(v), c2b = c->tgt(v);
      const auto& from = inner[c1 * nc + c2];
      Function fn;
      for (const auto& fam : from.wedges) {
        std::vector<int> image(md);
        for (int g = 0; g < md; ++g)
          image[g] = t.action[t_mor(u, d->identity(d->src(g)), v, d->identity(d->tgt(g)))][fam[g]];
        auto it = lookup[c1b * nc + c2b].find(image);
        if (it == lookup[c1b * nc + c2b].end()) {
          r.detail = "inner wedge not carried to a wedge";
          return r;
        }
        fn.push_back(it->second);
      }
      w.action.push_back(std::move(fn));
    }
  EndResult outer = end_of(c, w);
  r.iterated = outer.wedges.size();
  std::set<std::vector<int>> direct_set(direct.wedges.begin(), direct.wedges.end());
  std::set<std::vector<int>> iterated_set;
  for (const auto& om : outer.wedges) {
    std::vector<int> fam(static_cast<std::size_t>(mcd));
    for (int f = 0; f < mc; ++f) {
      const auto& in = inner[c->src(f) * nc + c->tgt(f)].wedges[om[f]];
      for (int g = 0; g < md; ++g) fam[f * md + g] = in[g];
    }
    iterated_set.insert(std::move(fam));
  }
  r.agree = iterated_set == direct_set && iterated_set.size() == outer.wedges.size();
  if (!r.agree) r.detail = "iterated and direct ends differ";
  return r;
}

}  // namespace fcat
