#include <algorithm>
#include <map>

#include "fcat/fibration.hpp"

namespace fcat {

ValidationReport validate(const StrictCatDiagram& d) {
  ValidationReport r;
  const FinCat& c = *d.base;
  if (static_cast<int>(d.at.size()) != c.object_count() || static_cast<int>(d.act.size()) != c.morphism_count()) {
    r.add("diagram tables have the wrong size");
    return r;
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    const FinFunctor& a = d.act[f];
    if (!identical(*a.dom, *d.at[c.tgt(f)]) || !identical(*a.cod, *d.at[c.src(f)])) {
      r.add("act('" + c.morphism_name(f) + "') has the wrong endpoints");
      continue;
    }
    for (const auto& v : validate(a).violations) r.add("act('" + c.morphism_name(f) + "'): " + v);
  }
  if (!r.ok()) return r;
  for (int x = 0; x < c.object_count(); ++x)
    if (!identical(d.act[c.identity(x)], identity_functor(d.at[x])))
      r.add("act('" + c.morphism_name(c.identity(x)) + "') is not the identity");
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f : c.in(c.src(g))) {
      const FinFunctor composite = compose(d.act[f], d.act[g]);
      if (composite.obj != d.act[c.compose(g, f)].obj || composite.mor != d.act[c.compose(g, f)].mor)
        r.add("act is not strictly functorial on " + c.morphism_name(g) + "." + c.morphism_name(f));
    }
  return r;
}

Grothendieck grothendieck_strict(const StrictCatDiagram& d) {
  const FinCat& c = *d.base;
  Grothendieck g;
  FinCat::Builder b;
  std::vector<std::vector<int>> obj_index(c.object_count());
  for (int x = 0; x < c.object_count(); ++x)
    for (int a = 0; a < d.at[x]->object_count(); ++a) {
      obj_index[x].push_back(b.add_object("(" + c.object_name(x) + "," + d.at[x]->object_name(a) + ")"));
      g.objects.emplace_back(x, a);
    }
  const int n = static_cast<int>(g.objects.size());
  std::vector<int> mor_tgt;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto [x, a] = g.objects[s];
      const auto [y, bb] = g.objects[t];
      for (int f : c.hom(x, y)) {
        const FinCat& ax = *d.at[x];
        for (int phi : ax.hom(a, d.act[f].obj[bb])) {
          b.add_morphism("(" + c.morphism_name(f) + "," + ax.morphism_name(phi) + "," +
                                           d.at[y]->object_name(bb) + ")",
                                       s, t);
          g.morphisms.emplace_back(f, phi);
          mor_tgt.push_back(t);
        }
      }
    }
  // Morphisms into a fixed target are keyed by (f, phi).
  std::vector<std::map<std::pair<int, int>, int>> into(n);
  for (std::size_t m = 0; m < g.morphisms.size(); ++m) into[mor_tgt[m]][g.morphisms[m]] = static_cast<int>(m);
  for (int s = 0; s < n; ++s) {
    const auto [x, a] = g.objects[s];
    b.set_identity(s, into[s].at({c.identity(x), d.at[x]->identity(a)}));
  }
  std::vector<int> mor_src(g.morphisms.size());
  for (int t = 0; t < n; ++t)
    for (const auto& [key, m] : into[t]) {
      const int x = c.src(key.first);
      const int a = d.at[x]->src(key.second);
      mor_src[m] = obj_index[x][a];
    }
  for (std::size_t m1 = 0; m1 < g.morphisms.size(); ++m1) {
    const auto [f, phi] = g.morphisms[m1];
    const int mid = mor_tgt[m1];
    for (std::size_t m2 = 0; m2 < g.morphisms.size(); ++m2) {
      if (mor_src[m2] != mid) continue;
      const auto [gg, psi] = g.morphisms[m2];
      const int x = c.src(f);
      const int comp_phi = d.at[x]->compose(d.act[f].mor[psi], phi);
      b.set_compose(static_cast<int>(m2), static_cast<int>(m1), into[mor_tgt[m2]].at({c.compose(gg, f), comp_phi}));
    }
  }
  CatRef total = share(b.build());
  g.over = OverBase{FinFunctor{total, d.base, {}, {}}};
  for (const auto& o : g.objects) g.over.proj.obj.push_back(o.first);
  for (const auto& m : g.morphisms) g.over.proj.mor.push_back(m.first);
  g.cleavage.lift.assign(c.morphism_count(), std::vector<int>(n, -1));
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int t = 0; t < n; ++t) {
      const auto [y, bb] = g.objects[t];
      if (y != c.tgt(f)) continue;
      const int a = d.act[f].obj[bb];
      g.cleavage.lift[f][t] = into[t].at({f, d.at[c.src(f)]->identity(a)});
    }
  return g;
}

Straightening straighten_locally_cartesian(const OverBase& p, CleavagePolicy policy, const Cleavage* explicit_cleavage) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  Straightening s;
  for (int x = 0; x < c.object_count(); ++x) s.fibers.push_back(fiber(p, x));
  s.cleavage.lift.assign(c.morphism_count(), std::vector<int>(e.object_count(), -1));
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int t = 0; t < e.object_count(); ++t) {
      if (p.proj.obj[t] != c.tgt(f)) continue;
      int chosen = -1;
      if (c.is_identity(f)) {
        chosen = e.identity(t);
      } else if (policy == CleavagePolicy::explicit_cleavage) {
        if (!explicit_cleavage) throw PreconditionFailed("straighten: explicit policy without a cleavage");
        const int m = explicit_cleavage->lift.at(f).at(t);
        if (m < 0 || e.tgt(m) != t || p.proj.mor[m] != f || !is_locally_cartesian_morphism(p, m).holds)
          throw NotLocallyCartesian("cleavage entry for '" + c.morphism_name(f) + "' into '" + e.object_name(t) +
                                    "' is not a locally cartesian lift");
        chosen = m;
      } else {
        for (int m : e.in(t))
          if (p.proj.mor[m] == f && is_locally_cartesian_morphism(p, m).holds) {
            chosen = m;
            break;
          }
      }
      if (chosen < 0)
        throw NotLocallyCartesian("no locally cartesian lift of '" + c.morphism_name(f) + "' into '" + e.object_name(t) +
                                  "'");
      s.cleavage.lift[f][t] = chosen;
    }

  // The unique l over id with lift∘l = h, as a fiber-local morphism.
  auto factor = [&](int lift, int h) {
    const int x = p.proj.obj[e.src(h)];
    const Subcategory& fx = s.fibers[x];
    for (int l : e.hom(e.src(h), e.src(lift)))
      if (p.proj.mor[l] == c.identity(x) && e.compose(lift, l) == h) return fx.mor_back[l];
    throw NotLocallyCartesian("lift '" + e.morphism_name(lift) + "' does not factor '" + e.morphism_name(h) + "'");
  };

  for (int f = 0; f < c.morphism_count(); ++f) {
    const Subcategory& fx = s.fibers[c.src(f)];
    const Subcategory& fy = s.fibers[c.tgt(f)];
    FinFunctor t{fy.cat, fx.cat, {}, {}};
    for (int z : fy.obj_incl) t.obj.push_back(fx.obj_back[e.src(s.cleavage.lift[f][z])]);
    for (int k : fy.mor_incl) {
      const int lz = s.cleavage.lift[f][e.src(k)];
      const int lz2 = s.cleavage.lift[f][e.tgt(k)];
      t.mor.push_back(factor(lz2, e.compose(k, lz)));
    }
    s.transport.push_back(std::move(t));
  }

  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      const Subcategory& fx = s.fibers[c.src(f)];
      const Subcategory& fy = s.fibers[c.tgt(f)];
      const Subcategory& fz = s.fibers[c.tgt(g)];
      Straightening::Alpha a;
      a.f = f;
      a.g = g;
      a.t = NatTrans{compose(s.transport[f], s.transport[g]), s.transport[gf], {}};
      a.invertible = true;
      for (int zi = 0; zi < fz.cat->object_count(); ++zi) {
        const int z = fz.obj_incl[zi];
        const int lg = s.cleavage.lift[g][z];
        const int gz = fy.obj_incl[s.transport[g].obj[zi]];
        const int lf = s.cleavage.lift[f][gz];
        const int comp = factor(s.cleavage.lift[gf][z], e.compose(lg, lf));
        a.t.components.push_back(comp);
        if (!inverse_of(*fx.cat, comp)) a.invertible = false;
      }
      if (!a.invertible) s.all_invertible = false;
      s.alpha.push_back(std::move(a));
    }
  return s;
}

}  // namespace fcat
