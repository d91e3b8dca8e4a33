#include <algorithm>
#include <map>
#include <set>

#include "fcat/profunctor.hpp"
#include "fcat/shapes.hpp"

namespace fcat {

namespace {

struct HomContext {
  HetTwisted tw;
  Subcategory n0, n1;
  const FinCat* n = nullptr;
};

HomContext make_context(const OverBase& m, const OverBase& n) {
  const IntervalSides sm = interval_sides(m.base());
  const IntervalSides sn = interval_sides(n.base());
  if (sm.arrow < 0 || sn.arrow < 0) throw PreconditionFailed("internal hom: base is not the interval");
  HomContext ctx;
  ctx.tw = het_twisted(m);
  ctx.n0 = fiber(n, sn.zero);
  ctx.n1 = fiber(n, sn.one);
  ctx.n = &n.total();
  return ctx;
}

HetFamilies het_families(const HomContext& ctx, const FinFunctor& f, const FinFunctor& g) {
  const FinCat& tw = *ctx.tw.cat;
  const FinCat& nn = *ctx.n;
  std::vector<std::vector<int>> lists(tw.object_count());
  SetDiagram d{ctx.tw.cat, {}, {}};
  const auto& mf1 = ctx.tw.fiber1;
  // Endpoints of every het morphism come from the projection to M_0^op x M_1.
  const int n1 = mf1.cat->object_count();
  for (int i = 0; i < tw.object_count(); ++i) {
    const int b = ctx.tw.proj.obj[i];
    const int a0 = b / n1, a1 = b % n1;
    const int x = ctx.n0.obj_incl[f.obj[a0]];
    const int y = ctx.n1.obj_incl[g.obj[a1]];
    lists[i].assign(nn.hom(x, y).begin(), nn.hom(x, y).end());
    FinSet s;
    for (int t : lists[i]) s.elements.push_back(nn.morphism_name(t));
    d.at.push_back(std::move(s));
  }
  const int m1 = mf1.cat->morphism_count();
  for (int j = 0; j < tw.morphism_count(); ++j) {
    const int b = ctx.tw.proj.mor[j];
    const int u = b / m1, v = b % m1;  // fiber-local morphisms of M_0 and M_1
    const int fu = ctx.n0.mor_incl[f.mor[u]];
    const int gv = ctx.n1.mor_incl[g.mor[v]];
    const auto& to = lists[tw.tgt(j)];
    Function fn;
    for (int t : lists[tw.src(j)]) {
      const int img = nn.compose(gv, nn.compose(t, fu));
      fn.push_back(static_cast<int>(std::find(to.begin(), to.end(), img) - to.begin()));
    }
    d.action.push_back(std::move(fn));
  }
  LimitResult lim = limit_set_valued(d);
  HetFamilies out;
  out.set = std::move(lim.set);
  for (const auto& fam : lim.families) {
    std::vector<int> mors(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) mors[i] = lists[i][fam[i]];
    out.families.push_back(std::move(mors));
  }
  return out;
}

}  // namespace

HetFamilies hom_set_over_interval(const OverBase& m, const OverBase& n, const FinFunctor& f, const FinFunctor& g) {
  return het_families(make_context(m, n), f, g);
}

InternalHom internal_hom_over_interval(const OverBase& m, const OverBase& n, std::size_t cap) {
  HomContext ctx = make_context(m, n);
  InternalHom ih;
  ih.fun0 = functor_category(ctx.tw.fiber0.cat, ctx.n0.cat, cap);
  ih.fun1 = functor_category(ctx.tw.fiber1.cat, ctx.n1.cat, cap);
  const FinCat& a = *ih.fun0.cat;
  const FinCat& b = *ih.fun1.cat;
  const FinCat& nn = *ctx.n;
  const int k0 = a.object_count(), k1 = b.object_count();
  ih.n0 = k0;
  FinCat::Builder bld;
  for (int i = 0; i < k0; ++i) bld.add_object(a.object_name(i) + "@0");
  for (int j = 0; j < k1; ++j) bld.add_object(b.object_name(j) + "@1");
  for (int u = 0; u < a.morphism_count(); ++u) ih.fun0_mor.push_back(bld.add_morphism(a.morphism_name(u) + "@0", a.src(u), a.tgt(u)));
  for (int v = 0; v < b.morphism_count(); ++v)
    ih.fun1_mor.push_back(bld.add_morphism(b.morphism_name(v) + "@1", k0 + b.src(v), k0 + b.tgt(v)));
  ih.het_families.assign(static_cast<std::size_t>(k0) * k1, {});
  ih.het_morphism.assign(static_cast<std::size_t>(k0) * k1, {});
  std::vector<std::map<std::vector<int>, int>> lookup(static_cast<std::size_t>(k0) * k1);
  for (int i = 0; i < k0; ++i)
    for (int j = 0; j < k1; ++j) {
      HetFamilies hf = het_families(ctx, ih.fun0.functors[i], ih.fun1.functors[j]);
      const std::size_t slot = static_cast<std::size_t>(i) * k1 + j;
      for (std::size_t k = 0; k < hf.families.size(); ++k) {
        const int mor = bld.add_morphism(a.object_name(i) + "->" + b.object_name(j) + "#" + std::to_string(k), i, k0 + j);
        ih.het_morphism[slot].push_back(mor);
        lookup[slot][hf.families[k]] = static_cast<int>(k);
      }
      ih.het_families[slot] = std::move(hf.families);
    }
  for (int i = 0; i < k0; ++i) bld.set_identity(i, ih.fun0_mor[a.identity(i)]);
  for (int j = 0; j < k1; ++j) bld.set_identity(k0 + j, ih.fun1_mor[b.identity(j)]);
  for (int g = 0; g < a.morphism_count(); ++g)
    for (int f : a.in(a.src(g))) bld.set_compose(ih.fun0_mor[g], ih.fun0_mor[f], ih.fun0_mor[a.compose(g, f)]);
  for (int g = 0; g < b.morphism_count(); ++g)
    for (int f : b.in(b.src(g))) bld.set_compose(ih.fun1_mor[g], ih.fun1_mor[f], ih.fun1_mor[b.compose(g, f)]);
  const FinCat& tw = *ctx.tw.cat;
  const int n1 = ctx.tw.fiber1.cat->object_count();
  std::vector<int> end0(tw.object_count()), end1(tw.object_count());
  for (int t = 0; t < tw.object_count(); ++t) {
    end0[t] = ctx.tw.proj.obj[t] / n1;
    end1[t] = ctx.tw.proj.obj[t] % n1;
  }
  for (int i = 0; i < k0; ++i)
    for (int j = 0; j < k1; ++j) {
      const std::size_t slot = static_cast<std::size_t>(i) * k1 + j;
      for (std::size_t k = 0; k < ih.het_families[slot].size(); ++k) {
        const auto& tau = ih.het_families[slot][k];
        // (tau∘beta)_m = tau_m ∘ beta_{m0}
        for (int beta : a.in(i)) {
          const int i2 = a.src(beta);
          const auto& comp = ih.fun0.arrows[beta].components;
          std::vector<int> fam(tau.size());
          for (std::size_t t = 0; t < tau.size(); ++t) fam[t] = nn.compose(tau[t], ctx.n0.mor_incl[comp[end0[t]]]);
          const std::size_t s2 = static_cast<std::size_t>(i2) * k1 + j;
          bld.set_compose(ih.het_morphism[slot][k], ih.fun0_mor[beta], ih.het_morphism[s2][lookup[s2].at(fam)]);
        }
        // (gamma∘tau)_m = gamma_{m1} ∘ tau_m
        for (int gamma : b.out(j)) {
          const int j2 = b.tgt(gamma);
          const auto& comp = ih.fun1.arrows[gamma].components;
          std::vector<int> fam(tau.size());
          for (std::size_t t = 0; t < tau.size(); ++t) fam[t] = nn.compose(ctx.n1.mor_incl[comp[end1[t]]], tau[t]);
          const std::size_t s2 = static_cast<std::size_t>(i) * k1 + j2;
          bld.set_compose(ih.fun1_mor[gamma], ih.het_morphism[slot][k], ih.het_morphism[s2][lookup[s2].at(fam)]);
        }
      }
    }
  CatRef base = m.proj.cod;
  const IntervalSides sides = interval_sides(*base);
  CatRef total = share(bld.build());
  FinFunctor proj{total, base, {}, {}};
  for (int i = 0; i < k0; ++i) proj.obj.push_back(sides.zero);
  for (int j = 0; j < k1; ++j) proj.obj.push_back(sides.one);
  for (int u = 0; u < a.morphism_count(); ++u) proj.mor.push_back(base->identity(sides.zero));
  for (int v = 0; v < b.morphism_count(); ++v) proj.mor.push_back(base->identity(sides.one));
  for (const auto& slot : ih.het_morphism)
    for (std::size_t k = 0; k < slot.size(); ++k) proj.mor.push_back(sides.arrow);
  ih.over = OverBase{proj};
  ih.tw = std::move(ctx.tw);
  return ih;
}

int FiberProduct::find_object(int a, int m) const {
  auto it = std::find(objects.begin(), objects.end(), std::make_pair(a, m));
  return it == objects.end() ? -1 : static_cast<int>(it - objects.begin());
}

int FiberProduct::find_morphism(int alpha, int mu) const {
  auto it = std::find(morphisms.begin(), morphisms.end(), std::make_pair(alpha, mu));
  return it == morphisms.end() ? -1 : static_cast<int>(it - morphisms.begin());
}

FiberProduct pullback_over(const OverBase& pa, const OverBase& pm) {
  if (!identical(pa.base(), pm.base())) throw PreconditionFailed("pullback_over: different bases");
  const FinCat& a = pa.total();
  const FinCat& m = pm.total();
  FiberProduct out;
  FinCat::Builder bld;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < m.object_count(); ++y)
      if (pa.proj.obj[x] == pm.proj.obj[y]) {
        out.objects.emplace_back(x, y);
        bld.add_object("(" + a.object_name(x) + "," + m.object_name(y) + ")");
      }
  const int n = static_cast<int>(out.objects.size());
  std::map<std::pair<int, int>, int> index;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int al : a.hom(out.objects[s].first, out.objects[t].first))
        for (int mu : m.hom(out.objects[s].second, out.objects[t].second)) {
          if (pa.proj.mor[al] != pm.proj.mor[mu]) continue;
          index[{al, mu}] = bld.add_morphism("(" + a.morphism_name(al) + "," + m.morphism_name(mu) + ")", s, t);
          out.morphisms.emplace_back(al, mu);
        }
  for (int s = 0; s < n; ++s)
    bld.set_identity(s, index.at({a.identity(out.objects[s].first), m.identity(out.objects[s].second)}));
  for (const auto& [k1, f] : index)
    for (int al2 : a.out(a.tgt(k1.first)))
      for (int mu2 : m.out(m.tgt(k1.second))) {
        auto it = index.find({al2, mu2});
        if (it == index.end()) continue;
        bld.set_compose(it->second, f, index.at({a.compose(al2, k1.first), m.compose(mu2, k1.second)}));
      }
  CatRef total = share(bld.build());
  FinFunctor proj{total, pa.proj.cod, {}, {}};
  for (const auto& [x, y] : out.objects) proj.obj.push_back(pa.proj.obj[x]);
  for (const auto& [al, mu] : out.morphisms) proj.mor.push_back(pa.proj.mor[al]);
  out.over = OverBase{proj};
  return out;
}

std::vector<FinFunctor> functors_over(const OverBase& p, const OverBase& q, std::size_t cap) {
  if (!identical(p.base(), q.base())) throw PreconditionFailed("functors_over: different bases");
  FunctorSearchOptions opt;
  opt.object_ok = [&](int x, int y) { return p.proj.obj[x] == q.proj.obj[y]; };
  opt.morphism_ok = [&](int f, int g) { return p.proj.mor[f] == q.proj.mor[g]; };
  std::vector<FinFunctor> out;
  for_each_functor(p.proj.dom, q.proj.dom, opt, [&](const FinFunctor& f) {
    if (out.size() == cap) throw CapExceeded("more functors over the base than the cap", cap);
    out.push_back(f);
    return true;
  });
  return out;
}

BijectionWitness exponential_law_check(const OverBase& pa, const OverBase& m, const OverBase& n, std::size_t cap) {
  BijectionWitness w;
  FiberProduct prod = pullback_over(pa, m);
  const std::vector<FinFunctor> left = functors_over(prod.over, n, cap);
  InternalHom ih = internal_hom_over_interval(m, n, cap);
  if (!identical(pa.base(), ih.over.base())) throw PreconditionFailed("exponential_law_check: base is not the interval");
  const std::vector<FinFunctor> right = functors_over(pa, ih.over, cap);
  w.left_count = left.size();
  w.right_count = right.size();
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> right_index;
  for (std::size_t i = 0; i < right.size(); ++i) right_index[{right[i].obj, right[i].mor}] = static_cast<int>(i);

  const FinCat& a = pa.total();
  const IntervalSides sides = interval_sides(pa.base());
  const Subcategory& mf0 = ih.tw.fiber0;
  const Subcategory& mf1 = ih.tw.fiber1;
  const IntervalSides sn = interval_sides(n.base());
  const Subcategory n0 = fiber(n, sn.zero);
  const Subcategory n1 = fiber(n, sn.one);
  const FinCat& h = *ih.over.proj.dom;
  const int k1 = ih.fun1.cat->object_count();

  std::set<int> used;
  for (std::size_t li = 0; li < left.size(); ++li) {
    const FinFunctor& phi = left[li];
    FinFunctor cur{pa.proj.dom, ih.over.proj.dom, {}, {}};
    std::string fail;
    auto on_fiber = [&](int x, const Subcategory& mf, const Subcategory& nf, const FunctorCategory& fc) {
      FinFunctor g{mf.cat, nf.cat, {}, {}};
      for (int o : mf.obj_incl) g.obj.push_back(nf.obj_back[phi.obj[prod.find_object(x, o)]]);
      for (int u : mf.mor_incl) g.mor.push_back(nf.mor_back[phi.mor[prod.find_morphism(a.identity(x), u)]]);
      return fc.find_functor(g);
    };
    for (int x = 0; x < a.object_count() && fail.empty(); ++x) {
      const bool zero = pa.proj.obj[x] == sides.zero;
      const int idx = zero ? on_fiber(x, mf0, n0, ih.fun0) : on_fiber(x, mf1, n1, ih.fun1);
      if (idx < 0) fail = "curried object '" + a.object_name(x) + "' is not a functor of the fiber";
      cur.obj.push_back(zero ? idx : ih.n0 + idx);
    }
    for (int al = 0; al < a.morphism_count() && fail.empty(); ++al) {
      const int s = a.src(al), t = a.tgt(al);
      const int fs = cur.obj[s], ft = cur.obj[t];
      int found = -1;
      if (pa.proj.mor[al] == sides.arrow) {
        std::vector<int> fam;
        for (int het : ih.tw.het) fam.push_back(phi.mor[prod.find_morphism(al, het)]);
        const std::size_t slot = static_cast<std::size_t>(fs) * k1 + (ft - ih.n0);
        const auto& fams = ih.het_families[slot];
        auto it = std::find(fams.begin(), fams.end(), fam);
        if (it != fams.end()) found = ih.het_morphism[slot][it - fams.begin()];
      } else {
        const bool zero = pa.proj.obj[s] == sides.zero;
        const Subcategory& mf = zero ? mf0 : mf1;
        const Subcategory& nf = zero ? n0 : n1;
        std::vector<int> comp;
        for (int o : mf.obj_incl) comp.push_back(nf.mor_back[phi.mor[prod.find_morphism(al, m.total().identity(o))]]);
        const auto& fc = zero ? ih.fun0 : ih.fun1;
        const auto& mors = zero ? ih.fun0_mor : ih.fun1_mor;
        for (int k : h.hom(fs, ft)) {
          const int local = static_cast<int>(std::find(mors.begin(), mors.end(), k) - mors.begin());
          if (local < static_cast<int>(mors.size()) && fc.arrows[local].components == comp) found = k;
        }
      }
      if (found < 0) fail = "curried morphism '" + a.morphism_name(al) + "' has no counterpart";
      cur.mor.push_back(found);
    }
    if (fail.empty()) {
      auto it = right_index.find({cur.obj, cur.mor});
      if (it == right_index.end()) {
        fail = "curried map is not a functor over the base";
      } else if (!used.insert(it->second).second) {
        fail = "two maps curry to the same map";
      } else {
        w.pairs.emplace_back(static_cast<int>(li), it->second);
      }
    }
    if (!fail.empty()) {
      w.detail = "map #" + std::to_string(li) + ": " + fail;
      return w;
    }
  }
  if (w.left_count != w.right_count) {
    w.detail = "counts differ: " + std::to_string(w.left_count) + " vs " + std::to_string(w.right_count);
    return w;
  }
  w.ok = true;
  w.detail = std::to_string(w.left_count) + " maps on each side";
  return w;
}

}  // namespace fcat
