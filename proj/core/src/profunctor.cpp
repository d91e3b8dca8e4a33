#include "fcat/profunctor.hpp"

#include <array>
#include <algorithm>
#include <map>
#include <set>

#include "fcat/shapes.hpp"
#include "union_find.hpp"

namespace fcat {

namespace {

int position(std::span<const int> v, int m) { return static_cast<int>(std::find(v.begin(), v.end(), m) - v.begin()); }
int position(const std::vector<int>& v, int m) {
  return static_cast<int>(std::find(v.begin(), v.end(), m) - v.begin());
}

bool is_identity_fn(const Function& f) {
  for (int i = 0; i < static_cast<int>(f.size()); ++i)
    if (f[i] != i) return false;
  return true;
}

// Appends "@<tag>" to names that occur more than once.
std::vector<std::string> disambiguate(std::vector<std::string> names, const std::vector<std::string>& tags) {
  std::map<std::string, int> count;
  for (const auto& n : names) ++count[n];
  for (std::size_t i = 0; i < names.size(); ++i)
    if (count[names[i]] > 1) names[i] += "@" + tags[i];
  return names;
}

}  // namespace

ValidationReport validate(const Profunctor& h) {
  ValidationReport r;
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const int nc = c.object_count(), nd = d.object_count();
  if (static_cast<int>(h.at.size()) != nc * nd || static_cast<int>(h.lact.size()) != c.morphism_count() * nd ||
      static_cast<int>(h.ract.size()) != d.morphism_count() * nc) {
    r.add("profunctor tables have the wrong size");
    return r;
  }
  auto check_fn = [&](const Function& fn, const FinSet& from, const FinSet& to, const std::string& what) {
    if (static_cast<int>(fn.size()) != from.size()) {
      r.add(what + " has the wrong domain");
      return;
    }
    for (int v : fn)
      if (v < 0 || v >= to.size()) {
        r.add(what + " leaves its codomain");
        return;
      }
  };
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y)
      check_fn(h.left_action(u, y), h.value(c.tgt(u), y), h.value(c.src(u), y),
               "left action of '" + c.morphism_name(u) + "' at '" + d.object_name(y) + "'");
  for (int v = 0; v < d.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x)
      check_fn(h.right_action(v, x), h.value(x, d.src(v)), h.value(x, d.tgt(v)),
               "right action of '" + d.morphism_name(v) + "' at '" + c.object_name(x) + "'");
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) {
      auto sorted = h.value(x, y).elements;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        r.add("duplicate element at ('" + c.object_name(x) + "', '" + d.object_name(y) + "')");
    }
  if (!r.ok()) return r;
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) {
      if (!is_identity_fn(h.left_action(c.identity(x), y))) r.add("identity of '" + c.object_name(x) + "' acts non-trivially");
      if (!is_identity_fn(h.right_action(d.identity(y), x))) r.add("identity of '" + d.object_name(y) + "' acts non-trivially");
    }
  // lact(g∘f) = lact(f)∘lact(g); ract(g∘f) = ract(g)∘ract(f)
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f : c.in(c.src(g)))
      for (int y = 0; y < nd; ++y) {
        const auto& lg = h.left_action(g, y);
        const auto& lf = h.left_action(f, y);
        const auto& lgf = h.left_action(c.compose(g, f), y);
        for (std::size_t i = 0; i < lg.size(); ++i)
          if (lf[lg[i]] != lgf[i]) {
            r.add("left action not functorial on " + c.morphism_name(g) + "." + c.morphism_name(f));
            break;
          }
      }
  for (int g = 0; g < d.morphism_count(); ++g)
    for (int f : d.in(d.src(g)))
      for (int x = 0; x < nc; ++x) {
        const auto& rg = h.right_action(g, x);
        const auto& rf = h.right_action(f, x);
        const auto& rgf = h.right_action(d.compose(g, f), x);
        for (std::size_t i = 0; i < rf.size(); ++i)
          if (rg[rf[i]] != rgf[i]) {
            r.add("right action not functorial on " + d.morphism_name(g) + "." + d.morphism_name(f));
            break;
          }
      }
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int v = 0; v < d.morphism_count(); ++v) {
      const auto& l1 = h.left_action(u, d.src(v));
      const auto& r1 = h.right_action(v, c.src(u));
      const auto& r2 = h.right_action(v, c.tgt(u));
      const auto& l2 = h.left_action(u, d.tgt(v));
      for (std::size_t i = 0; i < l1.size(); ++i)
        if (r1[l1[i]] != l2[r2[i]]) {
          r.add("actions of '" + c.morphism_name(u) + "' and '" + d.morphism_name(v) + "' do not commute");
          break;
        }
    }
  return r;
}

Profunctor hom_profunctor(const CatRef& c) {
  FinFunctor id = identity_functor(c);
  return representable_profunctor(id);
}

Profunctor representable_profunctor(const FinFunctor& f) {
  const FinCat& c = *f.dom;
  const FinCat& d = *f.cod;
  const int nc = c.object_count(), nd = d.object_count();
  Profunctor h{f.dom, f.cod, {}, {}, {}};
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) {
      FinSet s;
      for (int m : d.hom(f.obj[x], y)) s.elements.push_back(d.morphism_name(m));
      h.at.push_back(std::move(s));
    }
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) {
      Function fn;
      for (int m : d.hom(f.obj[c.tgt(u)], y)) fn.push_back(position(d.hom(f.obj[c.src(u)], y), d.compose(m, f.mor[u])));
      h.lact.push_back(std::move(fn));
    }
  for (int v = 0; v < d.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) {
      Function fn;
      for (int m : d.hom(f.obj[x], d.src(v))) fn.push_back(position(d.hom(f.obj[x], d.tgt(v)), d.compose(v, m)));
      h.ract.push_back(std::move(fn));
    }
  return h;
}

Profunctor empty_profunctor(const CatRef& c, const CatRef& d) {
  Profunctor h{c, d, {}, {}, {}};
  h.at.assign(static_cast<std::size_t>(c->object_count()) * d->object_count(), FinSet{});
  h.lact.assign(static_cast<std::size_t>(c->morphism_count()) * d->object_count(), Function{});
  h.ract.assign(static_cast<std::size_t>(d->morphism_count()) * c->object_count(), Function{});
  return h;
}

Presheaf as_presheaf(const Profunctor& h) {
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  Presheaf p{product(h.left, opposite(h.right)), h.at, {}};
  // (u, v): (c, d) -> (c', d') with u: c -> c', v: d' -> d; acts H(c', d') -> H(c, d).
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int v = 0; v < d.morphism_count(); ++v) {
      const auto& l = h.left_action(u, d.src(v));
      const auto& r = h.right_action(v, c.src(u));
      Function fn;
      for (int e : l) fn.push_back(r[e]);
      p.action.push_back(std::move(fn));
    }
  return p;
}

bool is_profunctor_map(const Profunctor& h, const Profunctor& k, const ProfunctorMap& phi) {
  if (!identical(*h.left, *k.left) || !identical(*h.right, *k.right)) return false;
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const int nc = c.object_count(), nd = d.object_count();
  if (static_cast<int>(phi.size()) != nc * nd) return false;
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) {
      const auto& fn = phi[x * nd + y];
      if (static_cast<int>(fn.size()) != h.value(x, y).size()) return false;
      for (int v : fn)
        if (v < 0 || v >= k.value(x, y).size()) return false;
    }
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) {
      const auto& lh = h.left_action(u, y);
      const auto& lk = k.left_action(u, y);
      for (std::size_t i = 0; i < lh.size(); ++i)
        if (phi[c.src(u) * nd + y][lh[i]] != lk[phi[c.tgt(u) * nd + y][i]]) return false;
    }
  for (int v = 0; v < d.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) {
      const auto& rh = h.right_action(v, x);
      const auto& rk = k.right_action(v, x);
      for (std::size_t i = 0; i < rh.size(); ++i)
        if (phi[x * nd + d.tgt(v)][rh[i]] != rk[phi[x * nd + d.src(v)][i]]) return false;
    }
  return true;
}

bool is_bijective(const Profunctor& h, const Profunctor& k, const ProfunctorMap& phi) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (static_cast<int>(phi[i].size()) != k.at[i].size() || h.at[i].size() != k.at[i].size()) return false;
    std::vector<char> hit(k.at[i].size(), 0);
    for (int v : phi[i]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

std::optional<ProfunctorMap> find_profunctor_iso(const Profunctor& h, const Profunctor& k) {
  if (!identical(*h.left, *k.left) || !identical(*h.right, *k.right)) return std::nullopt;
  Presheaf p = as_presheaf(h);
  Presheaf q = as_presheaf(k);
  q.base = p.base;
  return find_presheaf_iso(p, q);
}

Collage collage(const Profunctor& h) {
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const int nc = c.object_count(), nd = d.object_count();
  Collage out;
  CatRef base = shapes::interval();
  const IntervalSides sides = interval_sides(*base);
  out.zero = sides.zero;
  out.one = sides.one;
  std::vector<std::string> onames, otags;
  for (int x = 0; x < nc; ++x) {
    onames.push_back(c.object_name(x));
    otags.push_back("0");
  }
  for (int y = 0; y < nd; ++y) {
    onames.push_back(d.object_name(y));
    otags.push_back("1");
  }
  onames = disambiguate(onames, otags);
  FinCat::Builder b;
  for (const auto& n : onames) b.add_object(n);
  for (int x = 0; x < nc; ++x) out.left_obj.push_back(x);
  for (int y = 0; y < nd; ++y) out.right_obj.push_back(nc + y);
  std::vector<std::string> mnames, mtags;
  std::vector<std::pair<int, int>> ends;
  std::vector<int> part;
  for (int u = 0; u < c.morphism_count(); ++u) {
    mnames.push_back(c.morphism_name(u));
    mtags.push_back("0");
    ends.emplace_back(c.src(u), c.tgt(u));
    part.push_back(0);
  }
  for (int v = 0; v < d.morphism_count(); ++v) {
    mnames.push_back(d.morphism_name(v));
    mtags.push_back("1");
    ends.emplace_back(nc + d.src(v), nc + d.tgt(v));
    part.push_back(1);
  }
  out.het.assign(static_cast<std::size_t>(nc) * nd, {});
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y)
      for (const auto& el : h.value(x, y).elements) {
        mnames.push_back(el);
        mtags.push_back(c.object_name(x) + "," + d.object_name(y));
        ends.emplace_back(x, nc + y);
        part.push_back(2);
      }
  mnames = disambiguate(mnames, mtags);
  for (std::size_t i = 0; i < mnames.size(); ++i) b.add_morphism(mnames[i], ends[i].first, ends[i].second);
  const int mc = c.morphism_count(), md = d.morphism_count();
  for (int u = 0; u < mc; ++u) out.left_mor.push_back(u);
  for (int v = 0; v < md; ++v) out.right_mor.push_back(mc + v);
  {
    int next = mc + md;
    for (int x = 0; x < nc; ++x)
      for (int y = 0; y < nd; ++y)
        for (int e = 0; e < h.value(x, y).size(); ++e) out.het[x * nd + y].push_back(next++);
  }
  for (int x = 0; x < nc; ++x) b.set_identity(x, c.identity(x));
  for (int y = 0; y < nd; ++y) b.set_identity(nc + y, mc + d.identity(y));
  for (int g = 0; g < mc; ++g)
    for (int f : c.in(c.src(g))) b.set_compose(g, f, c.compose(g, f));
  for (int g = 0; g < md; ++g)
    for (int f : d.in(d.src(g))) b.set_compose(mc + g, mc + f, mc + d.compose(g, f));
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y)
      for (int e = 0; e < h.value(x, y).size(); ++e) {
        const int het = out.het[x * nd + y][e];
        for (int u : c.in(x)) b.set_compose(het, u, out.het[c.src(u) * nd + y][h.left_action(u, y)[e]]);
        for (int v : d.out(y)) b.set_compose(mc + v, het, out.het[x * nd + d.tgt(v)][h.right_action(v, x)[e]]);
      }
  CatRef total = share(b.build());
  FinFunctor proj{total, base, {}, {}};
  for (int x = 0; x < nc; ++x) proj.obj.push_back(sides.zero);
  for (int y = 0; y < nd; ++y) proj.obj.push_back(sides.one);
  for (int p : part)
    proj.mor.push_back(p == 0 ? base->identity(sides.zero) : p == 1 ? base->identity(sides.one) : sides.arrow);
  out.over = OverBase{proj};
  return out;
}

Extraction extract(const OverBase& m) {
  const IntervalSides sides = interval_sides(m.base());
  if (sides.arrow < 0) throw PreconditionFailed("extract_profunctor: base is not the interval");
  const FinCat& e = m.total();
  Extraction out;
  out.fiber0 = fiber(m, sides.zero);
  out.fiber1 = fiber(m, sides.one);
  const FinCat& c = *out.fiber0.cat;
  const FinCat& d = *out.fiber1.cat;
  const int nc = c.object_count(), nd = d.object_count();
  out.prof = Profunctor{out.fiber0.cat, out.fiber1.cat, {}, {}, {}};
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) {
      std::vector<int> hs(e.hom(out.fiber0.obj_incl[x], out.fiber1.obj_incl[y]).begin(),
                          e.hom(out.fiber0.obj_incl[x], out.fiber1.obj_incl[y]).end());
      FinSet s;
      for (int h : hs) s.elements.push_back(e.morphism_name(h));
      out.prof.at.push_back(std::move(s));
      out.het.push_back(std::move(hs));
    }
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) {
      const int uu = out.fiber0.mor_incl[u];
      Function fn;
      for (int h : out.het[c.tgt(u) * nd + y]) fn.push_back(position(out.het[c.src(u) * nd + y], e.compose(h, uu)));
      out.prof.lact.push_back(std::move(fn));
    }
  for (int v = 0; v < d.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) {
      const int vv = out.fiber1.mor_incl[v];
      Function fn;
      for (int h : out.het[x * nd + d.src(v)]) fn.push_back(position(out.het[x * nd + d.tgt(v)], e.compose(vv, h)));
      out.prof.ract.push_back(std::move(fn));
    }
  return out;
}

Profunctor reindex_left(const Profunctor& k, const CatRef& left) {
  const FinCat& old = *k.left;
  const FinCat& nw = *left;
  if (!structurally_equal(old, nw)) throw MiddleMismatch("reindex_left: categories are not structurally equal");
  const int ne = k.right->object_count();
  std::vector<int> obj(nw.object_count()), mor(nw.morphism_count());
  for (int x = 0; x < nw.object_count(); ++x) obj[x] = old.object(nw.object_name(x));
  for (int u = 0; u < nw.morphism_count(); ++u) mor[u] = old.morphism(nw.morphism_name(u));
  Profunctor out{left, k.right, {}, {}, {}};
  for (int x = 0; x < nw.object_count(); ++x)
    for (int y = 0; y < ne; ++y) out.at.push_back(k.value(obj[x], y));
  for (int u = 0; u < nw.morphism_count(); ++u)
    for (int y = 0; y < ne; ++y) out.lact.push_back(k.left_action(mor[u], y));
  for (int v = 0; v < k.right->morphism_count(); ++v)
    for (int x = 0; x < nw.object_count(); ++x) out.ract.push_back(k.right_action(v, obj[x]));
  return out;
}

CompositeDetail compose_profunctors_detail(const Profunctor& h, const Profunctor& k_in) {
  if (!structurally_equal(*h.right, *k_in.left))
    throw MiddleMismatch("compose_profunctors: middle categories differ");
  const Profunctor k = identical(*h.right, *k_in.left) ? k_in : reindex_left(k_in, h.right);
  const CatRef& dref = h.right;
  const FinCat& c = *h.left;
  const FinCat& d = *dref;
  const FinCat& e = *k.right;
  const int nc = c.object_count(), nd = d.object_count(), ne = e.object_count();
  const int md = d.morphism_count();
  const CatRef shape = product(opposite(dref), dref);
  CompositeDetail out;
  out.prof = Profunctor{h.left, k.right, {}, {}, {}};
  std::vector<CoendResult> coends;
  for (int x = 0; x < nc; ++x)
    for (int z = 0; z < ne; ++z) {
      // T(d, d') = H(x, d') x K(d, z); (u, v) acts by (h, k) |-> (ract(v) h, lact(u) k)
      SetDiagram t{shape, {}, {}};
      for (int y = 0; y < nd; ++y)
        for (int y2 = 0; y2 < nd; ++y2) t.at.push_back(product_set(h.value(x, y2), k.value(y, z)));
      for (int u = 0; u < md; ++u)
        for (int v = 0; v < md; ++v) {
          const auto& rh = h.right_action(v, x);
          const auto& lk = k.left_action(u, z);
          const int nk = k.value(d.src(u), z).size();
          Function fn;
          for (int hh : rh)
            for (int kk : lk) fn.push_back(hh * nk + kk);
          t.action.push_back(std::move(fn));
        }
      CoendResult co = coend_of(dref, t);
      std::vector<std::vector<CompositeDetail::Rep>> reps(co.set.size());
      for (int y = 0; y < nd; ++y) {
        const int nk = k.value(y, z).size();
        for (int i = 0; i < static_cast<int>(co.cls[y].size()); ++i) reps[co.cls[y][i]].push_back({y, i / nk, i % nk});
      }
      out.prof.at.push_back(co.set);
      out.reps.push_back(std::move(reps));
      coends.push_back(std::move(co));
    }
  auto cls = [&](int x, int z, int y, int hh, int kk) {
    return coends[x * ne + z].cls[y][hh * k.value(y, z).size() + kk];
  };
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int z = 0; z < ne; ++z) {
      Function fn;
      for (const auto& r : out.reps[c.tgt(u) * ne + z])
        fn.push_back(cls(c.src(u), z, r[0].d, h.left_action(u, r[0].d)[r[0].h], r[0].k));
      out.prof.lact.push_back(std::move(fn));
    }
  for (int w = 0; w < e.morphism_count(); ++w)
    for (int x = 0; x < nc; ++x) {
      Function fn;
      for (const auto& r : out.reps[x * ne + e.src(w)])
        fn.push_back(cls(x, e.tgt(w), r[0].d, r[0].h, k.right_action(w, r[0].d)[r[0].k]));
      out.prof.ract.push_back(std::move(fn));
    }
  return out;
}

namespace {

UnitorResult unitor(const Profunctor& h, const CompositeDetail& comp, bool left) {
  UnitorResult r;
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const int nd = d.object_count();
  for (int x = 0; x < c.object_count(); ++x)
    for (int y = 0; y < nd; ++y) {
      Function fn;
      for (const auto& reps : comp.reps[x * nd + y]) {
        int value = -1;
        for (const auto& rep : reps) {
          // left: rep = (c1, u: x -> c1, h in H(c1, y)); right: rep = (d1, h in H(x, d1), v: d1 -> y)
          const int v = left ? h.left_action(c.hom(x, rep.d)[rep.h], y)[rep.k]
                             : h.right_action(d.hom(rep.d, y)[rep.k], x)[rep.h];
          if (value >= 0 && v != value) {
            r.detail = "unitor is not constant on a coend class";
            return r;
          }
          value = v;
        }
        fn.push_back(value);
      }
      r.map.push_back(std::move(fn));
    }
  if (!is_bijective(comp.prof, h, r.map)) {
    r.detail = "unitor is not a bijection";
    return r;
  }
  if (!is_profunctor_map(comp.prof, h, r.map)) {
    r.detail = "unitor does not commute with the actions";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace

UnitorResult left_unitor(const Profunctor& h) {
  return unitor(h, compose_profunctors_detail(hom_profunctor(h.left), h), true);
}

UnitorResult right_unitor(const Profunctor& h) {
  return unitor(h, compose_profunctors_detail(h, hom_profunctor(h.right)), false);
}

AssociatorResult associator(const Profunctor& h, const Profunctor& k_in, const Profunctor& l_in) {
  AssociatorResult r;
  const CompositeDetail hk = compose_profunctors_detail(h, k_in);
  const CompositeDetail hk_l = compose_profunctors_detail(hk.prof, l_in);
  const Profunctor k = identical(*h.right, *k_in.left) ? k_in : reindex_left(k_in, h.right);
  const Profunctor l = identical(*k.right, *l_in.left) ? l_in : reindex_left(l_in, k.right);
  const CompositeDetail kl = compose_profunctors_detail(k, l);
  const CompositeDetail h_kl = compose_profunctors_detail(h, kl.prof);
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const FinCat& e = *k.right;
  const FinCat& f = *l.right;
  const int nc = c.object_count(), nd = d.object_count(), ne = e.object_count(), nf = f.object_count();
  for (int x = 0; x < nc; ++x)
    for (int w = 0; w < nf; ++w) {
      // Disjoint union over (y, z) of H(x,y) x K(y,z) x L(z,w), quotiented by both middle actions.
      std::vector<int> off(nd * ne + 1, 0);
      auto sizes = [&](int y, int z) {
        return std::array<int, 3>{h.value(x, y).size(), k.value(y, z).size(), l.value(z, w).size()};
      };
      for (int y = 0; y < nd; ++y)
        for (int z = 0; z < ne; ++z) {
          const auto s = sizes(y, z);
          off[y * ne + z + 1] = off[y * ne + z] + s[0] * s[1] * s[2];
        }
      auto idx = [&](int y, int z, int a, int b, int cc) {
        const auto s = sizes(y, z);
        return off[y * ne + z] + (a * s[1] + b) * s[2] + cc;
      };
      detail::UnionFind uf(off.back());
      for (int u = 0; u < d.morphism_count(); ++u)  // u: y -> y'
        for (int z = 0; z < ne; ++z) {
          const int y = d.src(u), y2 = d.tgt(u);
          for (int a = 0; a < h.value(x, y).size(); ++a)
            for (int b = 0; b < k.value(y2, z).size(); ++b)
              for (int cc = 0; cc < l.value(z, w).size(); ++cc)
                uf.unite(idx(y2, z, h.right_action(u, x)[a], b, cc), idx(y, z, a, k.left_action(u, z)[b], cc));
        }
      for (int v = 0; v < e.morphism_count(); ++v)  // v: z -> z'
        for (int y = 0; y < nd; ++y) {
          const int z = e.src(v), z2 = e.tgt(v);
          for (int a = 0; a < h.value(x, y).size(); ++a)
            for (int b = 0; b < k.value(y, z).size(); ++b)
              for (int cc = 0; cc < l.value(z2, w).size(); ++cc)
                uf.unite(idx(y, z2, a, k.right_action(v, y)[b], cc), idx(y, z, a, b, l.left_action(v, w)[cc]));
        }
      std::map<int, int> triple;
      for (int i = 0; i < off.back(); ++i) triple.emplace(uf.find(i), static_cast<int>(triple.size()));
      r.triple_classes += triple.size();
      auto to_triple = [&](int i) { return triple.at(uf.find(i)); };

      // (H∘K)∘L: rep (z, class of HK at (x, z), l); HK class reps (y, h, k).
      const auto& left_reps = hk_l.reps[x * nf + w];
      std::vector<int> left_map(left_reps.size(), -1);
      for (std::size_t i = 0; i < left_reps.size(); ++i)
        for (const auto& rep : left_reps[i])
          for (const auto& inner : hk.reps[x * ne + rep.d][rep.h]) {
            const int t = to_triple(idx(inner.d, rep.d, inner.h, inner.k, rep.k));
            if (left_map[i] >= 0 && left_map[i] != t) {
              r.detail = "left bracketing is not well defined on the double quotient";
              return r;
            }
            left_map[i] = t;
          }
      // H∘(K∘L): rep (y, h, class of KL at (y, w)); KL class reps (z, k, l).
      const auto& right_reps = h_kl.reps[x * nf + w];
      std::vector<int> right_map(right_reps.size(), -1);
      for (std::size_t i = 0; i < right_reps.size(); ++i)
        for (const auto& rep : right_reps[i])
          for (const auto& inner : kl.reps[rep.d * nf + w][rep.k]) {
            const int t = to_triple(idx(rep.d, inner.d, rep.h, inner.h, inner.k));
            if (right_map[i] >= 0 && right_map[i] != t) {
              r.detail = "right bracketing is not well defined on the double quotient";
              return r;
            }
            right_map[i] = t;
          }
      auto bijective = [&](const std::vector<int>& m) {
        std::set<int> s(m.begin(), m.end());
        return s.size() == m.size() && s.size() == triple.size() && !s.count(-1);
      };
      if (!bijective(left_map) || !bijective(right_map)) {
        r.detail = "a bracketing does not biject with the double quotient";
        return r;
      }
      std::vector<int> inv(triple.size());
      for (std::size_t i = 0; i < right_map.size(); ++i) inv[right_map[i]] = static_cast<int>(i);
      Function fn;
      for (int t : left_map) fn.push_back(inv[t]);
      r.map.push_back(std::move(fn));
    }
  Profunctor target = h_kl.prof;
  target.left = hk_l.prof.left;
  target.right = hk_l.prof.right;
  if (!is_profunctor_map(hk_l.prof, target, r.map)) {
    r.detail = "associator does not commute with the actions";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace fcat
