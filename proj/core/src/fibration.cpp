#include "fcat/fibration.hpp"

#include <algorithm>
#include <map>

#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "union_find.hpp"

namespace fcat {

namespace {

std::string mname(const OverBase& p, int m) { return "'" + p.total().morphism_name(m) + "'"; }
std::string oname(const OverBase& p, int e) { return "'" + p.total().object_name(e) + "'"; }

std::vector<int> over(const OverBase& p, int a, int b, int f) {
  std::vector<int> out;
  for (int m : p.total().hom(a, b))
    if (p.proj.mor[m] == f) out.push_back(m);
  return out;
}

}  // namespace

Verdict is_cartesian_morphism(const OverBase& p, int m) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const int src = e.src(m), tgt = e.tgt(m);
  const int f = p.proj.mor[m];
  for (int z = 0; z < e.object_count(); ++z)
    for (int h : e.hom(z, tgt))
      for (int g : c.hom(p.proj.obj[z], c.src(f))) {
        if (c.compose(f, g) != p.proj.mor[h]) continue;
        int lifts = 0;
        for (int l : over(p, z, src, g))
          if (e.compose(m, l) == h) ++lifts;
        if (lifts != 1)
          return {false, std::to_string(lifts) + " factorizations of " + mname(p, h) + " through " + mname(p, m) +
                             " over '" + c.morphism_name(g) + "'"};
      }
  return {true, mname(p, m) + " is cartesian"};
}

Verdict is_cocartesian_morphism(const OverBase& p, int m) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const int src = e.src(m), tgt = e.tgt(m);
  const int f = p.proj.mor[m];
  for (int z = 0; z < e.object_count(); ++z)
    for (int h : e.hom(src, z))
      for (int g : c.hom(c.tgt(f), p.proj.obj[z])) {
        if (c.compose(g, f) != p.proj.mor[h]) continue;
        int lifts = 0;
        for (int l : over(p, tgt, z, g))
          if (e.compose(l, m) == h) ++lifts;
        if (lifts != 1)
          return {false, std::to_string(lifts) + " factorizations of " + mname(p, h) + " through " + mname(p, m) +
                             " over '" + c.morphism_name(g) + "'"};
      }
  return {true, mname(p, m) + " is cocartesian"};
}

Verdict is_locally_cartesian_morphism(const OverBase& p, int m) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const int src = e.src(m), tgt = e.tgt(m);
  const int f = p.proj.mor[m];
  const int idx = c.identity(c.src(f));
  for (int z = 0; z < e.object_count(); ++z) {
    if (p.proj.obj[z] != c.src(f)) continue;
    for (int h : over(p, z, tgt, f)) {
      int lifts = 0;
      for (int l : over(p, z, src, idx))
        if (e.compose(m, l) == h) ++lifts;
      if (lifts != 1)
        return {false, std::to_string(lifts) + " fiberwise factorizations of " + mname(p, h) + " through " + mname(p, m)};
    }
  }
  return {true, mname(p, m) + " is locally cartesian"};
}

Verdict is_locally_cocartesian_morphism(const OverBase& p, int m) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const int src = e.src(m), tgt = e.tgt(m);
  const int f = p.proj.mor[m];
  const int idy = c.identity(c.tgt(f));
  for (int z = 0; z < e.object_count(); ++z) {
    if (p.proj.obj[z] != c.tgt(f)) continue;
    for (int h : over(p, src, z, f)) {
      int lifts = 0;
      for (int l : over(p, tgt, z, idy))
        if (e.compose(l, m) == h) ++lifts;
      if (lifts != 1)
        return {false, std::to_string(lifts) + " fiberwise factorizations of " + mname(p, h) + " through " + mname(p, m)};
    }
  }
  return {true, mname(p, m) + " is locally cocartesian"};
}

namespace {

// Every f and every object over tgt f (cartesian) or src f (cocartesian) has a lift passing `test`.
template <class Test>
Verdict every_lift_exists(const OverBase& p, bool into, Test test, const char* what) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int t = 0; t < e.object_count(); ++t) {
      if (p.proj.obj[t] != (into ? c.tgt(f) : c.src(f))) continue;
      bool found = false;
      if (into) {
        for (int s = 0; s < e.object_count() && !found; ++s)
          for (int m : over(p, s, t, f))
            if (test(p, m).holds) {
              found = true;
              break;
            }
      } else {
        for (int s = 0; s < e.object_count() && !found; ++s)
          for (int m : over(p, t, s, f))
            if (test(p, m).holds) {
              found = true;
              break;
            }
      }
      if (!found)
        return {false, std::string("no ") + what + " lift of '" + c.morphism_name(f) + "' " + (into ? "into " : "out of ") +
                           oname(p, t)};
    }
  return {true, std::string("every morphism has a ") + what + " lift"};
}

FinFunctor opposite_functor(const FinFunctor& f) { return FinFunctor{opposite(f.dom), opposite(f.cod), f.obj, f.mor}; }

}  // namespace

Verdict is_exponential_lifting(const OverBase& p) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  for (int m = 0; m < e.morphism_count(); ++m) {
    const int s = e.src(m), t = e.tgt(m);
    const int x = p.proj.obj[s], z = p.proj.obj[t];
    for (int y = 0; y < c.object_count(); ++y)
      for (int f : c.hom(x, y))
        for (int g : c.hom(y, z)) {
          if (c.compose(g, f) != p.proj.mor[m]) continue;
          struct Lift {
            int mid, a, b;
          };
          std::vector<Lift> lifts;
          std::map<std::pair<int, int>, int> index;
          for (int w = 0; w < e.object_count(); ++w) {
            if (p.proj.obj[w] != y) continue;
            for (int a : over(p, s, w, f))
              for (int b : over(p, w, t, g))
                if (e.compose(b, a) == m) {
                  index[{a, b}] = static_cast<int>(lifts.size());
                  lifts.push_back({w, a, b});
                }
          }
          const std::string where = mname(p, m) + " over '" + c.morphism_name(g) + "'.'" + c.morphism_name(f) + "'";
          if (lifts.empty()) return {false, "no lift of the factorization of " + where};
          detail::UnionFind uf(static_cast<int>(lifts.size()));
          for (std::size_t i = 0; i < lifts.size(); ++i) {
            const auto& li = lifts[i];
            for (int k : e.out(li.mid)) {
              if (p.proj.mor[k] != c.identity(y)) continue;
              const int a2 = e.compose(k, li.a);
              for (int b2 : over(p, e.tgt(k), t, g))
                if (e.compose(b2, k) == li.b) {
                  auto it = index.find({a2, b2});
                  if (it != index.end()) uf.unite(static_cast<int>(i), it->second);
                }
            }
          }
          for (std::size_t i = 1; i < lifts.size(); ++i)
            if (uf.find(static_cast<int>(i)) != 0)
              return {false, "disconnected lifts of the factorization of " + where};
        }
  }
  return {true, "every factorization lifts with a connected category of lifts"};
}

Verdict is_exponential_coend(const OverBase& p) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  struct Middle {
    Subcategory fib;
    CatRef shape;
  };
  std::map<int, Middle> cache;
  auto middle = [&](int y) -> const Middle& {
    auto it = cache.find(y);
    if (it == cache.end()) {
      Subcategory fib = fiber(p, y);
      CatRef shape = product(opposite(fib.cat), fib.cat);
      it = cache.emplace(y, Middle{std::move(fib), std::move(shape)}).first;
    }
    return it->second;
  };
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      const Middle& mid = middle(c.tgt(f));
      const FinCat& ey = *mid.fib.cat;
      const int n = ey.object_count();
      for (int x = 0; x < e.object_count(); ++x) {
        if (p.proj.obj[x] != c.src(f)) continue;
        for (int z = 0; z < e.object_count(); ++z) {
          if (p.proj.obj[z] != c.tgt(g)) continue;
          // T(y, y') = Het_g(y, z) x Het_f(x, y')
          std::vector<std::vector<int>> het_g(n), het_f(n);
          for (int y = 0; y < n; ++y) {
            het_g[y] = over(p, mid.fib.obj_incl[y], z, g);
            het_f[y] = over(p, x, mid.fib.obj_incl[y], f);
          }
          auto pos = [](const std::vector<int>& v, int m) {
            return static_cast<int>(std::find(v.begin(), v.end(), m) - v.begin());
          };
          SetDiagram t{mid.shape, {}, {}};
          for (int y = 0; y < n; ++y)
            for (int y2 = 0; y2 < n; ++y2) {
              FinSet s;  // only cardinalities matter here
              s.elements.resize(het_g[y].size() * het_f[y2].size());
              t.at.push_back(std::move(s));
            }
          const int mc = ey.morphism_count();
          for (int u = 0; u < mc; ++u)
            for (int v = 0; v < mc; ++v) {
              // (tgt u, src v) -> (src u, tgt v): (b, a) |-> (b∘u, v∘a)
              const int yu = ey.tgt(u), yv = ey.src(v);
              const int su = ey.src(u), tv = ey.tgt(v);
              const int uu = mid.fib.mor_incl[u], vv = mid.fib.mor_incl[v];
              Function fn;
              for (int b : het_g[yu])
                for (int a : het_f[yv])
                  fn.push_back(pos(het_g[su], e.compose(b, uu)) * static_cast<int>(het_f[tv].size()) +
                               pos(het_f[tv], e.compose(vv, a)));
              t.action.push_back(std::move(fn));
            }
          CoendResult co = coend_of(mid.fib.cat, t);
          const std::vector<int> target = over(p, x, z, gf);
          std::vector<int> image(co.set.size(), -1);
          for (int y = 0; y < n; ++y) {
            const int na = static_cast<int>(het_f[y].size());
            for (std::size_t i = 0; i < het_g[y].size(); ++i)
              for (int j = 0; j < na; ++j)
                image[co.cls[y][i * na + j]] = e.compose(het_g[y][i], het_f[y][j]);
          }
          auto sorted = image;
          std::sort(sorted.begin(), sorted.end());
          const std::string where = "('" + c.morphism_name(f) + "', '" + c.morphism_name(g) + "') at " + oname(p, x) +
                                    ", " + oname(p, z);
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return {false, "coend comparison not injective for " + where};
          if (sorted.size() != target.size()) return {false, "coend comparison not surjective for " + where};
        }
      }
    }
  return {true, "every coend comparison is a bijection"};
}

std::vector<std::string> FibrationClass::implication_violations() const {
  std::vector<std::string> v;
  auto imp = [&](const Verdict& a, const Verdict& b, const char* what) {
    if (a.holds && !b.holds) v.emplace_back(what);
  };
  imp(is_left, is_cocartesian, "left but not cocartesian");
  imp(is_cocartesian, is_locally_cocartesian, "cocartesian but not locally cocartesian");
  imp(is_right, is_cartesian, "right but not cartesian");
  imp(is_cartesian, is_locally_cartesian, "cartesian but not locally cartesian");
  imp(is_cartesian, is_exponential, "cartesian but not exponential");
  imp(is_cocartesian, is_exponential, "cocartesian but not exponential");
  if (!criteria_agree) v.emplace_back("exponential criteria disagree");
  return v;
}

FibrationClass classify(const OverBase& p) {
  FibrationClass r;
  std::string w;
  r.is_left = {has_unique_lifts(p.proj, &w), w.empty() ? "unique lifts out of every object" : w};
  w.clear();
  r.is_right = {has_unique_lifts(opposite_functor(p.proj), &w), w.empty() ? "unique lifts into every object" : w};
  r.is_cartesian = every_lift_exists(p, true, is_cartesian_morphism, "cartesian");
  r.is_cocartesian = every_lift_exists(p, false, is_cocartesian_morphism, "cocartesian");
  r.is_locally_cartesian = every_lift_exists(p, true, is_locally_cartesian_morphism, "locally cartesian");
  r.is_locally_cocartesian = every_lift_exists(p, false, is_locally_cocartesian_morphism, "locally cocartesian");
  r.is_exponential = is_exponential_lifting(p);
  r.exponential_coend = is_exponential_coend(p);
  r.criteria_agree = r.is_exponential.holds == r.exponential_coend.holds;
  return r;
}

EnvFibration env_fibration(const FinFunctor& p) {
  EnvFibration r;
  r.comma = comma(p, identity_functor(p.cod));
  r.env = OverBase{r.comma.proj_b};
  const FinCat& c = *p.dom;
  const FinCat& a = *p.cod;
  r.theta = FinFunctor{p.dom, r.comma.cat, {}, {}};
  for (int x = 0; x < c.object_count(); ++x)
    r.theta.obj.push_back(r.comma.find_object(x, p.obj[x], a.identity(p.obj[x])));
  for (int u = 0; u < c.morphism_count(); ++u) {
    int found = -1;
    for (int k : r.comma.cat->hom(r.theta.obj[c.src(u)], r.theta.obj[c.tgt(u)]))
      if (r.comma.morphisms[k].u == u && r.comma.morphisms[k].v == p.mor[u]) found = k;
    r.theta.mor.push_back(found);
  }
  return r;
}

ArrowPullback pullback_along_arrow(const OverBase& p, int f) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const int x = c.src(f), y = c.tgt(f);
  const Subcategory dx = fiber(p, x);
  const Subcategory dy = fiber(p, y);
  const bool clash = x == y;
  const std::string s0 = clash ? "@0" : "", s1 = clash ? "@1" : "", sh = clash ? "@01" : "";
  const int nx = dx.cat->object_count();
  FinCat::Builder b;
  for (int o : dx.obj_incl) b.add_object(e.object_name(o) + s0);
  for (int o : dy.obj_incl) b.add_object(e.object_name(o) + s1);
  std::vector<int> emap;
  std::vector<int> part;  // 0, 1 or 2 = het
  std::map<int, int> back0, back1, backh;
  for (int m : dx.mor_incl) {
    back0[m] = b.add_morphism(e.morphism_name(m) + s0, dx.obj_back[e.src(m)], dx.obj_back[e.tgt(m)]);
    emap.push_back(m);
    part.push_back(0);
  }
  for (int m : dy.mor_incl) {
    back1[m] = b.add_morphism(e.morphism_name(m) + s1, nx + dy.obj_back[e.src(m)], nx + dy.obj_back[e.tgt(m)]);
    emap.push_back(m);
    part.push_back(1);
  }
  ArrowPullback r;
  for (int so : dx.obj_incl)
    for (int to : dy.obj_incl)
      for (int m : over(p, so, to, f)) {
        backh[m] = b.add_morphism(e.morphism_name(m) + sh, dx.obj_back[so], nx + dy.obj_back[to]);
        emap.push_back(m);
        part.push_back(2);
        r.het.push_back(m);
      }
  for (int o : dx.obj_incl) b.set_identity(dx.obj_back[o], back0.at(e.identity(o)));
  for (int o : dy.obj_incl) b.set_identity(nx + dy.obj_back[o], back1.at(e.identity(o)));
  const int mm = static_cast<int>(emap.size());
  std::vector<int> msrc(mm), mtgt(mm);
  for (int i = 0; i < mm; ++i) {
    msrc[i] = part[i] == 1 ? nx + dy.obj_back[e.src(emap[i])] : dx.obj_back[e.src(emap[i])];
    mtgt[i] = part[i] == 0 ? dx.obj_back[e.tgt(emap[i])] : nx + dy.obj_back[e.tgt(emap[i])];
  }
  for (int g = 0; g < mm; ++g)
    for (int h = 0; h < mm; ++h) {
      if (mtgt[h] != msrc[g]) continue;
      const int comp = e.compose(emap[g], emap[h]);
      const int pg = std::max(part[g], part[h]) == 2 || part[g] != part[h] ? 2 : part[g];
      const auto& table = pg == 0 ? back0 : pg == 1 ? back1 : backh;
      b.set_compose(g, h, table.at(comp));
    }
  CatRef base = shapes::interval();
  const IntervalSides sides = interval_sides(*base);
  CatRef m = share(b.build());
  FinFunctor proj{m, base, {}, {}};
  for (int i = 0; i < nx; ++i) proj.obj.push_back(sides.zero);
  for (int i = 0; i < dy.cat->object_count(); ++i) proj.obj.push_back(sides.one);
  for (int i = 0; i < mm; ++i)
    proj.mor.push_back(part[i] == 0 ? base->identity(sides.zero) : part[i] == 1 ? base->identity(sides.one) : sides.arrow);
  r.over = OverBase{proj};
  r.fiber_x = fiber(r.over, sides.zero);
  r.fiber_y = fiber(r.over, sides.one);
  return r;
}

Presheaf rebase(const Presheaf& p, const CatRef& base) {
  if (base->object_count() != p.base->object_count() || base->morphism_count() != p.base->morphism_count())
    throw ShapeMismatch("rebase: categories differ in size");
  return Presheaf{base, p.at, p.action};
}

Presheaf transport_presheaf(const OverBase& p, int f, const Presheaf& presheaf) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const Subcategory dx = fiber(p, c.src(f));
  const Subcategory dy = fiber(p, c.tgt(f));
  if (!identical(*presheaf.base, *dy.cat)) throw ShapeMismatch("transport_presheaf: presheaf is not on the target fiber");
  const FinCat& ey = *dy.cat;
  const int n = ey.object_count();
  const int mc = ey.morphism_count();
  const CatRef shape = product(opposite(dy.cat), dy.cat);
  Presheaf out{dx.cat, {}, {}};
  std::vector<std::vector<std::vector<int>>> hets;  // [x][y] -> Het_f(x, y)
  std::vector<CoendResult> coends;
  for (int xi = 0; xi < dx.cat->object_count(); ++xi) {
    const int x = dx.obj_incl[xi];
    std::vector<std::vector<int>> het(n);
    for (int y = 0; y < n; ++y) het[y] = over(p, x, dy.obj_incl[y], f);
    // T(y, y') = P(y) x Het_f(x, y'); (u, v) acts by (t, h) |-> (P(u) t, v∘h)
    SetDiagram t{shape, {}, {}};
    for (int y = 0; y < n; ++y)
      for (int y2 = 0; y2 < n; ++y2) {
        FinSet s;
        for (const auto& el : presheaf.at[y].elements)
          for (int h : het[y2]) s.elements.push_back("(" + el + "," + e.morphism_name(h) + ")");
        t.at.push_back(std::move(s));
      }
    for (int u = 0; u < mc; ++u)
      for (int v = 0; v < mc; ++v) {
        const int yv = ey.src(v), tv = ey.tgt(v);
        const int nt = static_cast<int>(het[tv].size());
        Function fn;
        for (int te : presheaf.action[u])
          for (int h : het[yv]) {
            const int hv = e.compose(dy.mor_incl[v], h);
            fn.push_back(te * nt + static_cast<int>(std::find(het[tv].begin(), het[tv].end(), hv) - het[tv].begin()));
          }
        t.action.push_back(std::move(fn));
      }
    coends.push_back(coend_of(dy.cat, t));
    out.at.push_back(coends.back().set);
    hets.push_back(std::move(het));
  }
  // k: x' -> x acts by [t, h] |-> [t, h∘k]
  for (int k = 0; k < dx.cat->morphism_count(); ++k) {
    const int xs = dx.cat->src(k), xt = dx.cat->tgt(k);
    const int kk = dx.mor_incl[k];
    Function act(coends[xt].set.size(), -1);
    for (int y = 0; y < n; ++y) {
      const auto& from = hets[xt][y];
      const auto& to = hets[xs][y];
      for (int te = 0; te < presheaf.at[y].size(); ++te)
        for (std::size_t j = 0; j < from.size(); ++j) {
          const int cls = coends[xt].cls[y][te * static_cast<int>(from.size()) + static_cast<int>(j)];
          if (act[cls] >= 0) continue;
          const int hk = e.compose(from[j], kk);
          const int pos = static_cast<int>(std::find(to.begin(), to.end(), hk) - to.begin());
          act[cls] = coends[xs].cls[y][te * static_cast<int>(to.size()) + pos];
        }
    }
    out.action.push_back(std::move(act));
  }
  return out;
}

Presheaf transport_presheaf_via_kan(const OverBase& p, int f, const Presheaf& presheaf) {
  const FinCat& c = p.base();
  const Subcategory dx = fiber(p, c.src(f));
  const Subcategory dy = fiber(p, c.tgt(f));
  if (!identical(*presheaf.base, *dy.cat))
    throw ShapeMismatch("transport_presheaf_via_kan: presheaf is not on the target fiber");
  ArrowPullback pb = pullback_along_arrow(p, f);
  const CatRef& m = pb.over.proj.dom;
  Presheaf lan = left_kan(inclusion(pb.fiber_y, m), rebase(presheaf, pb.fiber_y.cat));
  return rebase(restrict(inclusion(pb.fiber_x, m), lan), dx.cat);
}

}  // namespace fcat
