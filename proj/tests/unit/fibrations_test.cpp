#include "doctest.h"
#include "fcat/fibration.hpp"
#include "fcat/profunctor.hpp"
#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "oracles.hpp"

using namespace fcat;

namespace {

// Factorization lifting straight from the definition.
bool brute_exponential(const OverBase& p) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  const auto& po = p.proj.obj;
  const auto& pm = p.proj.mor;
  for (int m = 0; m < e.morphism_count(); ++m)
    for (int f = 0; f < c.morphism_count(); ++f) {
      if (c.src(f) != po[e.src(m)]) continue;
      for (int g : c.out(c.tgt(f))) {
        if (c.compose(g, f) != pm[m]) continue;
        struct Lift {
          int mid, a, b;
        };
        std::vector<Lift> lifts;
        for (int mid = 0; mid < e.object_count(); ++mid) {
          if (po[mid] != c.tgt(f)) continue;
          for (int a : e.hom(e.src(m), mid))
            for (int b : e.hom(mid, e.tgt(m)))
              if (pm[a] == f && pm[b] == g && e.compose(b, a) == m) lifts.push_back({mid, a, b});
        }
        if (lifts.empty()) return false;
        std::vector<int> comp(lifts.size());
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int i) { return comp[i] == i ? i : comp[i] = find(comp[i]); };
        for (std::size_t i = 0; i < lifts.size(); ++i)
          for (std::size_t j = 0; j < lifts.size(); ++j)
            for (int k : e.hom(lifts[i].mid, lifts[j].mid))
              if (pm[k] == c.identity(c.tgt(f)) && e.compose(k, lifts[i].a) == lifts[j].a &&
                  e.compose(lifts[j].b, k) == lifts[i].b)
                comp[find(static_cast<int>(i))] = find(static_cast<int>(j));
        for (std::size_t i = 0; i < lifts.size(); ++i)
          if (find(static_cast<int>(i)) != find(0)) return false;
      }
    }
  return true;
}

bool brute_cartesian(const OverBase& p, int m) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  for (int h : e.in(e.tgt(m)))
    for (int w : c.hom(p.proj.obj[e.src(h)], p.proj.obj[e.src(m)])) {
      if (c.compose(p.proj.mor[m], w) != p.proj.mor[h]) continue;
      int count = 0;
      for (int l : e.hom(e.src(h), e.src(m)))
        if (p.proj.mor[l] == w && e.compose(m, l) == h) ++count;
      if (count != 1) return false;
    }
  return true;
}

// Discrete opfibration: every base morphism out of p(x) has exactly one lift out of x.
bool brute_left(const OverBase& p) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  for (int x = 0; x < e.object_count(); ++x)
    for (int u : c.out(p.proj.obj[x])) {
      int count = 0;
      for (int m : e.out(x)) count += p.proj.mor[m] == u;
      if (count != 1) return false;
    }
  return true;
}

FinFunctor poset_map(const CatRef& e, const CatRef& base, std::vector<int> obj) {
  FinFunctor f{e, base, std::move(obj), {}};
  for (int m = 0; m < e->morphism_count(); ++m)
    f.mor.push_back(base->hom(f.obj[e->src(m)], f.obj[e->tgt(m)])[0]);
  return f;
}

// a0 <= a1 <= a2 over 0, b over 1, c over 2; a0, a1 <= b <= c and every a_i <= c.
// Locally cartesian, but the lift of c over 0 -> 2 starts at a2 while the composite lift starts at a1.
OverBase lax_three_level() {
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) leq[i][i] = true;
  leq[0][1] = leq[0][2] = leq[1][2] = true;
  leq[0][3] = leq[1][3] = true;
  for (int i = 0; i < 4; ++i) leq[i][4] = true;
  return OverBase{poset_map(verify::poset_category(5, leq), shapes::simplex(2), {0, 0, 0, 1, 2})};
}

std::vector<OverBase> sample_overs(std::uint64_t seed, int count) {
  verify::Rng rng(seed);
  std::vector<OverBase> out;
  for (int i = 0; i < count; ++i) out.push_back(verify::random_over(rng, verify::Caps{3, 8}));
  return out;
}

}  // namespace

TEST_CASE("cartesian morphisms") {
  for (const OverBase& p : sample_overs(41, 40)) {
    for (int x = 0; x < p.total().object_count(); ++x) {
      CHECK(is_cartesian_morphism(p, p.total().identity(x)).holds);
      CHECK(is_cocartesian_morphism(p, p.total().identity(x)).holds);
    }
    for (int m = 0; m < p.total().morphism_count(); ++m) CHECK(is_cartesian_morphism(p, m).holds == brute_cartesian(p, m));
  }
  // Arrow category over C by the source: squares (u, id) are cartesian.
  for (const CatRef& c : oracle::sample_categories(42, 15)) {
    const Comma arr = comma(identity_functor(c), identity_functor(c));
    const OverBase p{arr.proj_a};
    for (int m = 0; m < arr.cat->morphism_count(); ++m)
      if (c->is_identity(arr.morphisms[m].v)) CHECK(is_cartesian_morphism(p, m).holds);
  }
  // Two heteromorphisms between terminal fibers: neither is cartesian.
  Profunctor two{shapes::terminal(), shapes::terminal(), {FinSet{{"x", "y"}}}, {{0, 1}}, {{0, 1}}};
  const Collage col = collage(two);
  int hets = 0;
  for (int m = 0; m < col.over.total().morphism_count(); ++m)
    if (!col.over.total().is_identity(m)) {
      ++hets;
      CHECK_FALSE(is_cartesian_morphism(col.over, m).holds);
      CHECK_FALSE(is_cocartesian_morphism(col.over, m).holds);
    }
  CHECK(hets == 2);
}

TEST_CASE("classify") {
  const auto cats = oracle::sample_categories(43, 12);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const OverBase p{product_projection(product(cats[i], cats[i + 1]), cats[i], cats[i + 1], 0)};
    const FibrationClass k = classify(p);
    CHECK(k.is_cartesian.holds);
    CHECK(k.is_cocartesian.holds);
    CHECK(k.is_exponential.holds);
    CHECK(k.criteria_agree);
  }
  for (const CatRef& c : cats) {
    const FibrationClass k = classify(OverBase{twisted_arrow(c).proj});
    CHECK(k.is_left.holds);
    CHECK(k.implication_violations().empty());
  }
  const FibrationClass outer = classify(OverBase{shapes::subposet_inclusion(2, {0, 2})});
  CHECK_FALSE(outer.is_exponential.holds);
  CHECK_FALSE(outer.exponential_coend.holds);
  CHECK_FALSE(outer.is_exponential.witness.empty());

  for (const OverBase& p : sample_overs(44, 60)) {
    const FibrationClass k = classify(p);
    CHECK(k.implication_violations().empty());
    CHECK(k.is_left.holds == brute_left(p));
    CHECK(k.is_exponential.holds == brute_exponential(p));
    CHECK(k.criteria_agree);
    if (k.is_locally_cartesian.holds) CHECK(k.is_cartesian.holds == k.is_exponential.holds);
  }
}

TEST_CASE("exponential criteria") {
  for (const auto& hc : verify::handcrafted_conduche_cases()) {
    CAPTURE(hc.name);
    const bool lift = is_exponential_lifting(hc.over).holds;
    CHECK(lift == is_exponential_coend(hc.over).holds);
    CHECK(lift == brute_exponential(hc.over));
    if (hc.expected_exponential) CHECK(lift == *hc.expected_exponential);
  }
  for (int n = 0; n <= 5; ++n)
    for (int m = n; n + m <= 5; ++m)
      for (int i = 0; i + n <= m; ++i) {
        const OverBase p{shapes::inert(n, m, i)};
        CHECK(is_exponential_lifting(p).holds);
        CHECK(is_exponential_coend(p).holds);
      }
  // Every functor into [1].
  verify::Rng rng(45);
  for (const CatRef& c : oracle::sample_categories(45, 20))
    for (const FinFunctor& f : enumerate_functors(c, shapes::interval(), 1000)) {
      CHECK(is_exponential_lifting(OverBase{f}).holds);
      CHECK(is_exponential_coend(OverBase{f}).holds);
    }
}

TEST_CASE("enveloping fibration") {
  for (const CatRef& a : oracle::sample_categories(46, 12)) {
    const EnvFibration env = env_fibration(identity_functor(a));
    CHECK(env.env.total().object_count() == a->morphism_count());
    CHECK(classify(env.env).is_cocartesian.holds);
    CHECK(validate(env.theta).ok());
    const Comma arr = comma(identity_functor(a), identity_functor(a));
    CHECK(search_iso_over_base(env.env, OverBase{arr.proj_b}).has_value());
    const EnvFibration pt = env_fibration(constant_functor(a, shapes::terminal(), 0));
    CHECK(find_isomorphism(pt.env.proj.dom, a).has_value());
  }
  // Discrete C over [1]: the fiber over 1 gains one object per object over 0.
  const CatRef d3 = shapes::discrete(3), i1 = shapes::interval();
  FinFunctor p{d3, i1, {0, 0, 1}, {}};
  for (int m = 0; m < d3->morphism_count(); ++m) p.mor.push_back(i1->identity(p.obj[d3->src(m)]));
  const EnvFibration env = env_fibration(p);
  CHECK(fiber(env.env, 0).cat->object_count() == 2);
  CHECK(fiber(env.env, 1).cat->object_count() == 3);
  CHECK(classify(env.env).is_cocartesian.holds);
  for (int x = 0; x < 3; ++x) CHECK(env.env.proj.obj[env.theta.obj[x]] == p.obj[x]);
}

TEST_CASE("Grothendieck construction and straightening") {
  // Base [1], act = G: D -> C, so homs from (0, c) to (1, d) are hom_C(c, G d).
  verify::Rng rng(47);
  const auto cats = oracle::sample_categories(47, 14);
  const CatRef i1 = shapes::interval();
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const CatRef c = cats[i], d = cats[i + 1];
    const auto g = verify::random_functor(rng, d, c);
    if (!g) continue;
    StrictCatDiagram diag{i1, {c, d}, {}};
    for (int m = 0; m < i1->morphism_count(); ++m)
      diag.act.push_back(i1->is_identity(m) ? identity_functor(m == i1->identity(0) ? c : d) : *g);
    REQUIRE(validate(diag).ok());
    const Grothendieck gr = grothendieck_strict(diag);
    const FinCat& e = gr.over.total();
    for (int s = 0; s < e.object_count(); ++s)
      for (int t = 0; t < e.object_count(); ++t) {
        const auto [xs, a] = gr.objects[s];
        const auto [xt, b] = gr.objects[t];
        if (xs == 0 && xt == 1) CHECK(e.hom(s, t).size() == c->hom(a, g->obj[b]).size());
      }
    CHECK(classify(gr.over).is_cartesian.holds);
    const Straightening st = straighten_locally_cartesian(gr.over);
    CHECK(st.alpha.size() == 4);  // the composable pairs of [1]
    CHECK(st.all_invertible);
  }
  // Constant diagram: the total category is the product.
  const CatRef s2 = shapes::simplex(2);
  for (const CatRef& d : oracle::sample_categories(48, 8)) {
    StrictCatDiagram k{s2, {d, d, d}, {}};
    for (int m = 0; m < s2->morphism_count(); ++m) k.act.push_back(identity_functor(d));
    const Grothendieck gr = grothendieck_strict(k);
    CHECK(find_isomorphism(gr.over.proj.dom, product(s2, d)).has_value());
  }
  // Round trip on random strict diagrams: identity comparisons, transports as given.
  for (int i = 0; i < 25; ++i) {
    const StrictCatDiagram d = verify::random_strict_diagram(rng, verify::Caps{3, 6});
    REQUIRE(validate(d).ok());
    const Grothendieck gr = grothendieck_strict(d);
    for (int f = 0; f < d.base->morphism_count(); ++f)
      for (int t = 0; t < gr.over.total().object_count(); ++t)
        if (gr.cleavage.lift[f][t] >= 0) CHECK(is_cartesian_morphism(gr.over, gr.cleavage.lift[f][t]).holds);
    // The canonical cleavage recovers the diagram on the nose.
    const Straightening st = straighten_locally_cartesian(gr.over, CleavagePolicy::explicit_cleavage, &gr.cleavage);
    CHECK(st.all_invertible);
    for (const auto& a : st.alpha) {
      const Subcategory& fx = st.fibers[d.base->src(a.f)];
      for (int comp : a.t.components) CHECK(fx.cat->is_identity(comp));
    }
    // The default cleavage may pick other cartesian lifts: equal up to fiber isomorphism.
    const Straightening def = straighten_locally_cartesian(gr.over);
    CHECK(def.all_invertible);
    for (int f = 0; f < d.base->morphism_count(); ++f) {
      const FinFunctor& given = d.act[f];
      const Subcategory& fx = st.fibers[d.base->src(f)];
      const Subcategory& fy = st.fibers[d.base->tgt(f)];
      for (int y = 0; y < fy.cat->object_count(); ++y) {
        const int b = gr.objects[fy.obj_incl[y]].second;
        CHECK(gr.objects[fx.obj_incl[st.transport[f].obj[y]]].second == given.obj[b]);
        bool iso = false;
        for (int u : fx.cat->hom(def.transport[f].obj[y], st.transport[f].obj[y])) iso |= oracle::invertible(*fx.cat, u);
        CHECK(iso);
      }
    }
  }
}

TEST_CASE("locally cartesian but not cartesian") {
  const OverBase p = lax_three_level();
  REQUIRE(validate(p.proj).ok());
  const FibrationClass k = classify(p);
  CHECK(k.is_locally_cartesian.holds);
  CHECK_FALSE(k.is_cartesian.holds);
  CHECK_FALSE(k.is_exponential.holds);
  CHECK_FALSE(brute_exponential(p));
  const Straightening st = straighten_locally_cartesian(p);
  CHECK_FALSE(st.all_invertible);
  int bad = 0;
  for (const auto& a : st.alpha) bad += !a.invertible;
  CHECK(bad == 1);

  const OverBase outer{shapes::subposet_inclusion(2, {0, 2})};
  CHECK(fiber(outer, 1).cat->object_count() == 0);
  // Two points over [1] with no morphism: nothing lifts into the point over 1.
  const CatRef d2 = shapes::discrete(2), i1 = shapes::interval();
  FinFunctor f{d2, i1, {0, 1}, {}};
  for (int m = 0; m < d2->morphism_count(); ++m) f.mor.push_back(i1->identity(f.obj[d2->src(m)]));
  CHECK_FALSE(classify(OverBase{f}).is_locally_cartesian.holds);
  CHECK_THROWS_AS(straighten_locally_cartesian(OverBase{f}), NotLocallyCartesian);
}

TEST_CASE("presheaf transport") {
  const CatRef i1 = shapes::interval();
  const int arrow = i1->morphism("0_1");
  // Constant correspondence C x [1]: transport is the identity.
  verify::Rng rng(49);
  for (const CatRef& c : oracle::sample_categories(49, 10)) {
    const OverBase p{product_projection(product(c, i1), c, i1, 1)};
    const Subcategory f1 = fiber(p, 1), f0 = fiber(p, 0);
    for (int y = 0; y < c->object_count(); ++y) {
      const Presheaf r = yoneda(f1.cat, y);
      const Presheaf t = transport_presheaf(p, arrow, r);
      REQUIRE(validate(t).ok());
      CHECK(find_presheaf_iso(rebase(t, c), rebase(r, c)).has_value());
      CHECK(find_presheaf_iso(t, transport_presheaf_via_kan(p, arrow, r)).has_value());
    }
  }
  // Two heteromorphisms between points, singleton P.
  Profunctor two{shapes::terminal(), shapes::terminal(), {FinSet{{"x", "y"}}}, {{0, 1}}, {{0, 1}}};
  const Collage col = collage(two);
  const Subcategory top = fiber(col.over, col.one);
  const int cola = col.over.base().hom(col.zero, col.one)[0];
  const Presheaf pt = constant_presheaf(top.cat, FinSet{{"*"}});
  CHECK(transport_presheaf(col.over, cola, pt).at[0].size() == 2);

  // Representables go to het-sets, and the coend agrees with the Kan route.
  for (const OverBase& p : sample_overs(50, 40)) {
    const FinCat& b = p.base();
    for (int f = 0; f < b.morphism_count(); ++f) {
      const Subcategory fx = fiber(p, b.src(f)), fy = fiber(p, b.tgt(f));
      for (int y = 0; y < fy.cat->object_count(); ++y) {
        const Presheaf t = transport_presheaf(p, f, yoneda(fy.cat, y));
        CHECK(find_presheaf_iso(t, transport_presheaf_via_kan(p, f, yoneda(fy.cat, y))).has_value());
        for (int x = 0; x < fx.cat->object_count(); ++x) {
          int het = 0;
          for (int m : p.total().hom(fx.obj_incl[x], fy.obj_incl[y])) het += p.proj.mor[m] == f;
          CHECK(t.at[x].size() == het);
        }
      }
      const Presheaf none = transport_presheaf(p, f, empty_presheaf(fy.cat));
      for (const FinSet& s : none.at) CHECK(s.size() == 0);
    }
  }
}
