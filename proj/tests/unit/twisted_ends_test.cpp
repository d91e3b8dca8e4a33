#include "doctest.h"
#include "fcat/presheaf.hpp"
#include "fcat/profunctor.hpp"
#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "oracles.hpp"

using namespace fcat;

namespace {

// Morphisms of Tw(C) counted straight from the composition table.
int brute_twisted_morphisms(const FinCat& c) {
  int count = 0;
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int f2 = 0; f2 < c.morphism_count(); ++f2)
      for (int u : c.hom(c.src(f2), c.src(f)))
        for (int v : c.hom(c.tgt(f), c.tgt(f2)))
          if (c.compose(v, c.compose(f, u)) == f2) ++count;
  return count;
}

SetDiagram constant_on(const CatRef& shape, int n) {
  SetDiagram d{shape, {}, {}};
  FinSet s;
  for (int i = 0; i < n; ++i) s.elements.push_back("s" + std::to_string(i));
  for (int x = 0; x < shape->object_count(); ++x) d.at.push_back(s);
  Function id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  for (int m = 0; m < shape->morphism_count(); ++m) d.action.push_back(id);
  return d;
}

// (x, y) |-> P(x) x D(d, F y) on C^op x C, whose coend is Lan_F P at d.
SetDiagram kan_integrand(const FinFunctor& f, const Presheaf& p, int d) {
  const FinCat& c = *f.dom;
  const FinCat& dd = *f.cod;
  const int n = c.object_count(), mc = c.morphism_count();
  SetDiagram t{product(opposite(f.dom), f.dom), {}, {}};
  auto homs = [&](int y) {
    auto h = dd.hom(d, f.obj[y]);
    return std::vector<int>(h.begin(), h.end());
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      FinSet s;
      s.elements.resize(p.at[x].size() * homs(y).size());
      t.at.push_back(std::move(s));
    }
  for (int u = 0; u < mc; ++u)
    for (int v = 0; v < mc; ++v) {
      const auto hs = homs(c.src(v)), ht = homs(c.tgt(v));
      Function fn;
      for (int e = 0; e < p.at[c.tgt(u)].size(); ++e)
        for (int h : hs) {
          const int img = dd.compose(f.mor[v], h);
          const int pos = static_cast<int>(std::find(ht.begin(), ht.end(), img) - ht.begin());
          fn.push_back(p.action[u][e] * static_cast<int>(ht.size()) + pos);
        }
      t.action.push_back(std::move(fn));
    }
  return t;
}

}  // namespace

TEST_CASE("twisted arrow category") {
  const TwistedArrow t1 = twisted_arrow(shapes::terminal());
  CHECK(t1.cat->object_count() == 1);
  CHECK(t1.cat->morphism_count() == 1);
  const TwistedArrow ti = twisted_arrow(shapes::interval());
  CHECK(ti.cat->object_count() == 3);
  CHECK(ti.cat->morphism_count() == 3 + 2);
  const int a = shapes::interval()->morphism("0_1");
  int into_a = 0;
  for (int m = 0; m < ti.cat->morphism_count(); ++m)
    if (!ti.cat->is_identity(m)) {
      CHECK(ti.cat->tgt(m) == a);
      ++into_a;
    }
  CHECK(into_a == 2);
  for (const CatRef& c : oracle::sample_categories(31, 30)) {
    const TwistedArrow tw = twisted_arrow(c);
    CHECK(validate(*tw.cat).ok());
    CHECK(validate(tw.proj).ok());
    CHECK(tw.cat->object_count() == c->morphism_count());
    CHECK(tw.cat->morphism_count() == brute_twisted_morphisms(*c));
    std::string w;
    CHECK_MESSAGE(has_unique_lifts(tw.proj, &w), w);
  }
}

TEST_CASE("het_twisted") {
  for (const CatRef& c : oracle::sample_categories(32, 15)) {
    const CatRef i1 = shapes::interval();
    const OverBase m{product_projection(product(c, i1), c, i1, 1)};
    const HetTwisted h = het_twisted(m);
    CHECK(find_isomorphism(h.cat, twisted_arrow(c).cat).has_value());
  }
  // Empty fiber over 1.
  const OverBase zero{constant_functor(shapes::simplex(2), shapes::interval(), 0)};
  CHECK(het_twisted(zero).cat->object_count() == 0);
  // Collage of a 2-element profunctor between terminal categories.
  Profunctor two{shapes::terminal(), shapes::terminal(), {FinSet{{"x", "y"}}}, {{0, 1}}, {{0, 1}}};
  REQUIRE(validate(two).ok());
  const HetTwisted h2 = het_twisted(collage(two).over);
  CHECK(h2.cat->object_count() == 2);
  CHECK(h2.cat->morphism_count() == 2);
}

TEST_CASE("ends") {
  const CatRef one = shapes::terminal();
  CHECK(end_of(one, hom_diagram(identity_functor(one), identity_functor(one))).set.size() == 1);
  const CatRef i1 = shapes::interval();
  const FinFunctor id1 = identity_functor(i1);
  CHECK(end_of(i1, hom_diagram(id1, id1)).set.size() == 1);
  CHECK(brute_nat_set(id1, id1).set.size() == 1);
  CHECK(end_of(i1, constant_on(product(opposite(i1), i1), 1)).set.size() == 1);
  CHECK_THROWS_AS(end_of(i1, constant_on(product(i1, i1), 1)), ShapeMismatch);

  for (const CatRef& c : oracle::sample_categories(33, 25)) {
    const FinFunctor id = identity_functor(c);
    const SetDiagram t = hom_diagram(id, id);
    const EndResult e = end_of(c, t);
    auto eq = end_via_equalizer(c, t);
    CHECK(static_cast<std::size_t>(e.set.size()) == eq.size());
    CHECK(static_cast<std::size_t>(e.set.size()) == oracle::nat_count(id, id));
  }
}

TEST_CASE("coends") {
  const CatRef one = shapes::terminal();
  CHECK(coend_of(one, constant_on(product(opposite(one), one), 3)).set.size() == 3);
  const CatRef i1 = shapes::interval();
  const FinFunctor id1 = identity_functor(i1);
  CHECK(coend_of(i1, hom_diagram(id1, id1)).set.size() == 2);
  CHECK(coend_via_colimit(i1, hom_diagram(id1, id1)).set.size() == 2);

  verify::Rng rng(34);
  const auto cats = oracle::sample_categories(34, 16);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const CatRef c = cats[i];
    const FinFunctor id = identity_functor(c);
    const SetDiagram t = hom_diagram(id, id);
    const CoendResult a = coend_of(c, t), b = coend_via_colimit(c, t);
    CHECK(a.set.elements == b.set.elements);
    CHECK(a.cls == b.cls);
    // Against the left Kan extension of representables and a restricted one.
    const auto f = verify::random_functor(rng, c, cats[i + 1]);
    if (!f) continue;
    std::vector<Presheaf> ps;
    for (int x = 0; x < c->object_count(); ++x) ps.push_back(yoneda(c, x));
    for (const Presheaf& p : ps) {
      const Presheaf lan = left_kan(*f, p);
      for (int d = 0; d < f->cod->object_count(); ++d)
        CHECK(coend_of(c, kan_integrand(*f, p, d)).set.size() == lan.at[d].size());
    }
  }
}

TEST_CASE("natural transformations via the end") {
  const CatRef i1 = shapes::interval();
  const FinFunctor id1 = identity_functor(i1);
  const FinFunctor c0 = constant_functor(i1, i1, 0), c1 = constant_functor(i1, i1, 1);
  CHECK(nat_set_via_end(id1, id1).set.size() == 1);
  CHECK(nat_set_via_end(c0, c1).set.size() == 1);
  CHECK(nat_set_via_end(c1, c0).set.size() == 0);
  CHECK(brute_nat_set(c0, c1).set.size() == 1);
  CHECK(brute_nat_set(c1, c0).set.size() == 0);
  const CatRef s3 = shapes::symmetric_group3();
  const FinFunctor k = constant_functor(i1, s3, 0);
  CHECK(nat_set_via_end(k, k).set.size() == 6);
  CHECK(brute_nat_set(k, k).set.size() == 6);

  verify::Rng rng(35);
  const auto cats = oracle::sample_categories(35, 24, 3, 10);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const auto f = verify::random_functor(rng, cats[i], cats[i + 1]);
    const auto g = verify::random_functor(rng, cats[i], cats[i + 1]);
    if (!f || !g) continue;
    const NatSet e = nat_set_via_end(*f, *g);
    const NatSet b = brute_nat_set(*f, *g);
    REQUIRE(e.transformations.size() == b.transformations.size());
    CHECK(e.transformations.size() == oracle::nat_count(*f, *g));
    std::set<std::string> names;
    for (const NatTrans& t : b.transformations) names.insert(nat_name(t));
    for (const NatTrans& t : e.transformations) {
      CHECK(validate(t).ok());
      CHECK(names.erase(nat_name(t)) == 1);
    }
    CHECK(names.empty());
  }
}

TEST_CASE("Fubini") {
  const auto cats = oracle::sample_categories(36, 8);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const CatRef prod = product(cats[i], cats[i + 1]);
    const FinFunctor id = identity_functor(prod);
    const FubiniResult r = end_fubini(cats[i], cats[i + 1], hom_diagram(id, id));
    CHECK_MESSAGE(r.agree, r.detail);
    CHECK(r.direct == r.iterated);
    CHECK(r.direct == oracle::nat_count(id, id));
  }
}
