#include "doctest.h"
#include "fcat/fibration.hpp"
#include "fcat/profunctor.hpp"
#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "oracles.hpp"

using namespace fcat;

namespace {

Profunctor singleton(int n = 1) {
  FinSet s;
  for (int i = 0; i < n; ++i) s.elements.push_back("h" + std::to_string(i));
  Function id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  return Profunctor{shapes::terminal(), shapes::terminal(), {s}, {id}, {id}};
}

// Extraction of a collage, re-expressed on the original categories.
Profunctor extracted_on(const Profunctor& h) {
  const Collage col = collage(h);
  const Extraction ex = extract(col.over);
  const int nc = h.left->object_count(), nd = h.right->object_count();
  Profunctor back{h.left, h.right, {}, {}, {}};
  auto o0 = [&](int x) { return ex.fiber0.obj_back[col.left_obj[x]]; };
  auto o1 = [&](int y) { return ex.fiber1.obj_back[col.right_obj[y]]; };
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) back.at.push_back(ex.prof.value(o0(x), o1(y)));
  for (int u = 0; u < h.left->morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) back.lact.push_back(ex.prof.left_action(ex.fiber0.mor_back[col.left_mor[u]], o1(y)));
  for (int v = 0; v < h.right->morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) back.ract.push_back(ex.prof.right_action(ex.fiber1.mor_back[col.right_mor[v]], o0(x)));
  return back;
}

// |coend_d H(c,d) x K(d,e)| by union-find over all triples.
std::size_t brute_composite(const Profunctor& h, const Profunctor& k, int c, int e) {
  const FinCat& d = *h.right;
  std::map<std::tuple<int, int, int>, int> id;
  std::vector<int> parent;
  auto node = [&](int dd, int x, int y) {
    auto [it, fresh] = id.try_emplace({dd, x, y}, static_cast<int>(parent.size()));
    if (fresh) parent.push_back(it->second);
    return it->second;
  };
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (int dd = 0; dd < d.object_count(); ++dd)
    for (int x = 0; x < h.value(c, dd).size(); ++x)
      for (int y = 0; y < k.value(dd, e).size(); ++y) node(dd, x, y);
  for (int v = 0; v < d.morphism_count(); ++v) {
    const int s = d.src(v), t = d.tgt(v);
    for (int x = 0; x < h.value(c, s).size(); ++x)
      for (int y = 0; y < k.value(t, e).size(); ++y) {
        const int a = node(t, h.right_action(v, c)[x], y);
        const int b = node(s, x, k.left_action(v, e)[y]);
        parent[find(a)] = find(b);
      }
  }
  std::size_t classes = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) classes += find(static_cast<int>(i)) == static_cast<int>(i);
  return classes;
}

// The same functor with its domain and codomain swapped for index-identical fibers.
FinFunctor on(const FinFunctor& f, const CatRef& dom, const CatRef& cod) { return FinFunctor{dom, cod, f.obj, f.mor}; }

struct Sample {
  CatRef c, d, e;
  Profunctor h, k;
};

std::vector<Sample> samples(std::uint64_t seed, int count) {
  verify::Rng rng(seed);
  std::vector<Sample> out;
  for (int i = 0; i < count; ++i) {
    Sample s;
    s.c = verify::random_category(rng, verify::Caps{3, 6});
    s.d = verify::random_category(rng, verify::Caps{3, 6});
    s.e = verify::random_category(rng, verify::Caps{3, 6});
    s.h = verify::random_profunctor(rng, s.c, s.d);
    s.k = verify::random_profunctor(rng, s.d, s.e);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("collage") {
  const CatRef i1 = shapes::interval();
  const Collage one = collage(singleton());
  CHECK(find_isomorphism(one.over.proj.dom, i1).has_value());
  for (const CatRef& c : oracle::sample_categories(51, 12)) {
    const OverBase col = collage(hom_profunctor(c)).over;
    const OverBase prod{product_projection(product(c, i1), c, i1, 1)};
    CHECK(search_iso_over_base(verify::rebase_over(col, i1), prod).has_value());
    const OverBase empty = collage(empty_profunctor(c, shapes::simplex(2))).over;
    CHECK(find_isomorphism(empty.proj.dom, coproduct(c, shapes::simplex(2))).has_value());
  }
  for (const Sample& s : samples(52, 30)) {
    const Collage col = collage(s.h);
    REQUIRE(validate(col.over.proj).ok());
    std::size_t hets = 0;
    for (const FinSet& v : s.h.at) hets += v.size();
    CHECK(col.over.total().object_count() == s.c->object_count() + s.d->object_count());
    CHECK(static_cast<std::size_t>(col.over.total().morphism_count()) ==
          s.c->morphism_count() + s.d->morphism_count() + hets);
    const Profunctor back = extracted_on(s.h);
    REQUIRE(validate(back).ok());
    auto iso = find_profunctor_iso(s.h, back);
    REQUIRE(iso.has_value());
    CHECK(is_bijective(s.h, back, *iso));
  }
}

TEST_CASE("extract") {
  const CatRef i1 = shapes::interval();
  const Profunctor pt = extract_profunctor(OverBase{identity_functor(i1)});
  REQUIRE(pt.at.size() == 1);
  CHECK(pt.at[0].size() == 1);
  CHECK_THROWS_AS(extract(OverBase{identity_functor(shapes::simplex(2))}), PreconditionFailed);
  // C x [1] gives the hom profunctor.
  for (const CatRef& c : oracle::sample_categories(53, 12)) {
    const Profunctor hp = extract_profunctor(OverBase{product_projection(product(c, i1), c, i1, 1)});
    for (int x = 0; x < c->object_count(); ++x)
      for (int y = 0; y < c->object_count(); ++y) CHECK(hp.value(x, y).size() == static_cast<int>(c->hom(x, y).size()));
  }
  // The collage classifying F: C -> D is cocartesian with hom_D(F c, d).
  verify::Rng rng(54);
  const auto cats = oracle::sample_categories(54, 14);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const auto f = verify::random_functor(rng, cats[i], cats[i + 1]);
    if (!f) continue;
    const Collage col = collage(representable_profunctor(*f));
    CHECK(classify(col.over).is_cocartesian.holds);
    const Extraction ex = extract(col.over);
    for (int x = 0; x < cats[i]->object_count(); ++x)
      for (int y = 0; y < cats[i + 1]->object_count(); ++y) {
        const int a = ex.fiber0.obj_back[col.left_obj[x]], b = ex.fiber1.obj_back[col.right_obj[y]];
        CHECK(ex.prof.value(a, b).size() == static_cast<int>(cats[i + 1]->hom(f->obj[x], y).size()));
      }
  }
}

TEST_CASE("composition") {
  const Profunctor one = compose_profunctors(singleton(), singleton());
  REQUIRE(one.at.size() == 1);
  CHECK(one.at[0].size() == 1);
  CHECK(compose_profunctors(singleton(2), singleton(3)).at[0].size() == 6);
  for (const Sample& s : samples(55, 30)) {
    const Profunctor hk = compose_profunctors(s.h, s.k);
    REQUIRE(validate(hk).ok());
    for (int c = 0; c < s.c->object_count(); ++c)
      for (int e = 0; e < s.e->object_count(); ++e)
        CHECK(static_cast<std::size_t>(hk.value(c, e).size()) == brute_composite(s.h, s.k, c, e));
    const UnitorResult l = left_unitor(s.h), r = right_unitor(s.h);
    CHECK_MESSAGE(l.ok, l.detail);
    CHECK_MESSAGE(r.ok, r.detail);
  }
  verify::Rng rng(56);
  for (const Sample& s : samples(57, 15)) {
    const CatRef f = verify::random_category(rng, verify::Caps{2, 4});
    const Profunctor l = verify::random_profunctor(rng, s.e, f);
    const AssociatorResult a = associator(s.h, s.k, l);
    CHECK_MESSAGE(a.ok, a.detail);
    const Profunctor left = compose_profunctors(compose_profunctors(s.h, s.k), l);
    const Profunctor right = compose_profunctors(s.h, compose_profunctors(s.k, l));
    for (std::size_t i = 0; i < left.at.size(); ++i) CHECK(left.at[i].size() == right.at[i].size());
  }
  CHECK_THROWS_AS(compose_profunctors(singleton(), hom_profunctor(shapes::interval())), MiddleMismatch);
}

TEST_CASE("hom sets over the interval") {
  const CatRef i1 = shapes::interval();
  const auto cats = oracle::sample_categories(58, 12);
  verify::Rng rng(58);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const CatRef c = cats[i], d = cats[i + 1];
    const OverBase m{product_projection(product(c, i1), c, i1, 1)};
    const OverBase n{product_projection(product(d, i1), d, i1, 1)};
    const auto f = verify::random_functor(rng, c, d), g = verify::random_functor(rng, c, d);
    if (!f || !g) continue;
    const Subcategory m0 = fiber(m, 0), m1 = fiber(m, 1), n0 = fiber(n, 0), n1 = fiber(n, 1);
    const HetFamilies h = hom_set_over_interval(m, n, on(*f, m0.cat, n0.cat), on(*g, m1.cat, n1.cat));
    CHECK(static_cast<std::size_t>(h.set.size()) == oracle::nat_count(*f, *g));
  }
  // Empty fiber 0 of M: the limit is over an empty shape.
  const CatRef c = cats[0];
  const OverBase top{constant_functor(c, i1, 1)};
  const OverBase n{product_projection(product(c, i1), c, i1, 1)};
  const FinFunctor none{fiber(top, 0).cat, fiber(n, 0).cat, {}, {}};
  const FinFunctor g = on(identity_functor(c), fiber(top, 1).cat, fiber(n, 1).cat);
  CHECK(hom_set_over_interval(top, n, none, g).set.size() == 1);
  // No heteromorphisms in N: empty.
  const OverBase split = collage(empty_profunctor(c, c)).over;
  const OverBase prod{product_projection(product(c, i1), c, i1, 1)};
  const OverBase s = verify::rebase_over(split, i1);
  const Subcategory s0 = fiber(s, 0), s1 = fiber(s, 1);
  const HetFamilies e = hom_set_over_interval(prod, s, on(identity_functor(c), fiber(prod, 0).cat, s0.cat),
                                              on(identity_functor(c), fiber(prod, 1).cat, s1.cat));
  CHECK(e.set.size() == (c->object_count() == 0 ? 1 : 0));
}

TEST_CASE("internal hom and the exponential law") {
  const CatRef i1 = shapes::interval();
  verify::Rng rng(59);
  // M = [1]: objects are the objects of N, het-homs are those of N.
  for (int i = 0; i < 15; ++i) {
    const OverBase n = verify::random_over(rng, verify::Caps{3, 6}, verify::Kind::over1);
    const OverBase m = verify::rebase_over(OverBase{identity_functor(i1)}, n.proj.cod);
    const InternalHom ih = internal_hom_over_interval(m, n);
    REQUIRE(validate(ih.over.proj).ok());
    const Subcategory n0 = fiber(n, 0), n1 = fiber(n, 1);
    CHECK(ih.fun0.cat->object_count() == n0.cat->object_count());
    CHECK(ih.fun1.cat->object_count() == n1.cat->object_count());
    const Extraction ex = extract(ih.over);
    const Profunctor hn = extract_profunctor(n);
    std::multiset<int> a, b;
    for (const FinSet& s : ex.prof.at) a.insert(s.size());
    for (const FinSet& s : hn.at) b.insert(s.size());
    CHECK(a == b);
  }
  // M empty: both fibers of the internal hom are terminal.
  {
    const OverBase n = verify::random_over(rng, verify::Caps{3, 6}, verify::Kind::over1);
    const OverBase m{FinFunctor{share(FinCat::Builder{}.build()), n.proj.cod, {}, {}}};
    const InternalHom ih = internal_hom_over_interval(m, n);
    CHECK(search_iso_over_base(
              ih.over, verify::rebase_over(OverBase{identity_functor(i1)}, ih.over.proj.cod))
              .has_value());
  }
  // Exponential law against functors_over counts on both sides.
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    const OverBase m = verify::random_over(rng, verify::Caps{2, 4}, verify::Kind::over1);
    const OverBase n = verify::rebase_over(verify::random_over(rng, verify::Caps{2, 4}, verify::Kind::over1),
                                           m.proj.cod);
    const OverBase a = i % 2 ? verify::rebase_over(OverBase{identity_functor(i1)}, m.proj.cod)
                             : OverBase{constant_functor(shapes::terminal(), m.proj.cod, 0)};
    BijectionWitness w;
    try {
      w = exponential_law_check(a, m, n);
    } catch (const CapExceeded&) {
      continue;
    }
    ++checked;
    CHECK_MESSAGE(w.ok, w.detail);
    CHECK(w.left_count == w.right_count);
    CHECK(w.left_count == functors_over(pullback_over(a, m).over, n).size());
    if (i % 2 == 0) {
      const Subcategory m0 = fiber(m, 0), n0 = fiber(n, 0);
      CHECK(w.left_count == oracle::functors(m0.cat, n0.cat).size());
    }
  }
  CHECK(checked >= 20);
}
