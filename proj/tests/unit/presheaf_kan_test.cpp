#include <numeric>

#include "doctest.h"
#include "fcat/presheaf.hpp"
#include "fcat/shapes.hpp"
#include "oracles.hpp"

using namespace fcat;

namespace {

FinSet named(int n, const std::string& p = "e") {
  FinSet s;
  for (int i = 0; i < n; ++i) s.elements.push_back(p + std::to_string(i));
  return s;
}

// Brute-force count of presheaf maps by scanning every family of functions.
// Returns SIZE_MAX when the scan would be too large.
std::size_t brute_hom_count(const Presheaf& p, const Presheaf& q) {
  const FinCat& c = *p.base;
  double space = 1;
  for (int x = 0; x < c.object_count(); ++x) space *= std::pow(double(q.at[x].size()), double(p.at[x].size()));
  if (space > 2e5) return SIZE_MAX;
  std::vector<Function> fam(c.object_count());
  std::size_t count = 0;
  std::function<void(int)> rec = [&](int x) {
    if (x == c.object_count()) {
      for (int m = 0; m < c.morphism_count(); ++m) {
        const int a = c.src(m), b = c.tgt(m);
        for (int e = 0; e < p.at[b].size(); ++e)
          if (fam[a][p.action[m][e]] != q.action[m][fam[b][e]]) return;
      }
      ++count;
      return;
    }
    fam[x].assign(p.at[x].size(), 0);
    std::function<void(int)> fill = [&](int e) {
      if (e == p.at[x].size()) {
        rec(x + 1);
        return;
      }
      for (int v = 0; v < q.at[x].size(); ++v) {
        fam[x][e] = v;
        fill(e + 1);
      }
    };
    fill(0);
  };
  rec(0);
  return count;
}

// Components of the element graph, computed by flood fill.
int brute_colimit_size(const SetDiagram& d) {
  const FinCat& s = *d.shape;
  std::vector<std::pair<int, int>> nodes;
  std::map<std::pair<int, int>, int> id;
  for (int x = 0; x < s.object_count(); ++x)
    for (int e = 0; e < d.at[x].size(); ++e) {
      id[{x, e}] = static_cast<int>(nodes.size());
      nodes.push_back({x, e});
    }
  std::vector<std::vector<int>> adj(nodes.size());
  for (int m = 0; m < s.morphism_count(); ++m)
    for (int e = 0; e < d.at[s.src(m)].size(); ++e) {
      const int a = id[{s.src(m), e}], b = id[{s.tgt(m), d.action[m][e]}];
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::vector<bool> seen(nodes.size(), false);
  int comps = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (seen[i]) continue;
    ++comps;
    std::vector<int> stack{static_cast<int>(i)};
    seen[i] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) seen[w] = true, stack.push_back(w);
    }
  }
  return comps;
}

// Compatible families in the full product.
std::size_t brute_limit_size(const SetDiagram& d) {
  const FinCat& s = *d.shape;
  std::vector<int> fam(s.object_count());
  std::size_t count = 0;
  std::function<void(int)> rec = [&](int x) {
    if (x == s.object_count()) {
      for (int m = 0; m < s.morphism_count(); ++m)
        if (d.action[m][fam[s.src(m)]] != fam[s.tgt(m)]) return;
      ++count;
      return;
    }
    for (int e = 0; e < d.at[x].size(); ++e) {
      fam[x] = e;
      rec(x + 1);
    }
  };
  rec(0);
  return count;
}

std::vector<Presheaf> sample_presheaves(const CatRef& c, verify::Rng& rng) {
  std::vector<Presheaf> out;
  for (int x = 0; x < c->object_count(); ++x) out.push_back(yoneda(c, x));
  out.push_back(constant_presheaf(c, named(2)));
  out.push_back(empty_presheaf(c));
  const CatRef d = verify::random_category(rng, verify::Caps{3, 6});
  if (auto f = verify::random_functor(rng, c, d)) out.push_back(restrict(*f, yoneda(d, rng.below(d->object_count()))));
  return out;
}

}  // namespace

TEST_CASE("yoneda") {
  const Presheaf y1 = yoneda(shapes::terminal(), 0);
  CHECK(y1.at[0].size() == 1);
  const Presheaf yi = yoneda(shapes::interval(), 1);
  CHECK(yi.at[0].size() == 1);
  CHECK(yi.at[1].size() == 1);
  const Presheaf yb = yoneda(shapes::cyclic_group(2), 0);
  REQUIRE(yb.at[0].size() == 2);
  CHECK(yb.action[1][0] != 0);  // the generator moves every element
  CHECK(yb.action[1][1] != 1);
  for (const CatRef& c : oracle::sample_categories(21, 20))
    for (int x = 0; x < c->object_count(); ++x) {
      const Presheaf y = yoneda(c, x);
      CHECK(validate(y).ok());
      for (int a = 0; a < c->object_count(); ++a) CHECK(y.at[a].size() == static_cast<int>(c->hom(a, x).size()));
    }
  CHECK_THROWS_AS(yoneda(shapes::terminal(), 3), UnknownObject);
}

TEST_CASE("limits") {
  SetDiagram one{shapes::interval(), {named(1), named(1)}, {{0}, {0}, {0}}};
  CHECK(limit_set_valued(one).set.size() == 1);
  SetDiagram disc{shapes::discrete(2), {named(2), named(3)}, {{0, 1}, {0, 1, 2}}};
  CHECK(limit_set_valued(disc).set.size() == 6);

  // Cospan l -> m <- r with injective legs, pullback checked by a pair scan.
  const CatRef cs = shapes::cospan();
  const int l = cs->object("l"), r = cs->object("r"), apex = cs->object("m");
  SetDiagram d{cs, {}, {}};
  d.at.resize(3);
  d.at[l] = named(2);
  d.at[r] = named(3);
  d.at[apex] = named(4);
  for (int m = 0; m < cs->morphism_count(); ++m) {
    Function f(d.at[cs->src(m)].size());
    const int shift = cs->is_identity(m) || cs->src(m) == l ? 0 : 1;
    for (std::size_t e = 0; e < f.size(); ++e) f[e] = static_cast<int>(e) + shift;
    d.action.push_back(f);
  }
  REQUIRE(validate(d).ok());
  const LimitResult pb = limit_set_valued(d);
  CHECK(pb.set.size() == static_cast<int>(brute_limit_size(d)));
  CHECK(pb.set.size() == 1);  // only (e1, e0)
  for (const auto& fam : pb.families)
    for (int m = 0; m < cs->morphism_count(); ++m) CHECK(d.action[m][fam[cs->src(m)]] == fam[cs->tgt(m)]);
}

TEST_CASE("colimits") {
  SetDiagram one{shapes::interval(), {named(1), named(1)}, {{0}, {0}, {0}}};
  CHECK(colimit_set_valued(one).set.size() == 1);
  SetDiagram disc{shapes::discrete(2), {named(2), named(3)}, {{0, 1}, {0, 1, 2}}};
  CHECK(colimit_set_valued(disc).set.size() == 5);
  const SetDiagram free = as_diagram(yoneda(shapes::cyclic_group(2), 0));
  CHECK(colimit_set_valued(free).set.size() == 1);
  verify::Rng rng(22);
  for (const CatRef& c : oracle::sample_categories(22, 20))
    for (const Presheaf& p : sample_presheaves(c, rng)) {
      const SetDiagram d = as_diagram(p);
      CHECK(colimit_set_valued(d).set.size() == brute_colimit_size(d));
      CHECK(limit_set_valued(d).set.size() == static_cast<int>(brute_limit_size(d)));
    }
}

TEST_CASE("presheaf_hom and the Yoneda lemma") {
  verify::Rng rng(23);
  for (const CatRef& c : oracle::sample_categories(23, 20)) {
    const auto ps = sample_presheaves(c, rng);
    for (const Presheaf& q : ps) {
      for (int x = 0; x < c->object_count(); ++x) CHECK(presheaf_hom(yoneda(c, x), q).set.size() == q.at[x].size());
      CHECK(presheaf_hom(q, constant_presheaf(c, named(1))).set.size() == 1);
      CHECK(presheaf_hom(empty_presheaf(c), q).set.size() == 1);
    }
    for (const Presheaf& p : ps)
      for (const Presheaf& q : ps) {
        const std::size_t brute = brute_hom_count(p, q);
        if (brute == SIZE_MAX) continue;
        const PresheafHom h = presheaf_hom(p, q);
        CHECK(static_cast<std::size_t>(h.set.size()) == brute);
        for (const auto& phi : h.maps) CHECK(is_presheaf_map(p, q, phi));
      }
  }
}

TEST_CASE("restriction") {
  const CatRef i1 = shapes::interval();
  const Presheaf y = yoneda(i1, 1);
  const Presheaf r = restrict(constant_functor(shapes::terminal(), i1, 0), y);
  CHECK(r.at.size() == 1);
  CHECK(r.at[0].size() == 1);
  verify::Rng rng(24);
  for (const CatRef& c : oracle::sample_categories(24, 10))
    for (const Presheaf& p : sample_presheaves(c, rng)) {
      const Presheaf same = restrict(identity_functor(c), p);
      CHECK(same.at.size() == p.at.size());
      for (std::size_t x = 0; x < p.at.size(); ++x) CHECK(same.at[x].elements == p.at[x].elements);
      CHECK(same.action == p.action);
      if (c->object_count() > 0) {
        const Presheaf k = restrict(constant_functor(shapes::simplex(2), c, 0), p);
        for (const FinSet& s : k.at) CHECK(s.size() == p.at[0].size());
      }
    }
}

TEST_CASE("left Kan extension") {
  verify::Rng rng(25);
  const auto cats = oracle::sample_categories(25, 12);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const CatRef c = cats[i], d = cats[i + 1];
    const auto f = verify::random_functor(rng, c, d);
    if (!f) continue;
    for (const Presheaf& p : sample_presheaves(c, rng)) {
      CHECK(find_presheaf_iso(left_kan(identity_functor(c), p), p).has_value());
      const Presheaf lan = left_kan(*f, p);
      REQUIRE(validate(lan).ok());
      // Adjunction Lan -| restriction, counted by brute force on both sides.
      for (const Presheaf& q : sample_presheaves(d, rng)) {
        const std::size_t l = brute_hom_count(lan, q), r = brute_hom_count(p, restrict(*f, q));
        if (l != SIZE_MAX && r != SIZE_MAX) CHECK(l == r);
      }
      // Along C -> 1 the value is the colimit.
      const Presheaf pt = left_kan(constant_functor(c, shapes::terminal(), 0), p);
      CHECK(pt.at[0].size() == brute_colimit_size(as_diagram(p)));
    }
    for (int x = 0; x < c->object_count(); ++x)
      CHECK(find_presheaf_iso(left_kan(*f, yoneda(c, x)), yoneda(d, f->obj[x])).has_value());
  }
}
