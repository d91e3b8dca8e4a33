#include "doctest.h"
#include "fcat/fibration.hpp"
#include "fcat/fracture.hpp"
#include "fcat/profunctor.hpp"
#include "fcat/shapes.hpp"
#include "oracles.hpp"

using namespace fcat;

namespace {

// The double cover I -> BZ2: both objects of the walking iso over the point.
OverBase double_cover() {
  const CatRef i = shapes::walking_iso(), g = shapes::cyclic_group(2);
  FinFunctor p{i, g, {0, 0}, {}};
  for (int m = 0; m < i->morphism_count(); ++m) p.mor.push_back(i->is_identity(m) ? g->identity(0) : 1 - g->identity(0));
  return OverBase{p};
}

// One object over each i of [3]; hom(i, j) = Z/2 for i < j, composing by addition.
OverBase z2_tower() {
  FinCat::Builder b;
  const int n = 4;
  for (int i = 0; i < n; ++i) b.add_object("e" + std::to_string(i));
  std::vector<std::vector<std::vector<int>>> m(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i) m[i][i] = {b.add_identity(i, "id_e" + std::to_string(i))};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int t = 0; t < 2; ++t)
        m[i][j].push_back(b.add_morphism("m" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(t), i, j));
  auto elt = [&](int i, int j, int t) { return i == j ? m[i][i][0] : m[i][j][t]; };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int s = 0; s < (i == j ? 1 : 2); ++s)
          for (int t = 0; t < (j == k ? 1 : 2); ++t) b.set_compose(elt(j, k, t), elt(i, j, s), elt(i, k, (s + t) % 2));
  const CatRef e = share(b.build());
  const CatRef s3 = shapes::simplex(3);
  FinFunctor p{e, s3, {0, 1, 2, 3}, {}};
  for (int k = 0; k < e->morphism_count(); ++k) p.mor.push_back(s3->hom(e->src(k), e->tgt(k))[0]);
  return OverBase{p};
}

std::vector<OverBase> sample_overs(std::uint64_t seed, int count, std::optional<verify::Kind> kind = std::nullopt) {
  verify::Rng rng(seed);
  std::vector<OverBase> out;
  for (int i = 0; i < count; ++i) out.push_back(verify::random_over(rng, verify::Caps{3, 8}, kind));
  return out;
}

}  // namespace

TEST_CASE("local data") {
  // Poset base: trivial automorphism groups.
  const OverBase po{product_projection(product(shapes::simplex(2), shapes::walking_iso()), shapes::simplex(2),
                                       shapes::walking_iso(), 0)};
  const LocalData lp = local_data(po);
  CHECK(lp.classes.size() == 3);
  for (const auto& k : lp.classes) {
    CHECK(k.aut.carrier.size() == 1);
    CHECK(k.action.size() == 1);
    CHECK(k.fiber->object_count() == 2);
  }
  // Double cover: two discrete objects swapped by the generator.
  const LocalData dc = local_data(double_cover());
  REQUIRE(dc.classes.size() == 1);
  const auto& k = dc.classes[0];
  CHECK(k.fiber->object_count() == 2);
  CHECK(k.fiber->morphism_count() == 2);
  REQUIRE(k.action.size() == 2);
  CHECK(k.action[0].obj == std::vector<int>{0, 1});
  CHECK(k.action[1].obj == std::vector<int>{1, 0});
  // Product over a groupoid: the action is trivial.
  const CatRef s3 = shapes::symmetric_group3();
  for (const CatRef& d : oracle::sample_categories(61, 8)) {
    const LocalData ld = local_data(OverBase{product_projection(product(s3, d), s3, d, 0)});
    REQUIRE(ld.classes.size() == 1);
    CHECK(ld.classes[0].aut.carrier.size() == 6);
    for (const FinFunctor& a : ld.classes[0].action) CHECK(identical(a, identity_functor(ld.classes[0].fiber)));
  }
}

TEST_CASE("gluing data") {
  verify::Rng rng(62);
  const CatRef i1 = shapes::interval();
  for (int i = 0; i < 20; ++i) {
    const CatRef c = verify::random_category(rng, verify::Caps{3, 6});
    const CatRef d = verify::random_category(rng, verify::Caps{3, 6});
    const Profunctor h = verify::random_profunctor(rng, c, d);
    const Collage col = collage(h);
    const LaxProfDiagram lax = lax_diagram_of(col.over);
    CHECK(diagram_validate(lax).ok());
    const int arrow = col.over.base().hom(col.zero, col.one)[0];
    const Profunctor& het = lax.het[arrow];
    std::size_t a = 0, b = 0;
    for (const FinSet& s : het.at) a += s.size();
    for (const FinSet& s : h.at) b += s.size();
    CHECK(a == b);
    const OverBase back = collage_of_diagram(lax);
    CHECK(search_iso_over_base(back, col.over).has_value());
  }
  // Products: every het is the hom profunctor of the fiber, all mu bijective.
  const auto cats = oracle::sample_categories(63, 10);
  for (std::size_t i = 0; i + 1 < cats.size(); ++i) {
    const OverBase p{product_projection(product(cats[i], cats[i + 1]), cats[i], cats[i + 1], 0)};
    const LaxProfDiagram lax = lax_diagram_of(p);
    CHECK(diagram_validate(lax).ok());
    CHECK(mu_all_bijective(lax));
    for (int f = 0; f < cats[i]->morphism_count(); ++f)
      for (int x = 0; x < cats[i + 1]->object_count(); ++x)
        for (int y = 0; y < cats[i + 1]->object_count(); ++y)
          CHECK(lax.het[f].value(x, y).size() == static_cast<int>(cats[i + 1]->hom(x, y).size()));
  }
  // Grothendieck constructions over [2]: cartesian, so every mu is bijective.
  for (int i = 0; i < 15; ++i) {
    const StrictCatDiagram d = verify::random_strict_diagram(rng, verify::Caps{3, 6}, shapes::simplex(2));
    const LaxProfDiagram lax = lax_diagram_of(grothendieck_strict(d).over);
    CHECK(diagram_validate(lax).ok());
    std::string w;
    CHECK_MESSAGE(mu_all_bijective(lax, &w), w);
  }
}

TEST_CASE("diagram validation") {
  const OverBase tower = z2_tower();
  REQUIRE(validate(tower.proj).ok());
  LaxProfDiagram lax = lax_diagram_of(tower);
  REQUIRE(diagram_validate(lax).ok());
  const FinCat& c = *lax.base;
  const int f = c.morphism("0_1"), g = c.morphism("1_2");
  Function& cell = lax.mu_of(f, g).cells.at(0);
  cell[0] = 1 - cell[0];
  const ValidationReport r = diagram_validate(lax);
  REQUIRE_FALSE(r.ok());
  bool named = false;
  for (const auto& v : r.violations) named |= v.find("('0_1', '1_2', '2_3')") != std::string::npos;
  CHECK(named);
  CHECK_THROWS_AS(collage_of_diagram(lax), IncoherentDiagram);

  // Normality over the point: het(id) must be the hom profunctor.
  const CatRef one = shapes::terminal();
  for (const CatRef& fib : oracle::sample_categories(64, 8)) {
    LaxProfDiagram pt = lax_diagram_of(OverBase{constant_functor(fib, one, 0)});
    CHECK(diagram_validate(pt).ok());
    if (fib->object_count() == 0) continue;
    pt.het[0].at[0].elements.push_back("extra");
    CHECK_FALSE(diagram_validate(pt).ok());
  }

  // Random mu faults on corpus diagrams are always caught.
  verify::Rng rng(65);
  int caught = 0, tried = 0;
  for (const OverBase& p : sample_overs(65, 60)) {
    LaxProfDiagram d = lax_diagram_of(p);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t k = 0; k < d.mu.size(); ++k)
      for (std::size_t j = 0; j < d.mu[k].cells.size(); ++j)
        if (!d.mu[k].cells[j].empty()) slots.push_back({k, j});
    if (slots.empty()) continue;
    const auto [k, j] = rng.pick(slots);
    const int fk = static_cast<int>(k) / d.base->morphism_count(), gk = static_cast<int>(k) % d.base->morphism_count();
    const int gf = d.base->compose(gk, fk);
    Function& fn = d.mu[k].cells[j];
    const int pos = rng.below(static_cast<int>(fn.size()));
    // Only a change of value can be a fault; find the codomain size from the pair.
    const FinCat& fy = *d.fiber[d.base->tgt(fk)];
    const FinCat& fz = *d.fiber[d.base->tgt(gk)];
    const int b2 = static_cast<int>(j) % fz.object_count();
    const int b = static_cast<int>(j) / fz.object_count() / fy.object_count();
    const int size = d.het[gf].value(b, b2).size();
    if (size < 2) continue;
    fn[pos] = (fn[pos] + 1) % size;
    ++tried;
    caught += !diagram_validate(d).ok();
  }
  CHECK(tried > 5);
  CHECK(caught == tried);
}

TEST_CASE("fracture round trip") {
  int strict = 0;
  CHECK(fracture_check(OverBase{identity_functor(share(FinCat::Builder{}.build()))}).ok());
  CHECK(fracture_check(double_cover()).ok());
  CHECK(fracture_check(z2_tower()).ok());
  for (const auto& kind : {std::optional<verify::Kind>{}, std::optional<verify::Kind>{verify::Kind::groupoids}}) {
    for (const OverBase& p : sample_overs(66, 40, kind)) {
      const FractureReport r = fracture_check(p);
      CHECK_MESSAGE(r.ok(), r.local_detail);
      REQUIRE(r.iso.has_value());
      CHECK(validate(*r.iso).ok());
      const LaxProfDiagram lax = lax_diagram_of(p);
      const LaxProfDiagram again = lax_diagram_of(collage_of_diagram(lax));
      std::string detail;
      CHECK_MESSAGE(diagrams_index_equal(lax, again, &detail), detail);
      // Both sides either strictify or report the same obstruction kind.
      std::optional<LocalData> la, lb;
      try {
        la = local_data(p);
      } catch (const NonFunctorialAction&) {
      }
      try {
        lb = local_data_from_diagram(lax);
      } catch (const NonFunctorialAction&) {
      }
      CHECK(la.has_value() == lb.has_value());
      std::string why;
      if (la && lb) CHECK_MESSAGE(local_data_agree(*la, *lb, &why), why);
      strict += la.has_value();
      CHECK(classify(p).is_exponential.holds == mu_all_bijective(lax));
    }
  }
  CHECK(strict > 40);
}
