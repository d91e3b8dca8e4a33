#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "fcat/fracture.hpp"
#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "fcat/verify.hpp"
#include "json.hpp"

namespace fcat::verify {

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"end-formula",         "collage-roundtrip", "conduche-agreement",
                                               "fracture-roundtrip",  "internal-hom",      "straighten-roundtrip",
                                               "double-cat-laws"};
  return ids;
}

namespace {

Caps caps_of(const CorpusSpec& s) { return Caps{s.max_objects, s.max_morphisms}; }
Caps shrink(const Caps& c, int objects, int morphisms) {
  return Caps{std::min(c.max_objects, objects), std::min(c.max_morphisms, morphisms)};
}

std::optional<Kind> over_kind(const std::vector<Kind>& kinds, Rng& rng) {
  std::vector<Kind> ks;
  for (Kind k : kinds)
    if (k == Kind::over1 || k == Kind::over2 || k == Kind::groupoids) ks.push_back(k);
  if (ks.empty()) return std::nullopt;
  return rng.pick(ks);
}

void add_over(Document& doc, const std::string& prefix, const OverBase& p, const std::string& base_name) {
  if (!doc.has(base_name)) doc.add_category(base_name, p.proj.cod);
  doc.add_category("E" + prefix, p.proj.dom);
  doc.add_functor("p" + prefix, p.proj);
  doc.add_over(prefix, "p" + prefix);
}

OverBase random_over_interval(Rng& rng, const Caps& caps) {
  if (rng.chance(1, 2)) {
    CatRef c = random_category(rng, shrink(caps, 2, 4)), d = random_category(rng, shrink(caps, 2, 4));
    return collage(random_profunctor(rng, c, d)).over;
  }
  CatRef e = random_category(rng, shrink(caps, 3, 6));
  return OverBase{*random_functor(rng, e, shapes::interval())};
}

// --- instance generators ----------------------------------------------------

Document instance_end(Rng& rng, const CorpusSpec& spec) {
  Document doc;
  CatRef c = random_category(rng, caps_of(spec), spec.kinds);
  CatRef d = random_category(rng, caps_of(spec), spec.kinds);
  doc.add_category("C", c);
  doc.add_category("D", d);
  doc.add_functor("F", *random_functor(rng, c, d));
  doc.add_functor("G", *random_functor(rng, c, d));
  return doc;
}

Document instance_collage(Rng& rng, const CorpusSpec& spec) {
  Document doc;
  const Caps small = shrink(caps_of(spec), 3, 8);
  CatRef c = random_category(rng, small, spec.kinds), d = random_category(rng, small, spec.kinds);
  doc.add_category("C", c);
  doc.add_category("D", d);
  doc.add_profunctor("H", random_profunctor(rng, c, d));
  CatRef e = random_category(rng, caps_of(spec), spec.kinds);
  doc.add_category("I", shapes::interval());
  doc.add_category("E", e);
  doc.add_functor("m", *random_functor(rng, e, shapes::interval()));
  doc.add_over("M", "m");
  return doc;
}

Document instance_conduche(Rng& rng, const CorpusSpec& spec) {
  Document doc;
  add_over(doc, "P", random_over(rng, caps_of(spec), over_kind(spec.kinds, rng)), "B");
  return doc;
}

Document instance_fracture(Rng& rng, const CorpusSpec& spec) {
  Document doc;
  std::optional<Kind> k = over_kind(spec.kinds, rng);
  if (!k && rng.chance(1, 3)) k = Kind::groupoids;
  add_over(doc, "P", random_over(rng, caps_of(spec), k), "B");
  return doc;
}

Document instance_internal_hom(Rng& rng, const CorpusSpec& spec) {
  Document doc;
  const Caps caps = caps_of(spec);
  doc.add_category("I", shapes::interval());
  add_over(doc, "M", random_over_interval(rng, caps), "I");
  add_over(doc, "N", random_over_interval(rng, caps), "I");
  if (rng.chance(2, 3)) {
    OverBase a = rng.chance(1, 4) ? OverBase{identity_functor(shapes::interval())}
                                  : OverBase{*random_functor(rng, random_category(rng, shrink(caps, 2, 4)),
                                                             shapes::interval())};
    add_over(doc, "A", a, "I");
  }
  return doc;
}

Document instance_straighten(Rng& rng, const CorpusSpec& spec) {
  StrictCatDiagram d = random_strict_diagram(rng, caps_of(spec));
  Document doc;
  const FinCat& c = *d.base;
  doc.add_category("base", d.base);
  for (int x = 0; x < c.object_count(); ++x) doc.add_category("at." + c.object_name(x), d.at[x]);
  for (int f = 0; f < c.morphism_count(); ++f) doc.add_functor("act." + c.morphism_name(f), d.act[f]);
  return doc;
}

Document instance_double(Rng& rng, const CorpusSpec& spec) {
  Document doc;
  const Caps small = shrink(caps_of(spec), 3, 6);
  std::vector<CatRef> cats;
  for (const char* n : {"C", "D", "E", "F"}) {
    cats.push_back(random_category(rng, small, spec.kinds));
    doc.add_category(n, cats.back());
  }
  doc.add_profunctor("H", random_profunctor(rng, cats[0], cats[1]));
  doc.add_profunctor("K", random_profunctor(rng, cats[1], cats[2]));
  doc.add_profunctor("L", random_profunctor(rng, cats[2], cats[3]));
  return doc;
}

// --- checks -----------------------------------------------------------------

Outcome pass(std::string w = {}) { return Outcome{Status::pass, std::move(w)}; }
Outcome fail(std::string w) { return Outcome{Status::fail, std::move(w)}; }

Outcome check_end(const Document& doc, bool mutate) {
  const FinFunctor& f = doc.functor("F");
  const FinFunctor& g = doc.functor("G");
  NatSet brute = brute_nat_set(f, g);
  std::set<std::string> brute_names(brute.set.elements.begin(), brute.set.elements.end());
  if (mutate) {
    // Fault: the end forgets the twisted morphisms and keeps every family.
    std::size_t families = 1;
    for (int x = 0; x < f.dom->object_count(); ++x) families *= f.cod->hom(f.obj[x], g.obj[x]).size();
    if (families != brute.set.elements.size())
      return fail("unconstrained end has " + std::to_string(families) + " elements, brute force finds " +
                  std::to_string(brute.set.elements.size()));
    return pass();
  }
  NatSet viaend = nat_set_via_end(f, g);
  if (viaend.set.size() != brute.set.size())
    return fail("end has " + std::to_string(viaend.set.size()) + " elements, brute force finds " +
                std::to_string(brute.set.size()));
  std::set<std::string> used;
  for (std::size_t i = 0; i < viaend.transformations.size(); ++i) {
    const NatTrans& t = viaend.transformations[i];
    if (!validate(t).ok()) return fail("end element " + nat_name(t) + " is not natural");
    const std::string n = nat_name(t);
    if (!brute_names.count(n)) return fail("end element " + n + " is missing from the brute-force set");
    if (!used.insert(n).second) return fail("end elements collide at " + n);
  }
  return pass("bijection on " + std::to_string(used.size()) + " transformations");
}

Outcome check_collage(const Document& doc, bool mutate) {
  const Profunctor& h = doc.profunctor("H");
  Collage col = collage(h);
  Extraction ex = extract(col.over);
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const int nc = c.object_count(), nd = d.object_count();
  std::vector<int> o0(nc), o1(nd), m0(c.morphism_count()), m1(d.morphism_count());
  for (int x = 0; x < nc; ++x) o0[x] = ex.fiber0.obj_back[col.left_obj[x]];
  for (int y = 0; y < nd; ++y) o1[y] = ex.fiber1.obj_back[col.right_obj[y]];
  for (int u = 0; u < c.morphism_count(); ++u) m0[u] = ex.fiber0.mor_back[col.left_mor[u]];
  for (int v = 0; v < d.morphism_count(); ++v) m1[v] = ex.fiber1.mor_back[col.right_mor[v]];
  Profunctor back{h.left, h.right, {}, {}, {}};
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y) back.at.push_back(ex.prof.value(o0[x], o1[y]));
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) back.lact.push_back(ex.prof.left_action(m0[u], o1[y]));
  for (int v = 0; v < d.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) back.ract.push_back(ex.prof.right_action(m1[v], o0[x]));
  if (mutate) {
    // Fault: extraction skips heteromorphisms out of the first object of fiber 0.
    std::size_t want = 0, got = 0;
    for (int x = 0; x < nc; ++x)
      for (int y = 0; y < nd; ++y) {
        want += h.value(x, y).size();
        if (x != 0) got += back.value(x, y).size();
      }
    if (want != got)
      return fail("extracted " + std::to_string(got) + " heteromorphisms, the profunctor has " + std::to_string(want));
    return pass();
  }
  if (!validate(back).ok()) return fail("extracted profunctor is invalid: " + validate(back).summary());
  auto iso = find_profunctor_iso(h, back);
  if (!iso || !is_profunctor_map(h, back, *iso) || !is_bijective(h, back, *iso))
    return fail("extract(collage(H)) is not isomorphic to H");
  const OverBase& m = doc.over("M");
  Extraction em = extract(m);
  OverBase rebuilt = rebase_over(collage(em.prof).over, m.proj.cod);
  auto iso2 = search_iso_over_base(m, rebuilt);
  if (!iso2) return fail("collage(extract(M)) is not isomorphic to M over [1]");
  if (!validate(*iso2).ok()) return fail("reconstruction iso is not a functor");
  return pass("both round trips give isomorphisms");
}

// Factorization lifts exist, without the connectivity requirement.
bool lifts_nonempty(const OverBase& p, std::string* witness) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  for (int m = 0; m < e.morphism_count(); ++m) {
    const int pm = p.proj.mor[m];
    for (int f : c.out(c.src(pm)))
      for (int g : c.hom(c.tgt(f), c.tgt(pm))) {
        if (c.compose(g, f) != pm) continue;
        bool found = false;
        for (int mf : e.out(e.src(m))) {
          if (p.proj.mor[mf] != f) continue;
          for (int mg : e.hom(e.tgt(mf), e.tgt(m)))
            if (p.proj.mor[mg] == g && e.compose(mg, mf) == m) found = true;
          if (found) break;
        }
        if (!found) {
          if (witness)
            *witness = "no lift of " + c.morphism_name(g) + "." + c.morphism_name(f) + " through " + e.morphism_name(m);
          return false;
        }
      }
  }
  return true;
}

bool is_interval(const FinCat& c) {
  try {
    interval_sides(c);
    return true;
  } catch (const PreconditionFailed&) {
    return false;
  }
}

Outcome check_conduche(const Document& doc, bool mutate) {
  const OverBase& p = doc.over("P");
  if (mutate) {
    std::string w;
    const bool naive = lifts_nonempty(p, &w);
    Verdict coend = is_exponential_coend(p);
    if (naive != coend.holds)
      return fail("lift existence says " + std::string(naive ? "exponential" : "not exponential") +
                  ", coend criterion says " + (coend.holds ? "exponential" : "not exponential") + ": " +
                  coend.witness);
    return pass();
  }
  FibrationClass k = classify(p);
  if (!k.criteria_agree)
    return fail("lifting criterion (" + std::string(k.is_exponential.holds ? "holds" : "fails") + ": " +
                k.is_exponential.witness + ") disagrees with coend criterion (" +
                (k.exponential_coend.holds ? "holds" : "fails") + ": " + k.exponential_coend.witness + ")");
  auto v = k.implication_violations();
  if (!v.empty()) return fail("implication violated: " + v.front());
  if (is_interval(p.base()) && !k.is_exponential.holds)
    return fail("functor into [1] is not exponential: " + k.is_exponential.witness);
  return pass(k.is_exponential.holds ? "exponential" : "not exponential");
}

Outcome check_fracture(const Document& doc, bool mutate) {
  const OverBase& p = doc.over("P");
  if (mutate) {
    // Fault: the heteromorphisms over one non-identity morphism are dropped.
    LaxProfDiagram d = lax_diagram_of(p);
    const FinCat& c = p.base();
    int target = -1;
    for (int f = 0; f < c.morphism_count() && target < 0; ++f) {
      if (c.is_identity(f)) continue;
      for (const auto& s : d.het[f].at)
        if (s.size() > 0) target = f;
    }
    if (target < 0) return pass();
    d.het[target] = empty_profunctor(d.het[target].left, d.het[target].right);
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.tgt(target) == c.src(g))
        for (auto& cell : d.mu_of(target, g).cells) cell.clear();
      if (c.tgt(g) == c.src(target))
        for (auto& cell : d.mu_of(g, target).cells) cell.clear();
    }
    ValidationReport vr = diagram_validate(d);
    if (!vr.ok()) return fail("gluing data rejected: " + vr.violations.front());
    OverBase q = collage_of_diagram(d);
    if (!search_iso_over_base(p, q)) return fail("reconstruction over C is not isomorphic to p");
    return pass();
  }
  FractureReport r = fracture_check(p);
  if (!r.diagram_valid) return fail("gluing data invalid: " + r.diagram_violations.front());
  if (!r.iso_found) return fail("reconstruction over C is not isomorphic to p");
  if (!r.local_consistent) return fail("local data: " + r.local_detail);
  return pass(r.local_detail);
}

std::vector<int> key_of(const FinFunctor& f) {
  std::vector<int> k = f.obj;
  k.push_back(-1);
  k.insert(k.end(), f.mor.begin(), f.mor.end());
  return k;
}

Outcome check_internal_hom(const Document& doc, bool mutate) {
  const OverBase& m = doc.over("M");
  const OverBase n = rebase_over(doc.over("N"), m.proj.cod);
  const IntervalSides sm = interval_sides(m.base());
  const Subcategory m0 = fiber(m, sm.zero), m1 = fiber(m, sm.one);
  const Subcategory n0 = fiber(n, sm.zero), n1 = fiber(n, sm.one);
  const HetTwisted tw = het_twisted(m);
  const FinCat& nn = n.total();
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<std::vector<int>>> groups;
  for (const FinFunctor& phi : functors_over(m, n, 20000)) {
    FinFunctor f{m0.cat, n0.cat, {}, {}}, g{m1.cat, n1.cat, {}, {}};
    for (int o : m0.obj_incl) f.obj.push_back(n0.obj_back[phi.obj[o]]);
    for (int u : m0.mor_incl) f.mor.push_back(n0.mor_back[phi.mor[u]]);
    for (int o : m1.obj_incl) g.obj.push_back(n1.obj_back[phi.obj[o]]);
    for (int v : m1.mor_incl) g.mor.push_back(n1.mor_back[phi.mor[v]]);
    std::vector<int> fam;
    for (int h : tw.het) fam.push_back(phi.mor[h]);
    groups[{key_of(f), key_of(g)}].push_back(std::move(fam));
  }
  const auto fs = enumerate_functors(m0.cat, n0.cat, 2000);
  const auto gs = enumerate_functors(m1.cat, n1.cat, 2000);
  if (fs.size() * gs.size() > 20000) throw CapExceeded("too many fiber functor pairs", 20000);
  std::size_t pairs = 0;
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto it = groups.find({key_of(f), key_of(g)});
      std::vector<std::vector<int>> expect = it == groups.end() ? std::vector<std::vector<int>>{} : it->second;
      std::sort(expect.begin(), expect.end());
      if (mutate) {
        // Fault: the limit is replaced by the product of its values.
        std::size_t count = 1;
        for (int h : tw.het)
          count *= nn.hom(n0.obj_incl[f.obj[m0.obj_back[m.total().src(h)]]],
                          n1.obj_incl[g.obj[m1.obj_back[m.total().tgt(h)]]])
                       .size();
        if (count != expect.size())
          return fail("unconstrained hom set has " + std::to_string(count) + " families, functors over [1] give " +
                      std::to_string(expect.size()));
        continue;
      }
      HetFamilies hs = hom_set_over_interval(m, n, f, g);
      auto got = hs.families;
      std::sort(got.begin(), got.end());
      if (got != expect)
        return fail("hom set over (F, G) has " + std::to_string(got.size()) + " families, universal property gives " +
                    std::to_string(expect.size()));
      ++pairs;
    }
  if (mutate) return pass();
  std::string detail = "hom sets agree on " + std::to_string(pairs) + " functor pairs";
  if (doc.overs.count("A")) {
    const OverBase a = rebase_over(doc.over("A"), m.proj.cod);
    BijectionWitness w = exponential_law_check(a, m, n, 20000);
    if (!w.ok) return fail("exponential law fails: " + w.detail);
    detail += "; exponential law bijection on " + std::to_string(w.left_count) + " maps";
  }
  return pass(detail);
}

StrictCatDiagram read_strict(const Document& doc) {
  StrictCatDiagram d;
  d.base = doc.category("base");
  const FinCat& c = *d.base;
  for (int x = 0; x < c.object_count(); ++x) d.at.push_back(doc.category("at." + c.object_name(x)));
  for (int f = 0; f < c.morphism_count(); ++f) {
    FinFunctor a = doc.functor("act." + c.morphism_name(f));
    if (!identical(*a.dom, *d.at[c.tgt(f)]) || !identical(*a.cod, *d.at[c.src(f)]))
      throw PreconditionFailed("act." + c.morphism_name(f) + " has the wrong endpoints");
    a.dom = d.at[c.tgt(f)];
    a.cod = d.at[c.src(f)];
    d.act.push_back(std::move(a));
  }
  return d;
}

Outcome check_straighten(const Document& doc, bool mutate) {
  StrictCatDiagram d = read_strict(doc);
  ValidationReport vr = validate(d);
  if (!vr.ok()) return fail("input diagram invalid: " + vr.summary());
  const FinCat& c = *d.base;
  Grothendieck gro = grothendieck_strict(d);
  const FinCat& e = gro.over.total();
  Cleavage cl = gro.cleavage;
  if (mutate) {
    // Fault: one chosen lift is replaced by another morphism over the same arrow.
    bool done = false;
    for (int f = 0; f < c.morphism_count() && !done; ++f) {
      if (c.is_identity(f)) continue;
      for (int t = 0; t < e.object_count() && !done; ++t) {
        const int cur = cl.lift[f][t];
        if (cur < 0) continue;
        for (int m : e.in(t))
          if (m != cur && gro.over.proj.mor[m] == f) {
            cl.lift[f][t] = m;
            done = true;
            break;
          }
      }
    }
  }
  Straightening st;
  try {
    st = straighten_locally_cartesian(gro.over, CleavagePolicy::explicit_cleavage, &cl);
  } catch (const NotLocallyCartesian& ex) {
    return fail(std::string("cleavage rejected: ") + ex.what());
  }
  std::vector<FinFunctor> iso;
  for (int x = 0; x < c.object_count(); ++x) {
    const Subcategory& fx = st.fibers[x];
    FinFunctor i{d.at[x], fx.cat, std::vector<int>(d.at[x]->object_count(), -1),
                 std::vector<int>(d.at[x]->morphism_count(), -1)};
    for (std::size_t o = 0; o < gro.objects.size(); ++o)
      if (gro.objects[o].first == x) i.obj[gro.objects[o].second] = fx.obj_back[o];
    for (std::size_t k = 0; k < gro.morphisms.size(); ++k)
      if (gro.morphisms[k].first == c.identity(x)) i.mor[gro.morphisms[k].second] = fx.mor_back[k];
    iso.push_back(std::move(i));
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    FinFunctor lhs = compose(st.transport[f], iso[c.tgt(f)]);
    FinFunctor rhs = compose(iso[c.src(f)], d.act[f]);
    if (lhs.obj != rhs.obj || lhs.mor != rhs.mor)
      return fail("transport along " + c.morphism_name(f) + " differs from the input action");
  }
  for (const auto& a : st.alpha)
    for (int comp : a.t.components)
      if (!a.t.src.cod->is_identity(comp))
        return fail("comparison (" + c.morphism_name(a.f) + ", " + c.morphism_name(a.g) + ") has a non-identity component");
  Straightening st2 = straighten_locally_cartesian(gro.over);
  for (int f = 0; f < c.morphism_count(); ++f) {
    FinFunctor lhs = compose(st2.transport[f], iso[c.tgt(f)]);
    FinFunctor rhs = compose(iso[c.src(f)], d.act[f]);
    if (!find_natural_iso(lhs, rhs))
      return fail("default cleavage: transport along " + c.morphism_name(f) + " is not isomorphic to the input action");
  }
  if (!st2.all_invertible) return fail("default cleavage: a comparison is not invertible");
  return pass("diagram recovered");
}

Outcome check_double(const Document& doc, bool mutate) {
  const Profunctor& h = doc.profunctor("H");
  const Profunctor& k = doc.profunctor("K");
  const Profunctor& l = doc.profunctor("L");
  const FinCat& c = *h.left;
  if (mutate) {
    // Fault: composition without the coend quotient.
    for (int x = 0; x < c.object_count(); ++x)
      for (int y = 0; y < h.right->object_count(); ++y) {
        std::size_t naive = 0;
        for (int x2 = 0; x2 < c.object_count(); ++x2) naive += c.hom(x, x2).size() * h.value(x2, y).size();
        if (naive != static_cast<std::size_t>(h.value(x, y).size()))
          return fail("uncoended hom∘H has " + std::to_string(naive) + " elements at (" + c.object_name(x) + ", " +
                      h.right->object_name(y) + "), H has " + std::to_string(h.value(x, y).size()));
      }
    return pass();
  }
  UnitorResult lu = left_unitor(h);
  if (!lu.ok) return fail("left unitor: " + lu.detail);
  UnitorResult ru = right_unitor(h);
  if (!ru.ok) return fail("right unitor: " + ru.detail);
  AssociatorResult as = associator(h, k, l);
  if (!as.ok) return fail("associator: " + as.detail);
  CatRef prod = product(h.left, h.right);
  FinFunctor id = identity_functor(prod);
  SetDiagram t = hom_diagram(id, id);
  FubiniResult fr = end_fubini(h.left, h.right, t);
  if (!fr.agree) return fail("Fubini: " + fr.detail);
  double families = 1;
  for (int x = 0; x < prod->object_count(); ++x) families *= static_cast<double>(prod->hom(x, x).size());
  if (families <= 100000) {
    const std::size_t brute = brute_nat_set(id, id).set.elements.size();
    if (brute != fr.direct)
      return fail("Fubini: end over C x D has " + std::to_string(fr.direct) + " elements, brute force " +
                  std::to_string(brute));
  }
  return pass("unitors, associator (" + std::to_string(as.triple_classes) + " classes) and Fubini agree");
}

using Generator = Document (*)(Rng&, const CorpusSpec&);
using Checker = Outcome (*)(const Document&, bool);

struct Theorem {
  Generator gen;
  Checker check;
};

const Theorem& lookup_theorem(const std::string& id) {
  static const std::map<std::string, Theorem> table = {
      {"end-formula", {instance_end, check_end}},
      {"collage-roundtrip", {instance_collage, check_collage}},
      {"conduche-agreement", {instance_conduche, check_conduche}},
      {"fracture-roundtrip", {instance_fracture, check_fracture}},
      {"internal-hom", {instance_internal_hom, check_internal_hom}},
      {"straighten-roundtrip", {instance_straighten, check_straighten}},
      {"double-cat-laws", {instance_double, check_double}},
  };
  auto it = table.find(id);
  if (it == table.end()) throw UnknownTheorem("unknown theorem '" + id + "'");
  return it->second;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, jobs)));
}

template <class Fn>
void parallel_for(std::size_t jobs, unsigned threads, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned n = worker_count(threads, jobs);
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

Document make_instance(const std::string& id, std::uint64_t instance_seed, const CorpusSpec& spec) {
  const Theorem& t = lookup_theorem(id);
  Rng rng(instance_seed);
  return t.gen(rng, spec);
}

Outcome check_document(const std::string& id, const Document& doc, bool mutate) {
  const Theorem& t = lookup_theorem(id);
  try {
    return t.check(doc, mutate);
  } catch (const CapExceeded& e) {
    return Outcome{Status::cap, e.what()};
  } catch (const std::exception& e) {
    return fail(std::string("error: ") + e.what());
  }
}

TheoremReport run_theorem(const std::string& id, const RunOptions& options) {
  lookup_theorem(id);
  const auto start = std::chrono::steady_clock::now();
  TheoremReport report;
  report.theorem = id;
  report.seed = options.spec.seed;
  report.mutate = options.mutate;
  struct Job {
    std::uint64_t seed = 0;
    std::string text;
    Outcome outcome;
  };
  std::vector<Job> jobs;
  if (id == "conduche-agreement")
    for (const auto& hc : handcrafted_conduche_cases()) {
      Document doc;
      add_over(doc, "P", hc.over, "B");
      jobs.push_back({0, serialize(doc), {}});
    }
  const std::size_t fixed = jobs.size();
  const int count = std::max(0, options.spec.instance_count);
  jobs.resize(fixed + static_cast<std::size_t>(count));
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    Job& job = jobs[i];
    try {
      if (i >= fixed) {
        job.seed = mix_seed(options.spec.seed, id, i - fixed);
        job.text = serialize(make_instance(id, job.seed, options.spec));
      }
      job.outcome = check_document(id, parse(job.text), options.mutate);
    } catch (const std::exception& e) {
      job.outcome = fail(std::string("error: ") + e.what());
    }
  });
  report.instances = jobs.size();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    if (j.outcome.status == Status::fail) report.failures.push_back({i, j.seed, j.outcome.witness, j.text});
    if (j.outcome.status == Status::cap) report.capped.push_back({i, j.seed, j.outcome.witness, j.text});
  }
  if (id == "conduche-agreement" && options.exhaustive_objects > 0) {
    ExhaustiveSummary ex = conduche_exhaustive(options.exhaustive_objects, options.exhaustive_morphisms, options.threads);
    for (const Failure& f : ex.failures)
      report.failures.push_back({jobs.size() + f.instance, 0, "exhaustive: " + f.witness, f.document});
    if (ex.failures.empty() && (ex.disagreements > 0 || ex.interval_failures > 0))
      report.failures.push_back({jobs.size(), 0, "exhaustive: criteria disagree", ""});
    report.exhaustive = std::move(ex);
  }
  report.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_json(const TheoremReport& r, bool with_millis) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["theorem"] = r.theorem;
  j["seed"] = r.seed;
  j["mutate"] = r.mutate;
  j["instances"] = r.instances;
  auto list = [](const std::vector<Failure>& fs) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& f : fs) {
      nlohmann::ordered_json o;
      o["instance"] = f.instance;
      o["instance_seed"] = f.instance_seed;
      o["witness"] = f.witness;
      o["document"] = f.document;
      a.push_back(std::move(o));
    }
    return a;
  };
  j["failures"] = list(r.failures);
  j["cap_exceeded"] = list(r.capped);
  if (r.exhaustive) {
    nlohmann::ordered_json e;
    e["categories"] = r.exhaustive->categories;
    e["functors"] = r.exhaustive->functors;
    e["disagreements"] = r.exhaustive->disagreements;
    e["interval_failures"] = r.exhaustive->interval_failures;
    j["exhaustive"] = std::move(e);
  }
  j["status"] = !r.failures.empty() ? "fail" : !r.capped.empty() ? "cap" : "pass";
  if (with_millis) j["millis"] = static_cast<std::int64_t>(r.millis);
  return j.dump(2) + "\n";
}

// --- exhaustive exponentiability corpus --------------------------------------

ExhaustiveSummary conduche_exhaustive(int max_objects, int max_morphisms, unsigned threads) {
  ExhaustiveSummary s;
  const std::vector<CatRef> cats = small_categories(max_objects, max_morphisms);
  s.categories = cats.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cats.size(); ++i)
    for (std::size_t j = 0; j < cats.size(); ++j) pairs.emplace_back(i, j);
  std::mutex mu;
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    std::size_t functors = 0, bad = 0, bad_interval = 0;
    std::vector<Failure> fs;
    const bool interval = is_interval(*cats[j]);
    for (const FinFunctor& f : enumerate_functors(cats[i], cats[j], 1000000)) {
      ++functors;
      const OverBase p{f};
      const Verdict lift = is_exponential_lifting(p);
      const Verdict coend = is_exponential_coend(p);
      const bool disagree = lift.holds != coend.holds;
      const bool interval_bad = interval && !lift.holds;
      bad += disagree;
      bad_interval += interval_bad;
      if ((disagree || interval_bad) && fs.size() < 3) {
        Document doc;
        add_over(doc, "P", p, "B");
        fs.push_back({k, 0,
                      disagree ? "lifting criterion " + std::string(lift.holds ? "holds" : "fails") +
                                     ", coend criterion " + (coend.holds ? "holds" : "fails") + ": " +
                                     lift.witness + coend.witness
                               : "functor into [1] is not exponential: " + lift.witness,
                      serialize(doc)});
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    s.functors += functors;
    s.disagreements += bad;
    s.interval_failures += bad_interval;
    for (auto& f : fs)
      if (s.failures.size() < 10) s.failures.push_back(std::move(f));
  });
  std::sort(s.failures.begin(), s.failures.end(),
            [](const Failure& a, const Failure& b) { return a.instance < b.instance; });
  return s;
}

}  // namespace fcat::verify
