#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "fcat/verify.hpp"

namespace fcat::verify {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::posets: return "posets";
    case Kind::groupoids: return "groupoids";
    case Kind::general: return "general";
    case Kind::over1: return "over-[1]";
    case Kind::over2: return "over-[2]";
  }
  return "general";
}

std::optional<Kind> parse_kind(const std::string& s) {
  for (Kind k : {Kind::posets, Kind::groupoids, Kind::general, Kind::over1, Kind::over2})
    if (s == kind_name(k)) return k;
  if (s == "over1") return Kind::over1;
  if (s == "over2") return Kind::over2;
  return std::nullopt;
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& salt, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : salt) h = (h ^ ch) * 1099511628211ULL;
  return splitmix(splitmix(seed ^ h) + index);
}

namespace {

std::string obj_label(int i) { return std::string(1, static_cast<char>('a' + i)); }

bool within(const CatRef& c, const Caps& caps) {
  return c && c->object_count() <= caps.max_objects && c->morphism_count() <= caps.max_morphisms;
}

}  // namespace

CatRef poset_category(int n, const std::vector<std::vector<bool>>& leq) {
  FinCat::Builder b;
  for (int i = 0; i < n; ++i) b.add_object(obj_label(i));
  std::vector<std::vector<int>> m(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) m[i][i] = b.add_identity(i, "id_" + obj_label(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j]) m[i][j] = b.add_morphism(obj_label(i) + obj_label(j), i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (m[i][j] >= 0 && m[j][k] >= 0) b.set_compose(m[j][k], m[i][j], m[i][k]);
  return share(b.build());
}

CatRef random_poset(Rng& rng, const Caps& caps) {
  for (;;) {
    const int n = std::max(rng.between(1, std::max(1, caps.max_objects)), rng.between(1, std::max(1, caps.max_objects)));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) leq[i][j] = rng.chance(1, 2);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    CatRef c = poset_category(n, leq);
    if (within(c, caps)) return c;
  }
}

namespace {

// Multiplication tables of Z/1, Z/2, Z/3 and S3 (elements 0 = unit).
std::vector<std::vector<int>> group_table(int which) {
  if (which < 3) {
    const int k = which + 1;
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) t[i][j] = (i + j) % k;
    return t;
  }
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> q{};
      for (int x = 0; x < 3; ++x) q[x] = perms[i][perms[j][x]];
      t[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
    }
  return t;
}

}  // namespace

CatRef random_groupoid(Rng& rng, const Caps& caps) {
  for (;;) {
    const int n = std::max(rng.between(1, std::max(1, caps.max_objects)), rng.between(1, std::max(1, caps.max_objects)));
    std::vector<int> comp(n);
    int ncomp = 0;
    for (int i = 0; i < n; ++i) comp[i] = i == 0 ? ncomp++ : rng.chance(1, 2) ? ncomp++ : rng.below(ncomp);
    std::vector<int> group(ncomp);
    for (auto& g : group) g = rng.chance(1, 6) ? 3 : rng.below(3);
    int total = 0;
    std::vector<int> size(ncomp, 0);
    for (int i = 0; i < n; ++i) ++size[comp[i]];
    for (int c = 0; c < ncomp; ++c) total += size[c] * size[c] * static_cast<int>(group_table(group[c]).size());
    if (total > caps.max_morphisms) continue;
    FinCat::Builder b;
    for (int i = 0; i < n; ++i) b.add_object(obj_label(i));
    std::map<std::tuple<int, int, int>, int> idx;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (comp[i] != comp[j]) continue;
        const int order = static_cast<int>(group_table(group[comp[i]]).size());
        for (int g = 0; g < order; ++g) {
          const int m = (i == j && g == 0) ? b.add_identity(i, "id_" + obj_label(i))
                                           : b.add_morphism(obj_label(i) + obj_label(j) + std::to_string(g), i, j);
          idx[{i, j, g}] = m;
        }
      }
    for (const auto& [k1, m1] : idx)
      for (const auto& [k2, m2] : idx) {
        const auto [i, j, g] = k1;
        const auto [j2, l, h] = k2;
        if (j2 != j) continue;
        b.set_compose(m2, m1, idx.at({i, l, group_table(group[comp[i]])[h][g]}));
      }
    return share(b.build());
  }
}

CatRef random_quotient(Rng& rng, const Caps& caps) {
  for (int attempt = 0; attempt < 30; ++attempt) {
    Graph g;
    const int n = rng.between(1, std::min(3, std::max(1, caps.max_objects)));
    for (int i = 0; i < n; ++i) g.objects.push_back(obj_label(i));
    const int ne = rng.between(1, 4);
    for (int e = 0; e < ne; ++e) g.edges.push_back({"g" + std::to_string(e), rng.below(n), rng.below(n)});
    auto walk = [&](int from, int len) {
      Word w{from, from, {}};
      for (int i = 0; i < len; ++i) {
        std::vector<int> outs;
        for (int e = 0; e < ne; ++e)
          if (g.edges[e].src == w.tgt) outs.push_back(e);
        if (outs.empty()) break;
        const int e = rng.pick(outs);
        w.edges.push_back(e);
        w.tgt = g.edges[e].tgt;
      }
      return w;
    };
    std::vector<Relation> rels;
    const int nr = rng.between(0, 3);
    for (int r = 0; r < nr; ++r) {
      const Word a = walk(rng.below(n), rng.between(1, 3));
      if (a.edges.empty()) continue;
      for (int t = 0; t < 20; ++t) {
        Word b = walk(a.src, rng.between(0, 3));
        if (b.tgt == a.tgt && b.edges != a.edges) {
          rels.push_back({a, b});
          break;
        }
      }
    }
    try {
      CatRef c = share(close_generators(g, rels, static_cast<std::size_t>(caps.max_morphisms)));
      if (within(c, caps)) return c;
    } catch (const ClosureExceeded&) {
    } catch (const PreconditionFailed&) {
    }
  }
  return random_poset(rng, caps);
}

CatRef random_known_shape(Rng& rng, const Caps& caps) {
  std::vector<CatRef> shapes_list = {shapes::terminal(),       shapes::simplex(1),   shapes::simplex(2),
                                     shapes::simplex(3),       shapes::cyclic_group(2), shapes::cyclic_group(3),
                                     shapes::walking_iso(),    shapes::idempotent(), shapes::parallel_pair(),
                                     shapes::span(),           shapes::cospan(),     shapes::codiscrete(3),
                                     shapes::discrete(2),      shapes::symmetric_group3()};
  std::vector<CatRef> ok;
  for (const auto& c : shapes_list)
    if (within(c, caps)) ok.push_back(c);
  if (ok.empty()) return shapes::terminal();
  return rng.pick(ok);
}

CatRef random_category(Rng& rng, const Caps& caps, const std::vector<Kind>& kinds) {
  std::vector<Kind> ks;
  for (Kind k : kinds)
    if (k == Kind::posets || k == Kind::groupoids || k == Kind::general) ks.push_back(k);
  if (ks.empty()) ks = {Kind::posets, Kind::groupoids, Kind::general};
  switch (rng.pick(ks)) {
    case Kind::posets: return random_poset(rng, caps);
    case Kind::groupoids: return random_groupoid(rng, caps);
    default: {
      const int r = rng.below(10);
      if (r < 4) return random_quotient(rng, caps);
      if (r < 7) return random_poset(rng, caps);
      if (r < 9) return random_known_shape(rng, caps);
      return random_groupoid(rng, caps);
    }
  }
}

std::optional<FinFunctor> random_functor(Rng& rng, const CatRef& c, const CatRef& d) {
  std::vector<FinFunctor> found;
  FunctorSearchOptions opt;
  opt.node_budget = 200000;
  try {
    for_each_functor(c, d, opt, [&](const FinFunctor& f) {
      found.push_back(f);
      return found.size() < 4000;
    });
  } catch (const CapExceeded&) {
  }
  if (found.empty()) return std::nullopt;
  return rng.pick(found);
}

// --- profunctors ------------------------------------------------------------

Profunctor corepresentable_profunctor(const FinFunctor& g) {
  const CatRef& c = g.cod;
  const CatRef& d = g.dom;
  const FinCat& cc = *c;
  const FinCat& dd = *d;
  Profunctor h{c, d, {}, {}, {}};
  std::vector<std::vector<int>> lists;
  for (int x = 0; x < cc.object_count(); ++x)
    for (int y = 0; y < dd.object_count(); ++y) {
      auto hs = cc.hom(x, g.obj[y]);
      lists.emplace_back(hs.begin(), hs.end());
      FinSet s;
      for (int m : hs) s.elements.push_back(cc.morphism_name(m));
      h.at.push_back(std::move(s));
    }
  const int nd = dd.object_count(), nc = cc.object_count();
  auto pos = [](const std::vector<int>& v, int m) { return static_cast<int>(std::find(v.begin(), v.end(), m) - v.begin()); };
  for (int u = 0; u < cc.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) {
      Function fn;
      for (int m : lists[cc.tgt(u) * nd + y]) fn.push_back(pos(lists[cc.src(u) * nd + y], cc.compose(m, u)));
      h.lact.push_back(std::move(fn));
    }
  for (int v = 0; v < dd.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) {
      Function fn;
      for (int m : lists[x * nd + dd.src(v)]) fn.push_back(pos(lists[x * nd + dd.tgt(v)], cc.compose(g.mor[v], m)));
      h.ract.push_back(std::move(fn));
    }
  return h;
}

Profunctor sum_profunctor(const Profunctor& h, const Profunctor& k) {
  Profunctor out{h.left, h.right, {}, {}, {}};
  for (std::size_t i = 0; i < h.at.size(); ++i) {
    FinSet s;
    for (const auto& e : h.at[i].elements) s.elements.push_back("0:" + e);
    for (const auto& e : k.at[i].elements) s.elements.push_back("1:" + e);
    out.at.push_back(std::move(s));
  }
  auto join = [](const std::vector<Function>& a, const std::vector<Function>& b, const std::vector<FinSet>& target,
                 const std::function<int(std::size_t)>& tgt_index) {
    std::vector<Function> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      Function fn = a[i];
      const int off = target[tgt_index(i)].size();
      for (int v : b[i]) fn.push_back(off + v);
      out.push_back(std::move(fn));
    }
    return out;
  };
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const std::size_t nd = d.object_count(), nc = c.object_count();
  out.lact = join(h.lact, k.lact, h.at, [&](std::size_t i) { return c.src(static_cast<int>(i / nd)) * nd + i % nd; });
  out.ract = join(h.ract, k.ract, h.at, [&](std::size_t i) { return (i % nc) * nd + d.tgt(static_cast<int>(i / nc)); });
  return out;
}

Profunctor generated_subprofunctor(const Profunctor& h, const std::vector<std::vector<bool>>& marks_in) {
  const FinCat& c = *h.left;
  const FinCat& d = *h.right;
  const int nc = c.object_count(), nd = d.object_count();
  auto marks = marks_in;
  std::vector<std::tuple<int, int, int>> work;
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nd; ++y)
      for (int e = 0; e < h.value(x, y).size(); ++e)
        if (marks[x * nd + y][e]) work.emplace_back(x, y, e);
  while (!work.empty()) {
    const auto [x, y, e] = work.back();
    work.pop_back();
    auto visit = [&](int x2, int y2, int e2) {
      if (!marks[x2 * nd + y2][e2]) {
        marks[x2 * nd + y2][e2] = true;
        work.emplace_back(x2, y2, e2);
      }
    };
    for (int u : c.in(x)) visit(c.src(u), y, h.left_action(u, y)[e]);
    for (int v : d.out(y)) visit(x, d.tgt(v), h.right_action(v, x)[e]);
  }
  std::vector<std::vector<int>> newpos(h.at.size());
  Profunctor out{h.left, h.right, {}, {}, {}};
  for (std::size_t i = 0; i < h.at.size(); ++i) {
    FinSet s;
    newpos[i].assign(h.at[i].size(), -1);
    for (int e = 0; e < h.at[i].size(); ++e)
      if (marks[i][e]) {
        newpos[i][e] = s.size();
        s.elements.push_back(h.at[i].elements[e]);
      }
    out.at.push_back(std::move(s));
  }
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int y = 0; y < nd; ++y) {
      Function fn;
      const int from = c.tgt(u) * nd + y, to = c.src(u) * nd + y;
      for (int e = 0; e < h.at[from].size(); ++e)
        if (marks[from][e]) fn.push_back(newpos[to][h.left_action(u, y)[e]]);
      out.lact.push_back(std::move(fn));
    }
  for (int v = 0; v < d.morphism_count(); ++v)
    for (int x = 0; x < nc; ++x) {
      Function fn;
      const int from = x * nd + d.src(v), to = x * nd + d.tgt(v);
      for (int e = 0; e < h.at[from].size(); ++e)
        if (marks[from][e]) fn.push_back(newpos[to][h.right_action(v, x)[e]]);
      out.ract.push_back(std::move(fn));
    }
  return out;
}

Profunctor random_profunctor(Rng& rng, const CatRef& c, const CatRef& d) {
  if (rng.chance(1, 12)) return empty_profunctor(c, d);
  auto one = [&]() -> Profunctor {
    Profunctor base;
    if (rng.chance(1, 2)) {
      auto f = random_functor(rng, c, d);
      if (!f) return empty_profunctor(c, d);
      base = representable_profunctor(*f);
    } else {
      auto g = random_functor(rng, d, c);
      if (!g) return empty_profunctor(c, d);
      base = corepresentable_profunctor(*g);
    }
    if (rng.chance(1, 3)) return base;
    std::vector<std::vector<bool>> marks;
    for (const auto& s : base.at) {
      std::vector<bool> m(s.size());
      for (int e = 0; e < s.size(); ++e) m[e] = rng.chance(1, 4);
      marks.push_back(std::move(m));
    }
    return generated_subprofunctor(base, marks);
  };
  Profunctor h = one();
  if (rng.chance(1, 3)) h = sum_profunctor(h, one());
  return h;
}

// --- strict diagrams --------------------------------------------------------

namespace {

// Category of morphisms out of k0 in K: objects h, morphisms v: h -> v∘h named "v.h".
struct Coslice {
  CatRef cat;
  std::vector<int> obj_of_mor;           // K morphism -> object or -1
  std::map<std::pair<int, int>, int> mor;  // (v, h) -> morphism
};

Coslice coslice(const FinCat& k, int k0) {
  Coslice s;
  s.obj_of_mor.assign(k.morphism_count(), -1);
  FinCat::Builder b;
  std::vector<int> objs(k.out(k0).begin(), k.out(k0).end());
  for (int h : objs) s.obj_of_mor[h] = b.add_object(k.morphism_name(h));
  for (int h : objs)
    for (int v : k.out(k.tgt(h))) {
      const int id = b.add_morphism(k.morphism_name(v) + "/" + k.morphism_name(h), s.obj_of_mor[h],
                                    s.obj_of_mor[k.compose(v, h)]);
      s.mor[{v, h}] = id;
      if (k.is_identity(v)) b.set_identity(s.obj_of_mor[h], id);
    }
  for (const auto& [k1, m1] : s.mor)
    for (int w : k.out(k.tgt(k.compose(k1.first, k1.second)))) {
      const int vh = k.compose(k1.first, k1.second);
      b.set_compose(s.mor.at({w, vh}), m1, s.mor.at({k.compose(w, k1.first), k1.second}));
    }
  s.cat = share(b.build());
  return s;
}

// X |-> coslice at G X, f |-> precomposition with G f.
StrictCatDiagram coslice_diagram(const CatRef& base, const CatRef& k, const FinFunctor& g) {
  const FinCat& c = *base;
  StrictCatDiagram d{base, {}, {}};
  std::vector<Coslice> cs;
  for (int x = 0; x < c.object_count(); ++x) {
    cs.push_back(coslice(*k, g.obj[x]));
    d.at.push_back(cs.back().cat);
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    const int x = c.src(f), y = c.tgt(f), gf = g.mor[f];
    const FinCat& ay = *cs[y].cat;
    FinFunctor act{cs[y].cat, cs[x].cat, {}, {}};
    std::vector<int> ymor(ay.object_count());
    for (int h = 0; h < k->morphism_count(); ++h)
      if (cs[y].obj_of_mor[h] >= 0) ymor[cs[y].obj_of_mor[h]] = h;
    for (int o = 0; o < ay.object_count(); ++o) act.obj.push_back(cs[x].obj_of_mor[k->compose(ymor[o], gf)]);
    std::vector<std::pair<int, int>> ypairs(ay.morphism_count());
    for (const auto& [vh, m] : cs[y].mor) ypairs[m] = vh;
    for (int m = 0; m < ay.morphism_count(); ++m)
      act.mor.push_back(cs[x].mor.at({ypairs[m].first, k->compose(ypairs[m].second, gf)}));
    d.act.push_back(std::move(act));
  }
  return d;
}

}  // namespace

StrictCatDiagram random_strict_diagram(Rng& rng, const Caps& caps, const CatRef& base_in) {
  Caps small{std::min(caps.max_objects, 3), std::min(caps.max_morphisms, 8)};
  for (;;) {
    CatRef base = base_in ? base_in : random_category(rng, small);
    const FinCat& c = *base;
    StrictCatDiagram d{base, {}, {}};
    const int type = rng.below(3);
    if (type == 0) {
      // Coslices of a functor G: C -> K, acted on by precomposition.
      CatRef k = random_category(rng, small);
      auto g = random_functor(rng, base, k);
      if (!g) continue;
      d = coslice_diagram(base, k, *g);
    } else if (type == 1) {
      // Discrete fibers: elements of a sum of representables, acted on by precomposition.
      std::vector<int> reps;
      const int nrep = rng.between(1, 2);
      for (int i = 0; i < nrep; ++i) reps.push_back(rng.below(c.object_count()));
      std::vector<std::vector<std::pair<int, int>>> elems(c.object_count());
      for (int x = 0; x < c.object_count(); ++x) {
        FinCat::Builder b;
        for (int i = 0; i < nrep; ++i)
          for (int h : c.hom(x, reps[i])) {
            const int o = b.add_object(std::to_string(i) + ":" + c.morphism_name(h));
            b.add_identity(o, "id_" + std::to_string(i) + ":" + c.morphism_name(h));
            elems[x].emplace_back(i, h);
          }
        d.at.push_back(share(b.build()));
      }
      for (int f = 0; f < c.morphism_count(); ++f) {
        const int x = c.src(f), y = c.tgt(f);
        FinFunctor act{d.at[y], d.at[x], {}, {}};
        for (const auto& [i, h] : elems[y]) {
          const auto target = std::make_pair(i, c.compose(h, f));
          act.obj.push_back(static_cast<int>(std::find(elems[x].begin(), elems[x].end(), target) - elems[x].begin()));
        }
        for (int o : act.obj) act.mor.push_back(d.at[x]->identity(o));
        d.act.push_back(std::move(act));
      }
    } else {
      CatRef a = random_category(rng, small);
      d.at.assign(c.object_count(), a);
      for (int f = 0; f < c.morphism_count(); ++f) d.act.push_back(identity_functor(a));
    }
    int total = 0;
    for (const auto& a : d.at) total += a->morphism_count();
    if (total * std::max(1, c.morphism_count()) > 12 * caps.max_morphisms) continue;
    if (!validate(d).ok()) continue;
    return d;
  }
}

OverBase random_over(Rng& rng, const Caps& caps, std::optional<Kind> kind) {
  Caps small{std::min(caps.max_objects, 3), std::min(caps.max_morphisms, 8)};
  auto base_for = [&]() -> CatRef {
    if (kind == Kind::over1) return shapes::interval();
    if (kind == Kind::over2) return shapes::simplex(2);
    if (kind == Kind::groupoids) return random_groupoid(rng, small);
    return random_category(rng, small);
  };
  for (;;) {
    const int r = rng.below(10);
    if (r < 3) {
      CatRef b = base_for();
      CatRef e = random_category(rng, caps);
      auto f = random_functor(rng, e, b);
      if (f) return OverBase{*f};
    } else if (r < 6) {
      StrictCatDiagram d = random_strict_diagram(rng, caps, base_for());
      Grothendieck g = grothendieck_strict(d);
      if (g.over.total().morphism_count() <= 4 * caps.max_morphisms) return g.over;
    } else if (r < 8) {
      StrictCatDiagram d = random_strict_diagram(rng, caps, base_for());
      Grothendieck g = grothendieck_strict(d);
      const FinCat& e = g.over.total();
      std::vector<int> keep;
      for (int o = 0; o < e.object_count(); ++o)
        if (rng.chance(2, 3)) keep.push_back(o);
      if (keep.empty()) continue;
      Subcategory sub = full_subcategory(g.over.proj.dom, keep);
      if (sub.cat->morphism_count() > 4 * caps.max_morphisms) continue;
      return OverBase{compose(g.over.proj, inclusion(sub, g.over.proj.dom))};
    } else if (r < 9) {
      if (kind && kind != Kind::over1) continue;
      CatRef c = random_category(rng, small), d = random_category(rng, small);
      return collage(random_profunctor(rng, c, d)).over;
    } else {
      if (kind) continue;
      CatRef c = random_known_shape(rng, Caps{2, 3});
      return OverBase{twisted_arrow(c).proj};
    }
  }
}

OverBase rebase_over(const OverBase& q, const CatRef& base) {
  if (identical(q.base(), *base)) return OverBase{FinFunctor{q.proj.dom, base, q.proj.obj, q.proj.mor}};
  if (!structurally_equal(q.base(), *base)) throw PreconditionFailed("rebase_over: bases differ");
  FinFunctor f{q.proj.dom, base, {}, {}};
  for (int x : q.proj.obj) f.obj.push_back(base->object(q.base().object_name(x)));
  for (int m : q.proj.mor) f.mor.push_back(base->morphism(q.base().morphism_name(m)));
  return OverBase{f};
}

// --- corpus -----------------------------------------------------------------

namespace {

void add_over_doc(Document& doc, const OverBase& p) {
  doc.add_category("B", p.proj.cod);
  if (p.proj.dom != p.proj.cod) doc.add_category("E", p.proj.dom);
  doc.add_functor("p", p.proj);
  doc.add_over("P", "p");
}

}  // namespace

std::vector<Instance> gen_corpus(const CorpusSpec& spec) {
  std::vector<Kind> kinds = spec.kinds;
  if (kinds.empty()) kinds = {Kind::posets, Kind::groupoids, Kind::general, Kind::over1, Kind::over2};
  const Caps caps{spec.max_objects, spec.max_morphisms};
  std::vector<Instance> out;
  for (int i = 0; i < spec.instance_count; ++i) {
    Instance inst;
    inst.index = static_cast<std::size_t>(i);
    inst.kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    inst.seed = mix_seed(spec.seed, std::string("corpus:") + kind_name(inst.kind), static_cast<std::uint64_t>(i));
    Rng rng(inst.seed);
    if (inst.kind == Kind::over1 || inst.kind == Kind::over2)
      add_over_doc(inst.doc, random_over(rng, caps, inst.kind));
    else
      inst.doc.add_category("C", random_category(rng, caps, {inst.kind}));
    out.push_back(std::move(inst));
  }
  return out;
}

// --- exhaustive enumeration -------------------------------------------------

namespace {

struct TableSearch {
  int n = 0;
  std::vector<int> src, tgt;
  std::vector<std::vector<int>> hom;  // [i*n+j]
  std::vector<std::vector<int>> comp;  // [g][f], -1 unknown or not composable
  std::vector<std::pair<int, int>> entries;
  std::vector<std::vector<int>> blocks;  // non-identity morphisms per (i, j)
  std::vector<std::vector<int>> obj_perms;
  std::set<std::vector<int>> seen;
  std::vector<CatRef> out;
  int m = 0;

  bool assoc_ok() const {
    for (int f = 0; f < m; ++f)
      for (int g = 0; g < m; ++g) {
        if (tgt[f] != src[g]) continue;
        const int gf = comp[g][f];
        if (gf < 0) continue;
        for (int h = 0; h < m; ++h) {
          if (tgt[g] != src[h]) continue;
          const int hg = comp[h][g];
          if (hg < 0) continue;
          const int l = comp[h][gf], r = comp[hg][f];
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    return true;
  }

  std::vector<int> key_for(const std::vector<int>& relabel) const {
    std::vector<int> inv(m);
    for (int i = 0; i < m; ++i) inv[relabel[i]] = i;
    std::vector<int> key;
    for (int g2 = 0; g2 < m; ++g2)
      for (int f2 = 0; f2 < m; ++f2) {
        const int g = inv[g2], f = inv[f2];
        key.push_back(tgt[f] == src[g] ? relabel[comp[g][f]] : -1);
      }
    return key;
  }

  std::vector<int> canonical_key() const {
    std::vector<int> best;
    for (const auto& p : obj_perms) {
      // Block (i, j) maps to block (p i, p j); try every ordering inside blocks.
      std::vector<int> relabel(m, -1);
      for (int i = 0; i < n; ++i) relabel[i] = p[i];
      std::vector<std::vector<int>> orders(blocks.size());
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        orders[b].resize(blocks[b].size());
        std::iota(orders[b].begin(), orders[b].end(), 0);
      }
      std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b == blocks.size()) {
          auto key = key_for(relabel);
          if (best.empty() || key < best) best = std::move(key);
          return;
        }
        const int i = static_cast<int>(b) / n, j = static_cast<int>(b) % n;
        const auto& target = blocks[static_cast<std::size_t>(p[i] * n + p[j])];
        std::sort(orders[b].begin(), orders[b].end());
        do {
          for (std::size_t k = 0; k < blocks[b].size(); ++k) relabel[blocks[b][k]] = target[orders[b][k]];
          rec(b + 1);
        } while (std::next_permutation(orders[b].begin(), orders[b].end()));
      };
      rec(0);
    }
    return best;
  }

  void emit() {
    auto key = canonical_key();
    if (!seen.insert(key).second) return;
    FinCat::Builder b;
    for (int i = 0; i < n; ++i) b.add_object(obj_label(i));
    for (int i = 0; i < n; ++i) b.add_identity(i, "id_" + obj_label(i));
    for (int k = n; k < m; ++k) b.add_morphism("f" + std::to_string(k - n + 1), src[k], tgt[k]);
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f)
        if (tgt[f] == src[g]) b.set_compose(g, f, comp[g][f]);
    out.push_back(share(b.build()));
  }

  void search(std::size_t k) {
    if (k == entries.size()) {
      emit();
      return;
    }
    const auto [g, f] = entries[k];
    for (int h : hom[static_cast<std::size_t>(src[f] * n + tgt[g])]) {
      comp[g][f] = h;
      if (assoc_ok()) search(k + 1);
    }
    comp[g][f] = -1;
  }
};

}  // namespace

std::vector<CatRef> small_categories(int max_objects, int max_morphisms) {
  std::vector<CatRef> out;
  out.push_back(share(FinCat::Builder().build()));
  for (int n = 1; n <= max_objects && n <= max_morphisms; ++n) {
    const int budget = max_morphisms - n;
    std::vector<int> h(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::function<void(std::size_t, int)> matrices = [&](std::size_t cell, int left) {
      if (cell == h.size()) {
        std::vector<std::vector<int>> autos;
        for (const auto& q : perms) {
          std::vector<int> hq(h.size());
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) hq[i * n + j] = h[q[i] * n + q[j]];
          if (hq < h) return;  // not the canonical representative
          if (hq == h) autos.push_back(q);
        }
        TableSearch ts;
        ts.n = n;
        ts.obj_perms = autos;
        for (int i = 0; i < n; ++i) {
          ts.src.push_back(i);
          ts.tgt.push_back(i);
        }
        ts.blocks.assign(h.size(), {});
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int c = 0; c < h[i * n + j]; ++c) {
              ts.blocks[i * n + j].push_back(static_cast<int>(ts.src.size()));
              ts.src.push_back(i);
              ts.tgt.push_back(j);
            }
        ts.m = static_cast<int>(ts.src.size());
        ts.hom.assign(h.size(), {});
        for (int k = 0; k < ts.m; ++k) ts.hom[ts.src[k] * n + ts.tgt[k]].push_back(k);
        ts.comp.assign(ts.m, std::vector<int>(ts.m, -1));
        for (int k = 0; k < ts.m; ++k) {
          ts.comp[ts.tgt[k]][k] = k;
          ts.comp[k][ts.src[k]] = k;
        }
        for (int g = n; g < ts.m; ++g)
          for (int f = n; f < ts.m; ++f)
            if (ts.tgt[f] == ts.src[g]) ts.entries.emplace_back(g, f);
        ts.search(0);
        for (auto& c : ts.out) out.push_back(std::move(c));
        return;
      }
      for (int v = 0; v <= left; ++v) {
        h[cell] = v;
        matrices(cell + 1, left - v);
      }
      h[cell] = 0;
    };
    matrices(0, budget);
  }
  return out;
}

// --- handcrafted exponentiability cases -------------------------------------

std::vector<HandcraftedCase> handcrafted_conduche_cases() {
  std::vector<HandcraftedCase> out;
  out.push_back({"outer coface {0,2} in [2]", OverBase{shapes::subposet_inclusion(2, {0, 2})}, false});
  out.push_back({"inert [1] -> [2] at 0", OverBase{shapes::inert(1, 2, 0)}, true});
  out.push_back({"inert [1] -> [2] at 1", OverBase{shapes::inert(1, 2, 1)}, true});
  {
    CatRef s2 = shapes::simplex(2), s1 = shapes::interval();
    FinFunctor f{s2, s1, {0, 0, 1}, {}};
    for (int m = 0; m < s2->morphism_count(); ++m) {
      const int a = f.obj[s2->src(m)], b = f.obj[s2->tgt(m)];
      f.mor.push_back(s1->hom(a, b)[0]);
    }
    out.push_back({"[2] -> [1] collapsing 0 and 1", OverBase{f}, true});
  }
  {
    std::vector<std::vector<bool>> leq(4, std::vector<bool>(4, false));
    for (int i = 0; i < 4; ++i) leq[i][i] = true;
    leq[0][1] = leq[0][2] = leq[1][3] = leq[2][3] = leq[0][3] = true;
    CatRef e = poset_category(4, leq), s2 = shapes::simplex(2);
    FinFunctor f{e, s2, {0, 1, 1, 2}, {}};
    for (int m = 0; m < e->morphism_count(); ++m) f.mor.push_back(s2->hom(f.obj[e->src(m)], f.obj[e->tgt(m)])[0]);
    out.push_back({"two paths over [2]", OverBase{f}, false});
  }
  out.push_back({"twisted arrow of [1]", OverBase{twisted_arrow(shapes::interval()).proj}, true});
  {
    CatRef g = shapes::cyclic_group(2), t = shapes::terminal();
    out.push_back({"BZ2 to the point", OverBase{constant_functor(g, t, 0)}, true});
  }
  {
    CatRef i = shapes::walking_iso(), t = shapes::terminal();
    out.push_back({"walking iso to the point", OverBase{constant_functor(i, t, 0)}, true});
  }
  {
    CatRef k = shapes::interval(), s2 = shapes::simplex(2);
    FinFunctor g{s2, k, {0, 0, 1}, {}};
    for (int m = 0; m < s2->morphism_count(); ++m) g.mor.push_back(k->hom(g.obj[s2->src(m)], g.obj[s2->tgt(m)])[0]);
    StrictCatDiagram d = coslice_diagram(s2, k, g);
    out.push_back({"Grothendieck construction over [2]", grothendieck_strict(d).over, true});
  }
  {
    CatRef pp = shapes::parallel_pair(), s1 = shapes::interval();
    FinFunctor f{pp, s1, {0, 1}, {}};
    for (int m = 0; m < pp->morphism_count(); ++m) f.mor.push_back(s1->hom(f.obj[pp->src(m)], f.obj[pp->tgt(m)])[0]);
    out.push_back({"parallel pair to [1]", OverBase{f}, true});
  }
  {
    CatRef d2 = shapes::discrete(2), s1 = shapes::interval();
    FinFunctor f{d2, s1, {0, 1}, {}};
    for (int m = 0; m < d2->morphism_count(); ++m) f.mor.push_back(s1->identity(f.obj[d2->src(m)]));
    out.push_back({"two points to [1]", OverBase{f}, true});
  }
  return out;
}

}  // namespace fcat::verify
