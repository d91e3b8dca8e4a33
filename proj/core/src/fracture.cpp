#include "fcat/fracture.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace fcat {

namespace {

int position(std::span<const int> v, int m) { return static_cast<int>(std::find(v.begin(), v.end(), m) - v.begin()); }
int position(const std::vector<int>& v, int m) {
  return static_cast<int>(std::find(v.begin(), v.end(), m) - v.begin());
}

bool same_shape(const FinCat& a, const FinCat& b) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return false;
  for (int x = 0; x < a.object_count(); ++x)
    if (a.identity(x) != b.identity(x)) return false;
  for (int m = 0; m < a.morphism_count(); ++m)
    if (a.src(m) != b.src(m) || a.tgt(m) != b.tgt(m)) return false;
  for (int g = 0; g < a.morphism_count(); ++g)
    for (int f : a.in(a.src(g)))
      if (a.compose(g, f) != b.compose(g, f)) return false;
  return true;
}

bool same_profunctor_data(const Profunctor& h, const Profunctor& k) {
  if (h.at.size() != k.at.size()) return false;
  for (std::size_t i = 0; i < h.at.size(); ++i)
    if (h.at[i].size() != k.at[i].size()) return false;
  return h.lact == k.lact && h.ract == k.ract;
}

}  // namespace

int LaxProfDiagram::cell(int f, int g, int b, int b1, int b2) const {
  const FinCat& c = *base;
  const int ny = fiber[c.tgt(f)]->object_count();
  const int nz = fiber[c.tgt(g)]->object_count();
  return (b * ny + b1) * nz + b2;
}

int LaxProfDiagram::compose(int f, int g, int b, int b1, int b2, int xi, int zeta) const {
  const int nz = het[g].value(b1, b2).size();
  return mu_of(f, g).cells[cell(f, g, b, b1, b2)][xi * nz + zeta];
}

LaxProfDiagram lax_diagram_of(const OverBase& p) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  LaxProfDiagram d;
  d.base = p.proj.cod;
  std::vector<Subcategory> fibers;
  for (int x = 0; x < c.object_count(); ++x) {
    fibers.push_back(fiber(p, x));
    d.fiber.push_back(fibers.back().cat);
  }
  // hets[f][b*|Y|+b'] = morphisms of B over f
  std::vector<std::vector<std::vector<int>>> hets(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f) {
    const Subcategory& fx = fibers[c.src(f)];
    const Subcategory& fy = fibers[c.tgt(f)];
    const int nx = fx.cat->object_count(), ny = fy.cat->object_count();
    Profunctor h{fx.cat, fy.cat, {}, {}, {}};
    for (int b = 0; b < nx; ++b)
      for (int b2 = 0; b2 < ny; ++b2) {
        std::vector<int> list;
        for (int m : e.hom(fx.obj_incl[b], fy.obj_incl[b2]))
          if (p.proj.mor[m] == f) list.push_back(m);
        FinSet s;
        for (int m : list) s.elements.push_back(e.morphism_name(m));
        h.at.push_back(std::move(s));
        hets[f].push_back(std::move(list));
      }
    for (int u = 0; u < fx.cat->morphism_count(); ++u)
      for (int b2 = 0; b2 < ny; ++b2) {
        const auto& from = hets[f][fx.cat->tgt(u) * ny + b2];
        const auto& to = hets[f][fx.cat->src(u) * ny + b2];
        Function fn;
        for (int m : from) fn.push_back(position(to, e.compose(m, fx.mor_incl[u])));
        h.lact.push_back(std::move(fn));
      }
    for (int v = 0; v < fy.cat->morphism_count(); ++v)
      for (int b = 0; b < nx; ++b) {
        const auto& from = hets[f][b * ny + fy.cat->src(v)];
        const auto& to = hets[f][b * ny + fy.cat->tgt(v)];
        Function fn;
        for (int m : from) fn.push_back(position(to, e.compose(fy.mor_incl[v], m)));
        h.ract.push_back(std::move(fn));
      }
    d.het.push_back(std::move(h));
  }
  const int mc = c.morphism_count();
  d.mu.assign(static_cast<std::size_t>(mc) * mc, {});
  for (int f = 0; f < mc; ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      const int nx = d.fiber[c.src(f)]->object_count();
      const int ny = d.fiber[c.tgt(f)]->object_count();
      const int nz = d.fiber[c.tgt(g)]->object_count();
      auto& cells = d.mu_of(f, g).cells;
      cells.assign(static_cast<std::size_t>(nx) * ny * nz, {});
      for (int b = 0; b < nx; ++b)
        for (int b1 = 0; b1 < ny; ++b1)
          for (int b2 = 0; b2 < nz; ++b2) {
            Function fn;
            const auto& target = hets[gf][b * nz + b2];
            for (int xi : hets[f][b * ny + b1])
              for (int zeta : hets[g][b1 * nz + b2]) fn.push_back(position(target, e.compose(zeta, xi)));
            cells[(b * ny + b1) * nz + b2] = std::move(fn);
          }
    }
  return d;
}

ValidationReport diagram_validate(const LaxProfDiagram& d) {
  ValidationReport r;
  const FinCat& c = *d.base;
  const int mc = c.morphism_count();
  if (static_cast<int>(d.fiber.size()) != c.object_count() || static_cast<int>(d.het.size()) != mc ||
      d.mu.size() != static_cast<std::size_t>(mc) * mc) {
    r.add("diagram tables have the wrong size");
    return r;
  }
  for (int x = 0; x < c.object_count(); ++x)
    for (const auto& v : validate(*d.fiber[x]).violations) r.add("fiber '" + c.object_name(x) + "': " + v);
  for (int f = 0; f < mc; ++f) {
    const Profunctor& h = d.het[f];
    const std::string name = "het('" + c.morphism_name(f) + "')";
    if (!identical(*h.left, *d.fiber[c.src(f)]) || !identical(*h.right, *d.fiber[c.tgt(f)])) {
      r.add(name + " has the wrong fibers");
      continue;
    }
    for (const auto& v : validate(h).violations) r.add(name + ": " + v);
  }
  if (!r.ok()) return r;
  // Normality: het(id_X) is the hom profunctor of fiber X.
  for (int x = 0; x < c.object_count(); ++x)
    if (!same_profunctor_data(d.het[c.identity(x)], hom_profunctor(d.fiber[x])))
      r.add("normality fails: het('" + c.morphism_name(c.identity(x)) + "') is not the hom profunctor");
  for (int f = 0; f < mc; ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      const int nx = d.fiber[c.src(f)]->object_count();
      const int ny = d.fiber[c.tgt(f)]->object_count();
      const int nz = d.fiber[c.tgt(g)]->object_count();
      const auto& cells = d.mu_of(f, g).cells;
      const std::string pair = "mu('" + c.morphism_name(f) + "', '" + c.morphism_name(g) + "')";
      if (cells.size() != static_cast<std::size_t>(nx) * ny * nz) {
        r.add(pair + " has the wrong number of cells");
        continue;
      }
      for (int b = 0; b < nx; ++b)
        for (int b1 = 0; b1 < ny; ++b1)
          for (int b2 = 0; b2 < nz; ++b2) {
            const auto& fn = cells[(b * ny + b1) * nz + b2];
            const int target = d.het[gf].value(b, b2).size();
            if (static_cast<int>(fn.size()) != d.het[f].value(b, b1).size() * d.het[g].value(b1, b2).size()) {
              r.add(pair + " cell has the wrong domain");
              continue;
            }
            for (int v : fn)
              if (v < 0 || v >= target) {
                r.add(pair + " leaves het('" + c.morphism_name(gf) + "')");
                break;
              }
          }
    }
  if (!r.ok()) return r;
  const std::size_t before = r.violations.size();
  for (int f = 0; f < mc; ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      const FinCat& fx = *d.fiber[c.src(f)];
      const FinCat& fy = *d.fiber[c.tgt(f)];
      const FinCat& fz = *d.fiber[c.tgt(g)];
      const Profunctor& hf = d.het[f];
      const Profunctor& hg = d.het[g];
      const Profunctor& hgf = d.het[gf];
      const std::string pair = "mu('" + c.morphism_name(f) + "', '" + c.morphism_name(g) + "')";
      bool reported = false;
      auto fail = [&](const std::string& what) {
        if (!reported) r.add(pair + " " + what);
        reported = true;
      };
      // Balance over the middle fiber.
      for (int k = 0; k < fy.morphism_count() && !reported; ++k) {
        const int b1 = fy.src(k), b1p = fy.tgt(k);
        for (int b = 0; b < fx.object_count(); ++b)
          for (int b2 = 0; b2 < fz.object_count(); ++b2)
            for (int xi = 0; xi < hf.value(b, b1).size(); ++xi)
              for (int zeta = 0; zeta < hg.value(b1p, b2).size(); ++zeta)
                if (d.compose(f, g, b, b1p, b2, hf.right_action(k, b)[xi], zeta) !=
                    d.compose(f, g, b, b1, b2, xi, hg.left_action(k, b2)[zeta]))
                  fail("is not balanced over '" + fy.morphism_name(k) + "'");
      }
      // Compatibility with the outer actions.
      for (int u = 0; u < fx.morphism_count() && !reported; ++u)
        for (int b1 = 0; b1 < fy.object_count(); ++b1)
          for (int b2 = 0; b2 < fz.object_count(); ++b2)
            for (int xi = 0; xi < hf.value(fx.tgt(u), b1).size(); ++xi)
              for (int zeta = 0; zeta < hg.value(b1, b2).size(); ++zeta)
                if (d.compose(f, g, fx.src(u), b1, b2, hf.left_action(u, b1)[xi], zeta) !=
                    hgf.left_action(u, b2)[d.compose(f, g, fx.tgt(u), b1, b2, xi, zeta)])
                  fail("does not commute with the left action of '" + fx.morphism_name(u) + "'");
      for (int v = 0; v < fz.morphism_count() && !reported; ++v)
        for (int b = 0; b < fx.object_count(); ++b)
          for (int b1 = 0; b1 < fy.object_count(); ++b1)
            for (int xi = 0; xi < hf.value(b, b1).size(); ++xi)
              for (int zeta = 0; zeta < hg.value(b1, fz.src(v)).size(); ++zeta)
                if (d.compose(f, g, b, b1, fz.tgt(v), xi, hg.right_action(v, b1)[zeta]) !=
                    hgf.right_action(v, b)[d.compose(f, g, b, b1, fz.src(v), xi, zeta)])
                  fail("does not commute with the right action of '" + fz.morphism_name(v) + "'");
      // Strict units.
      if (c.is_identity(f) && !reported)
        for (int b = 0; b < fx.object_count(); ++b)
          for (int b1 = 0; b1 < fy.object_count(); ++b1)
            for (int b2 = 0; b2 < fz.object_count(); ++b2)
              for (int xi = 0; xi < hf.value(b, b1).size(); ++xi)
                for (int zeta = 0; zeta < hg.value(b1, b2).size(); ++zeta)
                  if (d.compose(f, g, b, b1, b2, xi, zeta) != hg.left_action(fx.hom(b, b1)[xi], b2)[zeta])
                    fail("violates the left unit law");
      if (c.is_identity(g) && !reported)
        for (int b = 0; b < fx.object_count(); ++b)
          for (int b1 = 0; b1 < fy.object_count(); ++b1)
            for (int b2 = 0; b2 < fz.object_count(); ++b2)
              for (int xi = 0; xi < hf.value(b, b1).size(); ++xi)
                for (int zeta = 0; zeta < hg.value(b1, b2).size(); ++zeta)
                  if (d.compose(f, g, b, b1, b2, xi, zeta) != hf.right_action(fy.hom(b1, b2)[zeta], b)[xi])
                    fail("violates the right unit law");
    }
  if (r.violations.size() != before) return r;
  // Associativity for composable triples.
  for (int f = 0; f < mc; ++f)
    for (int g : c.out(c.tgt(f)))
      for (int h : c.out(c.tgt(g))) {
        const int gf = c.compose(g, f), hg = c.compose(h, g);
        const FinCat& f0 = *d.fiber[c.src(f)];
        const FinCat& f1 = *d.fiber[c.tgt(f)];
        const FinCat& f2 = *d.fiber[c.tgt(g)];
        const FinCat& f3 = *d.fiber[c.tgt(h)];
        bool bad = false;
        for (int b0 = 0; b0 < f0.object_count() && !bad; ++b0)
          for (int b1 = 0; b1 < f1.object_count() && !bad; ++b1)
            for (int b2 = 0; b2 < f2.object_count() && !bad; ++b2)
              for (int b3 = 0; b3 < f3.object_count() && !bad; ++b3)
                for (int xi = 0; xi < d.het[f].value(b0, b1).size() && !bad; ++xi)
                  for (int zeta = 0; zeta < d.het[g].value(b1, b2).size() && !bad; ++zeta)
                    for (int eta = 0; eta < d.het[h].value(b2, b3).size() && !bad; ++eta) {
                      const int lhs = d.compose(gf, h, b0, b2, b3, d.compose(f, g, b0, b1, b2, xi, zeta), eta);
                      const int rhs = d.compose(f, hg, b0, b1, b3, xi, d.compose(g, h, b1, b2, b3, zeta, eta));
                      if (lhs != rhs) {
                        r.add("associativity fails on ('" + c.morphism_name(f) + "', '" + c.morphism_name(g) + "', '" +
                              c.morphism_name(h) + "') at (" + f0.object_name(b0) + ", " + f1.object_name(b1) + ", " +
                              f2.object_name(b2) + ", " + f3.object_name(b3) + ")");
                        bad = true;
                      }
                    }
      }
  return r;
}

OverBase collage_of_diagram(const LaxProfDiagram& d) {
  const FinCat& c = *d.base;
  std::vector<int> off(c.object_count() + 1, 0);
  for (int x = 0; x < c.object_count(); ++x) off[x + 1] = off[x] + d.fiber[x]->object_count();
  FinCat::Builder b;
  std::vector<int> obj_base;
  for (int x = 0; x < c.object_count(); ++x)
    for (int i = 0; i < d.fiber[x]->object_count(); ++i) {
      b.add_object("(" + c.object_name(x) + "," + d.fiber[x]->object_name(i) + ")");
      obj_base.push_back(x);
    }
  const int n = off.back();
  struct Mor {
    int f, s, t, xi;
  };
  std::vector<Mor> mors;
  std::map<std::tuple<int, int, int, int>, int> index;
  std::vector<std::string> names;
  std::map<std::string, int> count;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int x = obj_base[s], y = obj_base[t];
      for (int f : c.hom(x, y)) {
        const FinSet& set = d.het[f].value(s - off[x], t - off[y]);
        for (int xi = 0; xi < set.size(); ++xi) {
          index[{f, s, t, xi}] = static_cast<int>(mors.size());
          mors.push_back({f, s, t, xi});
          names.push_back("(" + c.morphism_name(f) + "," + set.elements[xi] + ")");
          ++count[names.back()];
        }
      }
    }
  for (std::size_t i = 0; i < mors.size(); ++i) {
    std::string name = names[i];
    if (count[name] > 1) {
      const int x = obj_base[mors[i].s], y = obj_base[mors[i].t];
      name += "@" + d.fiber[x]->object_name(mors[i].s - off[x]) + "," + d.fiber[y]->object_name(mors[i].t - off[y]);
    }
    b.add_morphism(name, mors[i].s, mors[i].t);
  }
  for (int s = 0; s < n; ++s) {
    const int x = obj_base[s];
    const FinCat& fx = *d.fiber[x];
    const int local = s - off[x];
    const int xi = position(fx.hom(local, local), fx.identity(local));
    auto it = index.find({c.identity(x), s, s, xi});
    if (it == index.end()) throw IncoherentDiagram("no identity heteromorphism at " + fx.object_name(local));
    b.set_identity(s, it->second);
  }
  std::vector<std::vector<int>> out_of(n);
  for (std::size_t i = 0; i < mors.size(); ++i) out_of[mors[i].s].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const Mor& m1 = mors[i];
    for (int j : out_of[m1.t]) {
      const Mor& m2 = mors[j];
      const int x = obj_base[m1.s], y = obj_base[m1.t], z = obj_base[m2.t];
      const int v = d.compose(m1.f, m2.f, m1.s - off[x], m1.t - off[y], m2.t - off[z], m1.xi, m2.xi);
      b.set_compose(j, static_cast<int>(i), index.at({c.compose(m2.f, m1.f), m1.s, m2.t, v}));
    }
  }
  CatRef total = share(b.build());
  ValidationReport rep = validate(*total);
  if (!rep.ok()) throw IncoherentDiagram("collage of the diagram is not a category: " + rep.summary());
  FinFunctor proj{total, d.base, obj_base, {}};
  for (const auto& m : mors) proj.mor.push_back(m.f);
  return OverBase{proj};
}

bool diagrams_index_equal(const LaxProfDiagram& a, const LaxProfDiagram& b, std::string* detail) {
  auto fail = [&](const std::string& s) {
    if (detail) *detail = s;
    return false;
  };
  if (!same_shape(*a.base, *b.base)) return fail("bases differ");
  if (a.fiber.size() != b.fiber.size() || a.het.size() != b.het.size() || a.mu.size() != b.mu.size())
    return fail("table sizes differ");
  for (std::size_t x = 0; x < a.fiber.size(); ++x)
    if (!same_shape(*a.fiber[x], *b.fiber[x])) return fail("fiber " + std::to_string(x) + " differs");
  for (std::size_t f = 0; f < a.het.size(); ++f)
    if (!same_profunctor_data(a.het[f], b.het[f])) return fail("het(" + a.base->morphism_name(static_cast<int>(f)) + ") differs");
  for (std::size_t i = 0; i < a.mu.size(); ++i)
    if (a.mu[i].cells != b.mu[i].cells) return fail("mu table " + std::to_string(i) + " differs");
  return true;
}

bool mu_all_bijective(const LaxProfDiagram& d, std::string* witness) {
  const FinCat& c = *d.base;
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      CompositeDetail comp = compose_profunctors_detail(d.het[f], d.het[g]);
      const int nz = d.fiber[c.tgt(g)]->object_count();
      for (int b = 0; b < d.fiber[c.src(f)]->object_count(); ++b)
        for (int b2 = 0; b2 < nz; ++b2) {
          const auto& classes = comp.reps[b * nz + b2];
          std::vector<int> image;
          for (const auto& reps : classes) {
            const auto& r0 = reps.front();
            image.push_back(d.compose(f, g, b, r0.d, b2, r0.h, r0.k));
          }
          std::sort(image.begin(), image.end());
          const bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
          if (!injective || static_cast<int>(image.size()) != d.het[gf].value(b, b2).size()) {
            if (witness)
              *witness = "mu('" + c.morphism_name(f) + "', '" + c.morphism_name(g) + "') at (" +
                         d.fiber[c.src(f)]->object_name(b) + ", " + d.fiber[c.tgt(g)]->object_name(b2) + ") is not " +
                         (injective ? "surjective" : "injective");
            return false;
          }
        }
    }
  return true;
}

// --- local data -------------------------------------------------------------

namespace {

// Candidate invertible lifts of every automorphism at every fiber object, and
// the conjugation t |-> xi_{b2} t xi_b^{-1} in terms of chosen candidates.
struct LiftProblem {
  CatRef fiber;
  AutGroup aut;
  struct Cand {
    int tgt;
    int token;
  };
  std::vector<std::vector<std::vector<Cand>>> cand;  // [a][b]
  std::function<int(int a, int token_b, int token_b2, int t)> conj;
};

std::vector<FinFunctor> strictify(const LiftProblem& lp, std::uint64_t budget) {
  const FinCat& fb = *lp.fiber;
  const int k = static_cast<int>(lp.aut.carrier.size());
  const int nb = fb.object_count();
  for (int a = 1; a < k; ++a)
    for (int b = 0; b < nb; ++b)
      if (lp.cand[a][b].empty())
        throw NonFunctorialAction("automorphism at position " + std::to_string(a) + " has no invertible lift out of '" +
                                  fb.object_name(b) + "'");
  std::vector<FinFunctor> act(k);
  act[0] = identity_functor(lp.fiber);
  std::vector<std::vector<int>> choice(k, std::vector<int>(nb, -1));
  std::uint64_t nodes = 0;
  auto same = [](const FinFunctor& x, const FinFunctor& y) { return x.obj == y.obj && x.mor == y.mor; };
  std::function<bool(int, int)> rec = [&](int a, int b) -> bool {
    if (a == k) return true;
    if (b == nb) {
      FinFunctor f{lp.fiber, lp.fiber, {}, {}};
      for (int o = 0; o < nb; ++o) f.obj.push_back(lp.cand[a][o][choice[a][o]].tgt);
      for (int t = 0; t < fb.morphism_count(); ++t) {
        const int s = fb.src(t), u = fb.tgt(t);
        f.mor.push_back(lp.conj(a, lp.cand[a][s][choice[a][s]].token, lp.cand[a][u][choice[a][u]].token, t));
      }
      act[a] = std::move(f);
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= a; ++j) {
          const int ij = lp.aut.table[i][j];
          if (std::max({i, j, ij}) != a) continue;
          if (!same(act[ij], compose(act[i], act[j]))) return false;
        }
      return rec(a + 1, 0);
    }
    for (std::size_t ci = 0; ci < lp.cand[a][b].size(); ++ci) {
      if (++nodes > budget) throw NonFunctorialAction("strictification budget exhausted");
      choice[a][b] = static_cast<int>(ci);
      if (rec(a, b + 1)) return true;
    }
    choice[a][b] = -1;
    return false;
  };
  if (k > 1) {
    if (!rec(1, 0)) throw NonFunctorialAction("no strictly functorial choice of invertible lifts");
  }
  return act;
}

std::vector<std::pair<int, std::vector<int>>> class_reps(const FinCat& c) {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (const auto& block : iso_classes(c).blocks) {
    std::vector<int> members = block;
    std::sort(members.begin(), members.end());
    out.emplace_back(members.front(), members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LocalData local_data(const OverBase& p, std::uint64_t budget) {
  const FinCat& e = p.total();
  const FinCat& c = p.base();
  LocalData ld;
  for (auto& [rep, members] : class_reps(c)) {
    LocalData::IsoClass cls;
    cls.representative = rep;
    cls.members = members;
    Subcategory fib = fiber(p, rep);
    cls.fiber = fib.cat;
    cls.aut = aut_group(c, rep);
    LiftProblem lp;
    lp.fiber = fib.cat;
    lp.aut = cls.aut;
    const int k = static_cast<int>(cls.aut.carrier.size());
    const int nb = fib.cat->object_count();
    lp.cand.assign(k, std::vector<std::vector<LiftProblem::Cand>>(nb));
    for (int a = 1; a < k; ++a)
      for (int b = 0; b < nb; ++b)
        for (int m : e.out(fib.obj_incl[b]))
          if (p.proj.mor[m] == cls.aut.carrier[a] && inverse_of(e, m)) lp.cand[a][b].push_back({fib.obj_back[e.tgt(m)], m});
    lp.conj = [&e, &fib](int, int xb, int xb2, int t) {
      const int inv = *inverse_of(e, xb);
      return fib.mor_back[e.compose(xb2, e.compose(fib.mor_incl[t], inv))];
    };
    cls.action = strictify(lp, budget);
    ld.classes.push_back(std::move(cls));
  }
  return ld;
}

LocalData local_data_from_diagram(const LaxProfDiagram& d, std::uint64_t budget) {
  const FinCat& c = *d.base;
  LocalData ld;
  for (auto& [rep, members] : class_reps(c)) {
    LocalData::IsoClass cls;
    cls.representative = rep;
    cls.members = members;
    cls.fiber = d.fiber[rep];
    cls.aut = aut_group(c, rep);
    const FinCat& fb = *cls.fiber;
    const int k = static_cast<int>(cls.aut.carrier.size());
    const int nb = fb.object_count();
    const int idx = c.identity(rep);
    LiftProblem lp;
    lp.fiber = cls.fiber;
    lp.aut = cls.aut;
    lp.cand.assign(k, std::vector<std::vector<LiftProblem::Cand>>(nb));
    struct Token {
      int b, b2, xi, eta;  // xi in het(a)(b, b2), eta in het(a^-1)(b2, b)
    };
    std::vector<Token> tokens;
    auto id_elem = [&](int b) { return position(fb.hom(b, b), fb.identity(b)); };
    for (int a = 1; a < k; ++a) {
      const int am = cls.aut.carrier[a];
      const int ainv = cls.aut.carrier[cls.aut.inverse[a]];
      for (int b = 0; b < nb; ++b)
        for (int b2 = 0; b2 < nb; ++b2)
          for (int xi = 0; xi < d.het[am].value(b, b2).size(); ++xi)
            for (int eta = 0; eta < d.het[ainv].value(b2, b).size(); ++eta)
              if (d.compose(am, ainv, b, b2, b, xi, eta) == id_elem(b) &&
                  d.compose(ainv, am, b2, b, b2, eta, xi) == id_elem(b2)) {
                lp.cand[a][b].push_back({b2, static_cast<int>(tokens.size())});
                tokens.push_back({b, b2, xi, eta});
                break;  // the inverse of xi is unique
              }
    }
    lp.conj = [&, idx](int a, int tb, int tb2, int t) {
      const int am = cls.aut.carrier[a];
      const int ainv = cls.aut.carrier[cls.aut.inverse[a]];
      const Token& x = tokens[tb];
      const Token& y = tokens[tb2];
      const int b = fb.src(t), b2 = fb.tgt(t);
      const int tv = position(fb.hom(b, b2), t);
      // eta_b in het(a^-1)(a*b, b), then t, then xi_{b2} in het(a)(b2, a*b2)
      const int s1 = d.compose(ainv, idx, x.b2, b, b2, x.eta, tv);
      const int s2 = d.compose(ainv, am, x.b2, b2, y.b2, s1, y.xi);
      return fb.hom(x.b2, y.b2)[s2];
    };
    cls.action = strictify(lp, budget);
    ld.classes.push_back(std::move(cls));
  }
  return ld;
}

bool local_data_agree(const LocalData& a, const LocalData& b, std::string* detail) {
  auto fail = [&](const std::string& s) {
    if (detail) *detail = s;
    return false;
  };
  if (a.classes.size() != b.classes.size()) return fail("different numbers of isomorphism classes");
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    const auto& x = a.classes[i];
    const auto& y = b.classes[i];
    if (x.representative != y.representative || x.members != y.members) return fail("isomorphism classes differ");
    if (!identical(*x.fiber, *y.fiber)) return fail("fibers over class " + std::to_string(i) + " differ");
    if (x.aut.carrier != y.aut.carrier) return fail("automorphism groups differ");
    for (std::size_t g = 0; g < x.action.size(); ++g)
      if (!find_natural_iso(x.action[g], y.action[g]))
        return fail("actions of automorphism " + std::to_string(g) + " over class " + std::to_string(i) +
                    " are not naturally isomorphic");
  }
  if (detail) *detail = "local data agree";
  return true;
}

FractureReport fracture_check(const OverBase& p, std::uint64_t iso_budget) {
  FractureReport r;
  LaxProfDiagram d = lax_diagram_of(p);
  ValidationReport vr = diagram_validate(d);
  r.diagram_valid = vr.ok();
  r.diagram_violations = vr.violations;
  OverBase q = collage_of_diagram(d);
  r.iso = search_iso_over_base(p, q, iso_budget);
  r.iso_found = r.iso.has_value();
  std::optional<LocalData> la, lb;
  std::string ea, eb;
  try {
    la = local_data(p);
  } catch (const NonFunctorialAction& ex) {
    ea = ex.what();
  }
  try {
    lb = local_data_from_diagram(d);
  } catch (const NonFunctorialAction& ex) {
    eb = ex.what();
  }
  if (la && lb) {
    r.local_consistent = local_data_agree(*la, *lb, &r.local_detail);
  } else if (!la && !lb) {
    r.local_consistent = true;
    r.local_detail = "no strict local data on either side: " + ea;
  } else {
    r.local_detail = la ? "gluing data lost the local action: " + eb : "local action only visible in gluing data: " + ea;
  }
  return r;
}

}  // namespace fcat
