#pragma once

// Independent brute-force oracles shared by the unit tests. They use only
// the raw tables of FinCat and never call the library's search routines.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fcat/fincat.hpp"
#include "fcat/verify.hpp"

namespace oracle {

using fcat::CatRef;
using fcat::FinCat;
using fcat::FinFunctor;

/// Every functor C -> D by trying all object maps, then all morphism maps.
inline std::vector<FinFunctor> functors(const CatRef& c, const CatRef& d) {
  std::vector<FinFunctor> out;
  const int n = c->object_count(), m = c->morphism_count();
  std::vector<int> obj(n, 0);
  std::function<void(int)> objs = [&](int i) {
    if (i == n) {
      std::vector<int> mor(m, -1);
      std::function<void(int)> mors = [&](int k) {
        if (k == m) {
          for (int x = 0; x < n; ++x)
            if (mor[c->identity(x)] != d->identity(obj[x])) return;
          for (int f = 0; f < m; ++f)
            for (int g = 0; g < m; ++g) {
              const int gf = c->compose(g, f);
              if (gf >= 0 && d->compose(mor[g], mor[f]) != mor[gf]) return;
            }
          out.push_back(FinFunctor{c, d, obj, mor});
          return;
        }
        for (int t = 0; t < d->morphism_count(); ++t)
          if (d->src(t) == obj[c->src(k)] && d->tgt(t) == obj[c->tgt(k)]) {
            mor[k] = t;
            mors(k + 1);
          }
      };
      mors(0);
      return;
    }
    for (int x = 0; x < d->object_count(); ++x) {
      obj[i] = x;
      objs(i + 1);
    }
  };
  objs(0);
  return out;
}

inline std::set<std::pair<std::vector<int>, std::vector<int>>> as_set(const std::vector<FinFunctor>& fs) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> s;
  for (const auto& f : fs) s.insert({f.obj, f.mor});
  return s;
}

inline bool invertible(const FinCat& c, int m) {
  for (int n = 0; n < c.morphism_count(); ++n)
    if (c.compose(n, m) == c.identity(c.src(m)) && c.compose(m, n) == c.identity(c.tgt(m))) return true;
  return false;
}

/// Number of natural transformations F => G by scanning all component families.
inline std::size_t nat_count(const FinFunctor& f, const FinFunctor& g) {
  const FinCat& c = *f.dom;
  const FinCat& d = *f.cod;
  std::size_t count = 0;
  std::vector<int> comp(c.object_count());
  std::function<void(int)> rec = [&](int x) {
    if (x == c.object_count()) {
      for (int m = 0; m < c.morphism_count(); ++m)
        if (d.compose(g.mor[m], comp[c.src(m)]) != d.compose(comp[c.tgt(m)], f.mor[m])) return;
      ++count;
      return;
    }
    for (int t = 0; t < d.morphism_count(); ++t)
      if (d.src(t) == f.obj[x] && d.tgt(t) == g.obj[x]) {
        comp[x] = t;
        rec(x + 1);
      }
  };
  rec(0);
  return count;
}

/// Deterministic small random categories for property tests.
inline std::vector<CatRef> sample_categories(std::uint64_t seed, int count, int max_objects = 3,
                                             int max_morphisms = 8) {
  fcat::verify::Rng rng(seed);
  std::vector<CatRef> out;
  for (int i = 0; i < count; ++i)
    out.push_back(fcat::verify::random_category(rng, fcat::verify::Caps{max_objects, max_morphisms}));
  return out;
}

}  // namespace oracle
