#pragma once

// Profunctors C^op x D -> FinSet, collages over the interval, profunctor
// extraction, composition with unitors and associator, and internal homs
// of categories over the interval.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcat/fincat.hpp"
#include "fcat/presheaf.hpp"
#include "fcat/twisted.hpp"

namespace fcat {

/// at[c*|D|+d]; lact[u*|D|+d] maps at(tgt u, d) -> at(src u, d);
/// ract[v*|C|+c] maps at(c, src v) -> at(c, tgt v).
struct Profunctor {
  CatRef left;
  CatRef right;
  std::vector<FinSet> at;
  std::vector<Function> lact;
  std::vector<Function> ract;

  const FinSet& value(int c, int d) const { return at[static_cast<std::size_t>(c) * right->object_count() + d]; }
  const Function& left_action(int u, int d) const { return lact[static_cast<std::size_t>(u) * right->object_count() + d]; }
  const Function& right_action(int v, int c) const { return ract[static_cast<std::size_t>(v) * left->object_count() + c]; }
};

ValidationReport validate(const Profunctor& h);

Profunctor hom_profunctor(const CatRef& c);
Profunctor empty_profunctor(const CatRef& c, const CatRef& d);
/// (c, d) |-> hom_D(F c, d).
Profunctor representable_profunctor(const FinFunctor& f);

/// The same data as a presheaf on C x D^op.
Presheaf as_presheaf(const Profunctor& h);

/// One function per (c, d), indexed like `at`.
using ProfunctorMap = std::vector<Function>;

bool is_profunctor_map(const Profunctor& h, const Profunctor& k, const ProfunctorMap& phi);
bool is_bijective(const Profunctor& h, const Profunctor& k, const ProfunctorMap& phi);
std::optional<ProfunctorMap> find_profunctor_iso(const Profunctor& h, const Profunctor& k);

struct Collage {
  OverBase over;
  int zero = -1;  // base objects
  int one = -1;
  std::vector<int> left_obj, right_obj;  // collage index of C / D objects
  std::vector<int> left_mor, right_mor;
  std::vector<std::vector<int>> het;  // [c*|D|+d][element] -> morphism
};

Collage collage(const Profunctor& h);

struct Extraction {
  Profunctor prof;
  Subcategory fiber0;
  Subcategory fiber1;
  std::vector<std::vector<int>> het;  // [c*|D|+d][element] -> morphism of M
};

/// Requires a base isomorphic to [1].
Extraction extract(const OverBase& m);
inline Profunctor extract_profunctor(const OverBase& m) { return extract(m).prof; }

struct CompositeDetail {
  Profunctor prof;
  /// [c*|E|+e][class] -> every (d, h, k) representing the class.
  struct Rep {
    int d, h, k;
  };
  std::vector<std::vector<std::vector<Rep>>> reps;
};

/// Coend over the middle: at(c, e) = coend_d H(c,d) x K(d,e). Throws
/// MiddleMismatch unless H.right and K.left are structurally equal.
CompositeDetail compose_profunctors_detail(const Profunctor& h, const Profunctor& k);
inline Profunctor compose_profunctors(const Profunctor& h, const Profunctor& k) {
  return compose_profunctors_detail(h, k).prof;
}

/// Relabel the left category of k by names so that it is index-identical to `left`.
Profunctor reindex_left(const Profunctor& k, const CatRef& left);

struct UnitorResult {
  bool ok = false;
  ProfunctorMap map;  // composite -> H
  std::string detail;
};

/// hom_C ∘ H -> H, [u, h] |-> lact(u) h.
UnitorResult left_unitor(const Profunctor& h);
/// H ∘ hom_D -> H, [h, v] |-> ract(v) h.
UnitorResult right_unitor(const Profunctor& h);

struct AssociatorResult {
  bool ok = false;
  ProfunctorMap map;  // (H∘K)∘L -> H∘(K∘L)
  std::size_t triple_classes = 0;
  std::string detail;
};

/// Both bracketings are compared with a direct double quotient over (d, e).
AssociatorResult associator(const Profunctor& h, const Profunctor& k, const Profunctor& l);

// --- internal homs over [1] --------------------------------------------------

/// lim over het_twisted(M) of m |-> Het_N(F m0, G m1). Families are returned
/// as N-morphisms indexed by het_twisted objects.
struct HetFamilies {
  FinSet set;
  std::vector<std::vector<int>> families;
};

HetFamilies hom_set_over_interval(const OverBase& m, const OverBase& n, const FinFunctor& f, const FinFunctor& g);

struct InternalHom {
  OverBase over;
  FunctorCategory fun0;
  FunctorCategory fun1;
  HetTwisted tw;
  int n0 = 0;  // objects of fun0 come first
  std::vector<std::vector<std::vector<int>>> het_families;  // [F*|fun1|+G][k] -> family
  std::vector<std::vector<int>> het_morphism;               // [F*|fun1|+G][k] -> morphism of over
  std::vector<int> fun0_mor, fun1_mor;                       // arrows -> morphism of over
};

InternalHom internal_hom_over_interval(const OverBase& m, const OverBase& n, std::size_t cap = 10000);

/// A x_C M for two functors into the same base; objects (a, m) a-major.
struct FiberProduct {
  OverBase over;
  std::vector<std::pair<int, int>> objects;
  std::vector<std::pair<int, int>> morphisms;
  int find_object(int a, int m) const;
  int find_morphism(int alpha, int mu) const;
};

FiberProduct pullback_over(const OverBase& a, const OverBase& m);

/// Functors E -> E' commuting with the projections.
std::vector<FinFunctor> functors_over(const OverBase& p, const OverBase& q, std::size_t cap = 10000);

struct BijectionWitness {
  bool ok = false;
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<std::pair<int, int>> pairs;  // (map A x M -> N, map A -> [M, N])
  std::string detail;
};

BijectionWitness exponential_law_check(const OverBase& a, const OverBase& m, const OverBase& n,
                                       std::size_t cap = 10000);

}  // namespace fcat
