#pragma once

// Twisted arrow categories, ends and coends of set-valued functors on
// C^op x C, and natural-transformation sets computed as ends.

#include <string>
#include <utility>
#include <vector>

#include "fcat/fincat.hpp"
#include "fcat/presheaf.hpp"

namespace fcat {

/// Objects are the morphisms of C (same indices); a morphism f -> f' is a
/// pair (u, v) with f' = v∘f∘u.
struct TwistedArrow {
  CatRef cat;
  CatRef base;  // product(opposite(C), C)
  FinFunctor proj;
  std::vector<std::pair<int, int>> pairs;  // Tw morphism -> (u, v)
};

TwistedArrow twisted_arrow(const CatRef& c);

/// True when every morphism of the base out of p(t) has exactly one lift out of t.
bool has_unique_lifts(const FinFunctor& p, std::string* witness = nullptr);

/// The full subcategory of Tw(M) on morphisms from fiber 0 to fiber 1.
struct HetTwisted {
  CatRef cat;
  Subcategory fiber0;
  Subcategory fiber1;
  CatRef base;  // product(opposite(M_0), M_1)
  FinFunctor proj;
  std::vector<int> het;                    // object -> morphism of M
  std::vector<std::pair<int, int>> pairs;  // morphism -> (u, v) in M
};

HetTwisted het_twisted(const OverBase& m);

struct EndResult {
  FinSet set;
  /// Per element, the wedge value at each Tw(C) object (indexed by morphism of C).
  std::vector<std::vector<int>> wedges;
};

/// Limit of T restricted along Tw(C) -> C^op x C. T's shape must be
/// product(opposite(C), C).
EndResult end_of(const CatRef& c, const SetDiagram& t);

/// Families (t_x in T(x,x)) equalized by every morphism; used to cross-check end_of.
std::vector<std::vector<int>> end_via_equalizer(const CatRef& c, const SetDiagram& t);

struct CoendResult {
  FinSet set;
  std::vector<std::vector<int>> cls;  // [x][element of T(x,x)] -> class
};

/// Quotient of the disjoint union of T(x,x) by T(f,1)(t) ~ T(1,f)(t).
CoendResult coend_of(const CatRef& c, const SetDiagram& t);
/// The same coend as a colimit over Tw(C)^op.
CoendResult coend_via_colimit(const CatRef& c, const SetDiagram& t);

/// (a, b) |-> hom_D(F a, G b) on product(opposite(C), C).
SetDiagram hom_diagram(const FinFunctor& f, const FinFunctor& g);

struct NatSet {
  FinSet set;
  std::vector<NatTrans> transformations;
};

NatSet nat_set_via_end(const FinFunctor& f, const FinFunctor& g);
/// Exhaustive search over component families.
NatSet brute_nat_set(const FinFunctor& f, const FinFunctor& g);

/// Wire name of a transformation: sorted "{object:component,...}".
std::string nat_name(const NatTrans& t);

struct FubiniResult {
  bool agree = false;
  std::size_t direct = 0;
  std::size_t iterated = 0;
  std::string detail;
};

/// Compares the end over C x D with the iterated end over C of ends over D.
/// T's shape must be product(opposite(C x D), C x D).
FubiniResult end_fubini(const CatRef& c, const CatRef& d, const SetDiagram& t);

}  // namespace fcat
