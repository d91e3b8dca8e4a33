#pragma once

// Finite-set-valued functors: presheaves, covariant diagrams, their limits and
// colimits, Yoneda, presheaf morphisms, restriction and left Kan extension.

#include <optional>
#include <string>
#include <vector>

#include "fcat/fincat.hpp"

namespace fcat {

struct FinSet {
  std::vector<std::string> elements;

  int size() const noexcept { return static_cast<int>(elements.size()); }
  int index_of(const std::string& e) const;
};

/// A function between finite sets by element index.
using Function = std::vector<int>;

FinSet product_set(const FinSet& a, const FinSet& b);  // (i,j) at i*|b|+j

/// Contravariant: action[m] for m: a -> b maps at[b] to at[a].
struct Presheaf {
  CatRef base;
  std::vector<FinSet> at;
  std::vector<Function> action;
};

/// Covariant: action[m] for m: a -> b maps at[a] to at[b].
struct SetDiagram {
  CatRef shape;
  std::vector<FinSet> at;
  std::vector<Function> action;
};

ValidationReport validate(const Presheaf& p);
ValidationReport validate(const SetDiagram& d);

/// The same data read as a covariant diagram on the opposite category.
SetDiagram as_diagram(const Presheaf& p);
/// Precompose a diagram with a functor into its shape.
SetDiagram restrict_diagram(const FinFunctor& f, const SetDiagram& d);

struct LimitResult {
  FinSet set;
  std::vector<std::vector<int>> families;  // element -> value at each shape object
};

inline constexpr std::size_t kDefaultLimitCap = 1'000'000;

/// Compatible families; element names list the family as (x=e,...).
LimitResult limit_set_valued(const SetDiagram& d, std::size_t cap = kDefaultLimitCap);

struct ColimitResult {
  FinSet set;
  std::vector<std::vector<int>> injection;  // [object][element] -> class
};

/// Connected components of the element graph. Each class is named by the
/// lexicographically smallest "object:element" tag it contains.
ColimitResult colimit_set_valued(const SetDiagram& d);

Presheaf yoneda(const CatRef& c, int x);
Presheaf constant_presheaf(const CatRef& c, const FinSet& s);
Presheaf empty_presheaf(const CatRef& c);

/// A presheaf morphism: one function per object.
using PresheafMap = std::vector<Function>;

struct PresheafHom {
  FinSet set;
  std::vector<PresheafMap> maps;
};

PresheafHom presheaf_hom(const Presheaf& p, const Presheaf& q, std::size_t cap = kDefaultLimitCap);
bool is_presheaf_map(const Presheaf& p, const Presheaf& q, const PresheafMap& phi);
std::optional<PresheafMap> find_presheaf_iso(const Presheaf& p, const Presheaf& q);

Presheaf restrict(const FinFunctor& f, const Presheaf& p);

/// Pointwise formula: value at d is the colimit over (d ↓ F)^op of P.
Presheaf left_kan(const FinFunctor& f, const Presheaf& p);

}  // namespace fcat
