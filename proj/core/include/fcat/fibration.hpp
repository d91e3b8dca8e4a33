#pragma once

// Classification of functors E -> C by finite lift search, the enveloping
// cocartesian fibration, the strict Grothendieck construction, straightening
// of locally cartesian functors and presheaf transport between fibers.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcat/fincat.hpp"
#include "fcat/presheaf.hpp"

namespace fcat {

/// A decided property: `witness` explains a success or names a counterexample.
struct Verdict {
  bool holds = false;
  std::string witness;

  explicit operator bool() const noexcept { return holds; }
};

Verdict is_cartesian_morphism(const OverBase& p, int m);
Verdict is_cocartesian_morphism(const OverBase& p, int m);
/// Cartesian after pulling back to the walking arrow p(m).
Verdict is_locally_cartesian_morphism(const OverBase& p, int m);
Verdict is_locally_cocartesian_morphism(const OverBase& p, int m);

/// Factorization lifting: for every m and every p(m) = g∘f, the category of
/// lifts m = m_g∘m_f is non-empty and connected.
Verdict is_exponential_lifting(const OverBase& p);
/// For composable f, g and x over src f, z over tgt g, the comparison
/// coend_y Het_f(x,y) x Het_g(y,z) -> Het_gf(x,z) is a bijection.
Verdict is_exponential_coend(const OverBase& p);

struct FibrationClass {
  Verdict is_left;
  Verdict is_right;
  Verdict is_cocartesian;
  Verdict is_cartesian;
  Verdict is_locally_cocartesian;
  Verdict is_locally_cartesian;
  Verdict is_exponential;  // the lifting criterion
  Verdict exponential_coend;
  bool criteria_agree = true;

  /// Violated implications among the flags (empty when consistent).
  std::vector<std::string> implication_violations() const;
};

FibrationClass classify(const OverBase& p);

/// Env(p) = (p ↓ A) over A via the target, with the diagonal C -> Env.
struct EnvFibration {
  OverBase env;
  FinFunctor theta;
  Comma comma;
};

EnvFibration env_fibration(const FinFunctor& p);

/// Strict functor C^op -> Cat: act[f] for f: X -> Y is a functor at[Y] -> at[X].
struct StrictCatDiagram {
  CatRef base;
  std::vector<CatRef> at;
  std::vector<FinFunctor> act;
};

ValidationReport validate(const StrictCatDiagram& d);

/// Chosen lifts: lift[f][e] is a morphism over f with target e, or -1 when
/// p(e) != tgt f.
struct Cleavage {
  std::vector<std::vector<int>> lift;
};

struct Grothendieck {
  OverBase over;
  Cleavage cleavage;
  std::vector<std::pair<int, int>> objects;    // (X, a)
  std::vector<std::pair<int, int>> morphisms;  // (f, phi)
};

/// Objects (X, a); morphisms (f, phi: a -> act(f) b). Cleavage lifts are (f, id).
Grothendieck grothendieck_strict(const StrictCatDiagram& d);

enum class CleavagePolicy { first_in_identifier_order, explicit_cleavage };

struct Straightening {
  std::vector<Subcategory> fibers;     // per base object
  Cleavage cleavage;
  std::vector<FinFunctor> transport;   // per base morphism f: X -> Y, fiber Y -> fiber X
  struct Alpha {
    int f = -1;
    int g = -1;
    NatTrans t;  // transport(f)∘transport(g) => transport(g∘f)
    bool invertible = false;
  };
  std::vector<Alpha> alpha;  // every composable pair (f, g)
  bool all_invertible = true;
};

/// Throws NotLocallyCartesian when some lift is missing or the explicit cleavage
/// names a non locally cartesian morphism. Identity morphisms always lift to
/// identities so the result is normal.
Straightening straighten_locally_cartesian(const OverBase& p,
                                           CleavagePolicy policy = CleavagePolicy::first_in_identifier_order,
                                           const Cleavage* explicit_cleavage = nullptr);

/// The base change of p along the walking arrow f: X -> Y, over [1]. Fiber 0
/// and fiber 1 are index-identical to fiber(p, X) and fiber(p, Y).
struct ArrowPullback {
  OverBase over;
  Subcategory fiber_x;
  Subcategory fiber_y;
  std::vector<int> het;  // morphisms over the arrow -> morphism of E over f
};

ArrowPullback pullback_along_arrow(const OverBase& p, int f);

/// Value at x: coend over y in E_Y of Het_f(x,y) x P(y). P is a presheaf on fiber(p, tgt f).cat.
Presheaf transport_presheaf(const OverBase& p, int f, const Presheaf& presheaf);
/// The same transport computed as restrict(i_0, left_kan(i_1, P)) on the arrow pullback.
Presheaf transport_presheaf_via_kan(const OverBase& p, int f, const Presheaf& presheaf);

/// Same data on another base category with the same indices.
Presheaf rebase(const Presheaf& p, const CatRef& base);

}  // namespace fcat
