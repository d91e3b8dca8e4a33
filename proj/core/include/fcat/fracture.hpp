#pragma once

// Local data (fibers with automorphism actions) and gluing data (lax normal
// profunctor diagrams) of a functor p: B -> C, and reconstruction of p from
// the gluing data.

#include <optional>
#include <string>
#include <vector>

#include "fcat/fincat.hpp"
#include "fcat/profunctor.hpp"

namespace fcat {

/// Lax normal diagram of profunctors over C: het[f] is a profunctor
/// fiber[src f] -/-> fiber[tgt f] and mu composes heteromorphisms.
struct LaxProfDiagram {
  CatRef base;
  std::vector<CatRef> fiber;
  std::vector<Profunctor> het;
  /// mu[f*|C.mor|+g] for tgt f == src g, empty otherwise. cells[(b*|Y|+b1)*|Z|+b2]
  /// maps the raw pair (xi, zeta), index xi*|het(g)(b1,b2)|+zeta, into het(g∘f)(b,b2).
  struct Mu {
    std::vector<Function> cells;
  };
  std::vector<Mu> mu;

  const Mu& mu_of(int f, int g) const { return mu[static_cast<std::size_t>(f) * base->morphism_count() + g]; }
  Mu& mu_of(int f, int g) { return mu[static_cast<std::size_t>(f) * base->morphism_count() + g]; }
  int cell(int f, int g, int b, int b1, int b2) const;
  int compose(int f, int g, int b, int b1, int b2, int xi, int zeta) const;
};

ValidationReport diagram_validate(const LaxProfDiagram& d);

/// het(f)(b, b') = morphisms of B over f; mu = composition in B.
LaxProfDiagram lax_diagram_of(const OverBase& p);

/// Objects (X, b); morphisms (f, xi). Throws IncoherentDiagram if the result
/// fails the category laws.
OverBase collage_of_diagram(const LaxProfDiagram& d);

/// Compares two diagrams index by index (names ignored); on mismatch the
/// first difference is written to `detail`.
bool diagrams_index_equal(const LaxProfDiagram& a, const LaxProfDiagram& b, std::string* detail = nullptr);

/// Every comparison coend_{b1} het(f)(b,b1) x het(g)(b1,b2) -> het(gf)(b,b2) is a bijection.
bool mu_all_bijective(const LaxProfDiagram& d, std::string* witness = nullptr);

struct LocalData {
  struct IsoClass {
    int representative = -1;
    std::vector<int> members;
    CatRef fiber;
    AutGroup aut;
    std::vector<FinFunctor> action;  // per carrier position; action[0] is the identity
  };
  std::vector<IsoClass> classes;
};

inline constexpr std::uint64_t kDefaultStrictifyBudget = 200'000;

/// Throws NonFunctorialAction when some automorphism has no invertible lift
/// or no strictly functorial choice of lifts exists within the budget.
LocalData local_data(const OverBase& p, std::uint64_t budget = kDefaultStrictifyBudget);
/// The same computation from the gluing data restricted to the core of C.
LocalData local_data_from_diagram(const LaxProfDiagram& d, std::uint64_t budget = kDefaultStrictifyBudget);

struct FractureReport {
  bool iso_found = false;
  std::optional<FinFunctor> iso;  // p -> reconstruction, over C
  bool diagram_valid = false;
  std::vector<std::string> diagram_violations;
  bool local_consistent = false;
  std::string local_detail;

  bool ok() const { return iso_found && diagram_valid && local_consistent; }
};

FractureReport fracture_check(const OverBase& p, std::uint64_t iso_budget = kDefaultIsoBudget);

/// Fibers equal on the nose and actions naturally isomorphic per group element.
bool local_data_agree(const LocalData& a, const LocalData& b, std::string* detail = nullptr);

}  // namespace fcat
