#pragma once

// Finite categories given by total composition tables, functors, natural
// transformations and the exhaustive-search utilities built on them.
//
// Objects and morphisms are dense integer indices internally; names are the
// boundary identifiers used in reports and in the `.fincat` format. Index
// order is declaration order and is what "identifier order" means for every
// search in the library.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fcat/error.hpp"

namespace fcat {

struct MorphismInfo {
  std::string name;
  int src = -1;
  int tgt = -1;
};

/// Collected invariant violations; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  std::string summary() const;
};

class FinCat {
 public:
  class Builder;

  FinCat() = default;

  int object_count() const noexcept { return static_cast<int>(objects_.size()); }
  int morphism_count() const noexcept { return static_cast<int>(mors_.size()); }

  const std::string& object_name(int x) const { return objects_.at(x); }
  const std::string& morphism_name(int m) const { return mors_.at(m).name; }
  const std::vector<std::string>& object_names() const noexcept { return objects_; }

  int src(int m) const { return mors_[m].src; }
  int tgt(int m) const { return mors_[m].tgt; }
  int identity(int x) const { return identity_[x]; }
  bool is_identity(int m) const { return identity_[mors_[m].src] == m; }

  /// g∘f (apply f first). -1 when tgt(f) != src(g) or the table has no entry.
  int compose(int g, int f) const;

  std::span<const int> hom(int a, int b) const { return hom_[static_cast<std::size_t>(a) * objects_.size() + b]; }
  std::span<const int> out(int a) const { return out_[a]; }
  std::span<const int> in(int b) const { return in_[b]; }

  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_morphism(std::string_view name) const;
  int object(std::string_view name) const;
  int morphism(std::string_view name) const;

 private:
  std::vector<std::string> objects_;
  std::vector<MorphismInfo> mors_;
  std::vector<int> identity_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
  std::vector<int> in_pos_;
  std::vector<std::vector<int>> comp_;  // comp_[g][in_pos_[f]] for tgt(f) == src(g)
  std::vector<std::vector<int>> hom_;
  std::unordered_map<std::string, int> object_index_;
  std::unordered_map<std::string, int> morphism_index_;
};

/// Incremental construction. Identity composites are filled in automatically
/// wherever no explicit entry was given; validate() still checks them.
class FinCat::Builder {
 public:
  int add_object(std::string name);
  int add_morphism(std::string name, int src, int tgt);
  /// Adds a morphism and registers it as the identity of `x`.
  int add_identity(int x, std::string name);
  void set_identity(int x, int m);
  void set_compose(int g, int f, int h);

  int object_count() const noexcept { return static_cast<int>(objects_.size()); }
  int morphism_count() const noexcept { return static_cast<int>(mors_.size()); }

  FinCat build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<MorphismInfo> mors_;
  std::vector<int> identity_;
  std::vector<std::tuple<int, int, int>> entries_;
};

using CatRef = std::shared_ptr<const FinCat>;

inline CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

struct FinFunctor {
  CatRef dom;
  CatRef cod;
  std::vector<int> obj;
  std::vector<int> mor;
};

struct NatTrans {
  FinFunctor src;
  FinFunctor tgt;
  std::vector<int> components;  // dom object -> cod morphism
};

/// A functor p: E -> C viewed as an object of Cat/C.
struct OverBase {
  FinFunctor proj;

  const FinCat& total() const { return *proj.dom; }
  const FinCat& base() const { return *proj.cod; }
};

/// A subcategory with its inclusion into the ambient category.
struct Subcategory {
  CatRef cat;
  std::vector<int> obj_incl;  // sub -> ambient
  std::vector<int> mor_incl;
  std::vector<int> obj_back;  // ambient -> sub or -1
  std::vector<int> mor_back;
};

ValidationReport validate(const FinCat& c);
ValidationReport validate(const FinFunctor& f);
ValidationReport validate(const NatTrans& t);

/// Index-wise equality: same names, endpoints and table at every index.
bool identical(const FinCat& a, const FinCat& b);
/// Name-based equality, insensitive to declaration order.
bool structurally_equal(const FinCat& a, const FinCat& b);
bool identical(const FinFunctor& f, const FinFunctor& g);

// --- constructions ----------------------------------------------------------

/// Same indices and names, sources and targets swapped.
CatRef opposite(const CatRef& c);

/// Object (a,b) has index a*|B|+b; morphism (f,g) has index f*|B.mor|+g.
CatRef product(const CatRef& a, const CatRef& b);
FinFunctor product_projection(const CatRef& prod, const CatRef& a, const CatRef& b, int side);

/// A's objects and morphisms first, then B's.
CatRef coproduct(const CatRef& a, const CatRef& b);

struct Comma {
  CatRef cat;
  FinFunctor proj_a;
  FinFunctor proj_b;
  struct Obj {
    int a, b, h;
  };
  struct Mor {
    int u, v;
  };
  std::vector<Obj> objects;
  std::vector<Mor> morphisms;

  int find_object(int a, int b, int h) const;
};

/// Comma category (F ↓ G): objects (a, b, h: F a -> G b).
Comma comma(const FinFunctor& f, const FinFunctor& g);

Subcategory full_subcategory(const CatRef& c, const std::vector<int>& objects);
/// Objects over x and morphisms over id_x.
Subcategory fiber(const OverBase& p, int x);

/// Locates 0, 1 and the arrow 0 -> 1 of a base isomorphic to [1].
struct IntervalSides {
  int zero = -1;
  int one = -1;
  int arrow = -1;
};
IntervalSides interval_sides(const FinCat& base);

FinFunctor identity_functor(const CatRef& c);
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
FinFunctor constant_functor(const CatRef& dom, const CatRef& cod, int x);
/// The inclusion functor of a subcategory.
FinFunctor inclusion(const Subcategory& s, const CatRef& ambient);

// --- isomorphisms, cores, automorphisms -------------------------------------

std::optional<int> inverse_of(const FinCat& c, int m);

struct IsoClassPartition {
  std::vector<std::vector<int>> blocks;
  struct Witness {
    int a, b, forward, backward;
  };
  std::vector<Witness> witnesses;
  std::vector<int> block_of;
};

IsoClassPartition iso_classes(const FinCat& c);

struct AutGroup {
  int object = -1;
  std::vector<int> carrier;            // morphisms; carrier[0] is the identity
  std::vector<std::vector<int>> table;  // table[i][j] = position of carrier[i]∘carrier[j]
  std::vector<int> inverse;            // position of the inverse

  int position(int morphism) const;
};

AutGroup aut_group(const FinCat& c, int x);
Subcategory core(const CatRef& c);

// --- exhaustive search ------------------------------------------------------

struct FunctorSearchOptions {
  std::function<bool(int a, int x)> object_ok;
  std::function<bool(int m, int n)> morphism_ok;
  bool injective = false;
  bool preserve_hom_sizes = false;
  std::uint64_t node_budget = 0;  // 0 = unbounded
};

/// Visits functors dom -> cod in identifier order until the visitor returns
/// false. Throws CapExceeded past the node budget.
void for_each_functor(const CatRef& dom, const CatRef& cod, const FunctorSearchOptions& options,
                      const std::function<bool(const FinFunctor&)>& visit);

/// All functors C -> D; throws CapExceeded as soon as more than `cap` exist.
std::vector<FinFunctor> enumerate_functors(const CatRef& c, const CatRef& d, std::size_t cap = 10000);

struct EquivalenceResult {
  bool equivalent = false;
  std::string failure;
  /// For every codomain object d: (a, iso F a -> d).
  std::vector<std::pair<int, int>> essential_witness;
};

EquivalenceResult check_equivalence(const FinFunctor& f);

inline constexpr std::uint64_t kDefaultIsoBudget = 2'000'000;

/// An isomorphism E_p -> E_q strictly over the common base, or nullopt when
/// none exists. Throws CapExceeded if the search is cut off.
std::optional<FinFunctor> search_iso_over_base(const OverBase& p, const OverBase& q,
                                               std::uint64_t node_budget = kDefaultIsoBudget);

std::optional<FinFunctor> find_isomorphism(const CatRef& a, const CatRef& b,
                                           std::uint64_t node_budget = kDefaultIsoBudget);

/// All natural transformations F => G, components chosen in identifier order.
std::vector<NatTrans> natural_transformations(const FinFunctor& f, const FinFunctor& g);
std::optional<NatTrans> find_natural_iso(const FinFunctor& f, const FinFunctor& g);
NatTrans identity_transformation(const FinFunctor& f);

struct FunctorCategory {
  CatRef cat;
  std::vector<FinFunctor> functors;  // object index -> functor
  std::vector<NatTrans> arrows;      // morphism index -> transformation

  int find_functor(const FinFunctor& f) const;
};

FunctorCategory functor_category(const CatRef& a, const CatRef& b, std::size_t cap = 10000);

}  // namespace fcat
