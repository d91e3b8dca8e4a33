#pragma once

// The `.fincat` text format.
//
//   # comment
//   category C {
//     objects: a b c;
//     mor f: a -> b;
//     mor g: b -> c;
//     mor h: a -> c;
//     id a = one_a;          # optional; identities default to id_<object>
//     compose g.f = h;       # g.f means g∘f (apply f first)
//   }
//   category I {
//     objects: x y;
//     generators { a: x -> y; b: y -> x; }
//     relations { b.a = id; a.b = id; }
//     close(max=8);
//   }
//   functor F: C -> D { obj a => x; mor f => u; }
//   nattrans t: F => G { at a = f; }
//   presheaf P on C { at a: p q; act f: r -> p, s -> q; }   # act f: P(tgt f) -> P(src f)
//   diagram T on C { at a: p; act f: p -> q; }              # act f: T(src f) -> T(tgt f)
//   profunctor H: C -> D { at c, d: e1 e2; left u, d: e1 -> e2; right v, c: e1 -> e2; }
//   over p = F;
//
// Names are bare identifiers ([A-Za-z0-9_'] and non-ASCII bytes) or
// double-quoted strings. Declarations may only refer to earlier ones.
// Identity morphisms and actions may be omitted everywhere.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fcat/fincat.hpp"
#include "fcat/presheaf.hpp"
#include "fcat/profunctor.hpp"

namespace fcat {

struct FunctorDecl {
  std::string dom, cod;
  FinFunctor functor;
};
struct NatTransDecl {
  std::string src, tgt;
  NatTrans trans;
};
struct PresheafDecl {
  std::string base;
  Presheaf presheaf;
};
struct DiagramDecl {
  std::string shape;
  SetDiagram diagram;
};
struct ProfunctorDecl {
  std::string left, right;
  Profunctor prof;
};
struct OverDecl {
  std::string functor;
  OverBase over;
};

/// Named declarations; names are unique across all kinds.
struct Document {
  std::map<std::string, CatRef> categories;
  std::map<std::string, FunctorDecl> functors;
  std::map<std::string, NatTransDecl> nattrans;
  std::map<std::string, PresheafDecl> presheaves;
  std::map<std::string, DiagramDecl> diagrams;
  std::map<std::string, ProfunctorDecl> profunctors;
  std::map<std::string, OverDecl> overs;

  bool has(const std::string& name) const;

  /// Lookups throwing UnknownObject.
  const CatRef& category(const std::string& name) const;
  const FinFunctor& functor(const std::string& name) const;
  const NatTrans& nat(const std::string& name) const;
  const Presheaf& presheaf(const std::string& name) const;
  const SetDiagram& diagram(const std::string& name) const;
  const Profunctor& profunctor(const std::string& name) const;
  const OverBase& over(const std::string& name) const;

  /// Programmatic construction. Referenced categories/functors must already
  /// be present (matched by pointer or by identical contents).
  void add_category(const std::string& name, CatRef c);
  void add_functor(const std::string& name, const FinFunctor& f);
  void add_nattrans(const std::string& name, const std::string& src, const std::string& tgt, const NatTrans& t);
  void add_presheaf(const std::string& name, const Presheaf& p);
  void add_diagram(const std::string& name, const SetDiagram& d);
  void add_profunctor(const std::string& name, const Profunctor& h);
  void add_over(const std::string& name, const std::string& functor);

  std::string category_name(const CatRef& c) const;
};

/// Throws SyntaxError, UnresolvedReference, ValidationError or ClosureExceeded,
/// each carrying a line and column.
Document parse(std::string_view text);
Document parse_file(const std::string& path);

/// Canonical text: declarations grouped by kind, everything sorted by name.
std::string serialize(const Document& doc);
std::string serialize_category(const std::string& name, const FinCat& c);

/// Name-based comparison of every declaration.
bool structurally_equal(const Document& a, const Document& b, std::string* detail = nullptr);

// --- generator closure -------------------------------------------------------

struct Graph {
  struct Edge {
    std::string name;
    int src, tgt;
  };
  std::vector<std::string> objects;
  std::vector<Edge> edges;
};

/// Edges in application order: {f, g} is g∘f. Endpoints make empty words typed.
struct Word {
  int src = -1, tgt = -1;
  std::vector<int> edges;
};

struct Relation {
  Word lhs, rhs;
};

/// Words normalized by rewriting with shortlex-oriented relations; morphisms
/// are the normal forms reachable from identities, identities first, then by
/// shortlex. Names are the written form ("b.a"), identities "id_<object>".
/// Throws ClosureExceeded when more than `max` distinct words appear and
/// PreconditionFailed when the resulting table is not a category.
FinCat close_generators(const Graph& graph, const std::vector<Relation>& relations, std::size_t max);

}  // namespace fcat
