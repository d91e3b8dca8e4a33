#pragma once

// Named small categories used throughout tests, the corpus and the CLI.

#include "fcat/fincat.hpp"

namespace fcat::shapes {

CatRef terminal();
/// The ordinal [n]: objects "0".."n", one morphism "i_j" for i < j, identities "id_i".
CatRef simplex(int n);
inline CatRef interval() { return simplex(1); }
CatRef discrete(int n);
/// One object "pt" with automorphism group Z/n.
CatRef cyclic_group(int n);
/// Two objects x, y and mutually inverse a: x -> y, b: y -> x.
CatRef walking_iso();
/// One object with an idempotent e (e.e = e).
CatRef idempotent();
/// Two objects with two parallel morphisms.
CatRef parallel_pair();
CatRef span();
CatRef cospan();
/// k objects, exactly one morphism between any two (a contractible groupoid).
CatRef codiscrete(int k);
/// The symmetric group S3 as a one-object category.
CatRef symmetric_group3();

/// The inert inclusion [n] -> [m] with image {i, ..., i+n}.
FinFunctor inert(int n, int m, int i);
/// The inclusion of a full subposet of [m] on the listed objects.
FinFunctor subposet_inclusion(int m, const std::vector<int>& image);

}  // namespace fcat::shapes
