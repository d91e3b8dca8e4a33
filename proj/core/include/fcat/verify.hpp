#pragma once

// Seeded random corpora, exhaustive small-category enumeration and the
// property runners behind `fcat verify`.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fcat/catlang.hpp"
#include "fcat/fibration.hpp"
#include "fcat/fincat.hpp"
#include "fcat/profunctor.hpp"

namespace fcat::verify {

enum class Kind { posets, groupoids, general, over1, over2 };

const char* kind_name(Kind k);
std::optional<Kind> parse_kind(const std::string& s);

struct CorpusSpec {
  std::uint64_t seed = 0;
  int max_objects = 4;
  int max_morphisms = 16;
  int instance_count = 200;
  std::vector<Kind> kinds;  // empty = all
};

/// Deterministic across platforms: mt19937_64 with modulo reduction.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int num, int den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(static_cast<int>(v.size()))];
  }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t mix_seed(std::uint64_t seed, const std::string& salt, std::uint64_t index);

struct Caps {
  int max_objects = 4;
  int max_morphisms = 16;
};

CatRef poset_category(int n, const std::vector<std::vector<bool>>& leq);
CatRef random_poset(Rng& rng, const Caps& caps);
CatRef random_groupoid(Rng& rng, const Caps& caps);
/// A random quotient of a free category; falls back to a poset after repeated rejection.
CatRef random_quotient(Rng& rng, const Caps& caps);
CatRef random_known_shape(Rng& rng, const Caps& caps);
CatRef random_category(Rng& rng, const Caps& caps, const std::vector<Kind>& kinds = {});

/// Uniform among the first few thousand functors in identifier order.
std::optional<FinFunctor> random_functor(Rng& rng, const CatRef& c, const CatRef& d);
/// (c, d) |-> hom_C(c, G d).
Profunctor corepresentable_profunctor(const FinFunctor& g);
Profunctor sum_profunctor(const Profunctor& h, const Profunctor& k);
/// Smallest sub-profunctor containing the marked elements ([c*|D|+d][e]).
Profunctor generated_subprofunctor(const Profunctor& h, const std::vector<std::vector<bool>>& marks);
Profunctor random_profunctor(Rng& rng, const CatRef& c, const CatRef& d);
StrictCatDiagram random_strict_diagram(Rng& rng, const Caps& caps, const CatRef& base = nullptr);
/// kind: over1 / over2 fix the base; groupoids asks for a groupoid base.
OverBase random_over(Rng& rng, const Caps& caps, std::optional<Kind> kind = std::nullopt);

/// Base change of q to an index-different but name-equal base.
OverBase rebase_over(const OverBase& q, const CatRef& base);

struct Instance {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Kind kind = Kind::general;
  Document doc;
};

/// Category kinds yield a category "C"; over kinds an over "P" (categories E, B, functor p).
std::vector<Instance> gen_corpus(const CorpusSpec& spec);

/// All categories with at most the given numbers of objects and morphisms
/// (identities included), one per isomorphism class.
std::vector<CatRef> small_categories(int max_objects, int max_morphisms);

/// Named handcrafted functors; `expected` is the known exponentiability when fixed.
struct HandcraftedCase {
  std::string name;
  OverBase over;
  std::optional<bool> expected_exponential;
};
std::vector<HandcraftedCase> handcrafted_conduche_cases();

// --- theorem runners --------------------------------------------------------

const std::vector<std::string>& theorem_ids();

enum class Status { pass, fail, cap };

struct Outcome {
  Status status = Status::pass;
  std::string witness;
};

/// Instance document of theorem `id` for a given instance seed.
Document make_instance(const std::string& id, std::uint64_t instance_seed, const CorpusSpec& spec);
/// Runs the property on one instance document; `mutate` injects the theorem's fault.
Outcome check_document(const std::string& id, const Document& doc, bool mutate = false);

struct Failure {
  std::size_t instance = 0;
  std::uint64_t instance_seed = 0;
  std::string witness;
  std::string document;
};

/// Exhaustive agreement of the exponentiability criteria together with the
/// handcrafted cases. Instances are (domain, codomain, functor) triples.
struct ExhaustiveSummary {
  std::size_t categories = 0;
  std::size_t functors = 0;
  std::size_t disagreements = 0;
  std::size_t interval_failures = 0;  // functors into [1] that fail
  std::vector<Failure> failures;  // first few, with documents (over "P")
};
ExhaustiveSummary conduche_exhaustive(int max_objects, int max_morphisms, unsigned threads = 0);

struct RunOptions {
  CorpusSpec spec;
  bool mutate = false;
  unsigned threads = 0;  // 0 = hardware concurrency
  /// conduche-agreement only: also sweep every functor between categories
  /// within these bounds (0 disables).
  int exhaustive_objects = 0;
  int exhaustive_morphisms = 0;
};

struct TheoremReport {
  std::string theorem;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  bool mutate = false;
  std::vector<Failure> failures;
  std::vector<Failure> capped;
  std::optional<ExhaustiveSummary> exhaustive;
  double millis = 0;

  /// 0 pass, 1 failures, 3 caps exceeded without failures.
  int exit_code() const { return !failures.empty() ? 1 : !capped.empty() ? 3 : 0; }
};

/// Throws UnknownTheorem.
TheoremReport run_theorem(const std::string& id, const RunOptions& options);

/// Schema-1 JSON; `with_millis = false` gives byte-identical output per seed.
std::string to_json(const TheoremReport& r, bool with_millis = true);

}  // namespace fcat::verify
