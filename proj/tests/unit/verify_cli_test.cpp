#include "doctest.h"
#include "fcat/catlang.hpp"
#include "fcat/verify.hpp"

using namespace fcat;

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

std::uint64_t corpus_fingerprint(const verify::CorpusSpec& spec) {
  std::uint64_t h = 1469598103934665603ull;
  for (const verify::Instance& inst : verify::gen_corpus(spec)) {
    h = fnv1a(std::to_string(inst.index) + ":" + std::to_string(inst.seed) + ":" + verify::kind_name(inst.kind), h);
    h = fnv1a(serialize(inst.doc), h);
  }
  return h;
}

}  // namespace

TEST_CASE("corpus generation") {
  verify::CorpusSpec spec;
  spec.instance_count = 0;
  CHECK(verify::gen_corpus(spec).empty());

  spec.instance_count = 40;
  spec.seed = 81;
  const auto a = verify::gen_corpus(spec), b = verify::gen_corpus(spec);
  REQUIRE(a.size() == 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == i);
    CHECK(a[i].seed == b[i].seed);
    CHECK(serialize(a[i].doc) == serialize(b[i].doc));
  }
  spec.seed = 82;
  CHECK(corpus_fingerprint(spec) != [&] {
    verify::CorpusSpec s = spec;
    s.seed = 81;
    return corpus_fingerprint(s);
  }());

  spec.kinds = {verify::Kind::groupoids};
  for (const verify::Instance& inst : verify::gen_corpus(spec)) {
    const CatRef& c = inst.doc.category("C");
    CHECK(core(c).cat->morphism_count() == c->morphism_count());
    CHECK(c->object_count() <= spec.max_objects);
    CHECK(c->morphism_count() <= spec.max_morphisms);
  }
  spec.kinds = {verify::Kind::over1, verify::Kind::over2};
  for (const verify::Instance& inst : verify::gen_corpus(spec)) {
    const OverBase& p = inst.doc.over("P");
    CHECK(validate(p.proj).ok());
    CHECK(p.base().object_count() == (inst.kind == verify::Kind::over1 ? 2 : 3));
  }
  for (const char* k : {"posets", "groupoids", "general", "over-[1]", "over-[2]"}) {
    REQUIRE(verify::parse_kind(k).has_value());
    CHECK(std::string(verify::kind_name(*verify::parse_kind(k))) == k);
  }
  CHECK(verify::parse_kind("over1") == verify::Kind::over1);
  CHECK_FALSE(verify::parse_kind("bogus").has_value());
}

TEST_CASE("seed 0 corpus snapshot") {
  // Frozen from the first run of the generator; any change to generation shows up here.
  verify::CorpusSpec spec;
  spec.seed = 0;
  CHECK(verify::gen_corpus(spec).size() == 200);
  CHECK(corpus_fingerprint(spec) == 376270303973219671ull);
}

TEST_CASE("theorem runs are deterministic and replayable") {
  CHECK_THROWS_AS(verify::run_theorem("no-such-theorem", {}), UnknownTheorem);
  CHECK(verify::theorem_ids().size() == 7);
  for (const std::string& id : verify::theorem_ids()) {
    CAPTURE(id);
    verify::RunOptions opt;
    opt.spec.seed = 83;
    opt.spec.instance_count = 12;
    opt.threads = 2;
    const verify::TheoremReport r1 = verify::run_theorem(id, opt);
    opt.threads = 1;
    const verify::TheoremReport r2 = verify::run_theorem(id, opt);
    CHECK(r1.exit_code() == 0);
    CHECK(verify::to_json(r1, false) == verify::to_json(r2, false));
    CHECK(verify::to_json(r1, false).find("\"schema\": 1") != std::string::npos);

    opt.mutate = true;
    opt.spec.instance_count = 200;
    const verify::TheoremReport m = verify::run_theorem(id, opt);
    CHECK(m.exit_code() == 1);
    REQUIRE_FALSE(m.failures.empty());
    for (const verify::Failure& f : m.failures) {
      CHECK_FALSE(f.witness.empty());
      const Document doc = parse(f.document);
      CHECK(verify::check_document(id, doc, true).status == verify::Status::fail);
      CHECK(verify::check_document(id, doc, false).status == verify::Status::pass);
      const bool handcrafted = id == "conduche-agreement" && f.instance < verify::handcrafted_conduche_cases().size();
      if (!handcrafted) CHECK(serialize(verify::make_instance(id, f.instance_seed, opt.spec)) == f.document);
    }
  }
}

TEST_CASE("exhaustive agreement at the smallest bound") {
  const verify::ExhaustiveSummary s = verify::conduche_exhaustive(2, 4);
  CHECK(s.categories > 0);
  CHECK(s.functors > 0);
  CHECK(s.disagreements == 0);
  CHECK(s.interval_failures == 0);
  CHECK(verify::small_categories(0, 0).size() == 1);  // the empty category
  CHECK(verify::small_categories(1, 1).size() == 2);
  CHECK(verify::small_categories(1, 2).size() == 4);  // plus the two monoids of order 2
  CHECK(verify::small_categories(2, 2).size() == 5);  // plus two points
}
