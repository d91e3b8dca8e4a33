#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fcat/catlang.hpp"
#include "fcat/shapes.hpp"
#include "fcat/verify.hpp"

using namespace fcat;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return std::string(FCAT_GOLDEN_DIR) + "/" + name; }

template <class E>
E expect_error(const std::string& text) {
  try {
    parse(text);
  } catch (const E& e) {
    return e;
  }
  FAIL("expected an error for: " << text);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("parse basics") {
  const Document d = parse(
      "category I {\n"
      "  objects: 0 1;\n"
      "  mor a: 0 -> 1;\n"
      "}\n");
  const CatRef i = d.category("I");
  CHECK(i->object_count() == 2);
  CHECK(i->morphism_count() == 3);
  CHECK(find_isomorphism(i, shapes::interval()).has_value());

  // g.f is g after f.
  const Document c = parse(
      "# a comment\n"
      "category C { objects: a b c; mor f: a -> b; mor g: b -> c; mor h: a -> c; compose g.f = h; }\n");
  const CatRef cc = c.category("C");
  CHECK(cc->compose(cc->morphism("g"), cc->morphism("f")) == cc->morphism("h"));

  const Document f = parse(
      "category A { objects: x; }\n"
      "category B { objects: \"two words\" z; }\n"
      "functor F: A -> B { obj x => \"two words\"; }\n"
      "over p = F;\n");
  CHECK(f.functor("F").obj[0] == f.category("B")->object("two words"));
  CHECK(f.over("p").proj.cod == f.category("B"));
}

TEST_CASE("generator closure") {
  Graph chain{{"a", "b", "c"}, {{"f", 0, 1}, {"g", 1, 2}}};
  CHECK(close_generators(chain, {}, 16).morphism_count() == 6);

  Graph idem{{"x"}, {{"e", 0, 0}}};
  const Relation ee{Word{0, 0, {0, 0}}, Word{0, 0, {0}}};
  const FinCat e = close_generators(idem, {ee}, 8);
  CHECK(e.morphism_count() == 2);
  CHECK(find_isomorphism(share(FinCat(e)), shapes::idempotent()).has_value());

  CHECK_THROWS_AS(close_generators(idem, {}, 8), ClosureExceeded);

  const Document iso = parse(
      "category I {\n"
      "  objects: x y;\n"
      "  generators { a: x -> y; b: y -> x; }\n"
      "  relations { b.a = id; a.b = id; }\n"
      "  close(max=8);\n"
      "}\n");
  const CatRef wi = iso.category("I");
  CHECK(wi->morphism_count() == 4);
  CHECK(find_isomorphism(wi, shapes::walking_iso()).has_value());

  try {
    parse("category L {\n  objects: x;\n  generators { t: x -> x; }\n  close(max=8);\n}\n");
    FAIL("closure should not terminate");
  } catch (const ClosureExceeded& ex) {
    CHECK(ex.max() == 8);
    CHECK(ex.line() >= 1);
  }
}

TEST_CASE("diagnostics") {
  const auto v = expect_error<ValidationError>(
      "category C {\n  objects: a b;\n  mor f: a -> b;\n  mor k: b -> a;\n  compose f.id_a = k;\n}\n");
  CHECK(std::string(v.what()).find("k") != std::string::npos);
  CHECK(v.line() >= 1);

  const auto s = expect_error<SyntaxError>("category C {\n  objects: a b;\n  mor f a -> b;\n}\n");
  CHECK(s.line() == 3);
  CHECK(s.column() > 1);

  const auto u = expect_error<UnresolvedReference>("category A { objects: x; }\nfunctor F: A -> Missing { }\n");
  CHECK(u.name() == "Missing");
  CHECK(u.line() == 2);

  expect_error<ParseError>("category A { objects: x; }\ncategory A { objects: y; }\n");
  expect_error<ParseError>("category A { objects: x; mor f: x -> nowhere; }\n");
  expect_error<ParseError>("category A { objects: x y; }\nfunctor F: A -> A { obj x => y; }\n");

  // Every truncation of a valid file either parses or fails inside the input.
  const std::string text = slurp(golden("double_cover.fincat"));
  REQUIRE_FALSE(text.empty());
  int lines = 1;
  for (char ch : text) lines += ch == '\n';
  for (std::size_t cut = 0; cut < text.size(); ++cut) {
    try {
      parse(text.substr(0, cut));
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.line() <= lines);
      CHECK(e.column() >= 1);
    }
  }
}

TEST_CASE("golden files are byte stable") {
  for (const char* name : {"terminal.fincat", "simplex2.fincat", "bz2.fincat", "double_cover.fincat"}) {
    CAPTURE(name);
    const std::string text = slurp(golden(name));
    REQUIRE_FALSE(text.empty());
    const Document d = parse(text);
    CHECK(serialize(d) == text);
  }
  CHECK(structurally_equal(*parse(slurp(golden("simplex2.fincat"))).category("simplex2"), *shapes::simplex(2)));
  const Document bz = parse(slurp(golden("bz2.fincat")));
  CHECK(find_isomorphism(bz.category("BZ2"), shapes::cyclic_group(2)).has_value());
}

TEST_CASE("round trip") {
  verify::CorpusSpec spec;
  spec.seed = 71;
  spec.instance_count = 60;
  spec.max_objects = 3;
  spec.max_morphisms = 8;
  for (const verify::Instance& inst : verify::gen_corpus(spec)) {
    const std::string text = serialize(inst.doc);
    const Document back = parse(text);
    std::string detail;
    CHECK_MESSAGE(structurally_equal(inst.doc, back, &detail), detail);
    CHECK(serialize(back) == text);
  }
  spec.instance_count = 4;
  for (const std::string& id : verify::theorem_ids())
    for (std::uint64_t s = 0; s < 4; ++s) {
      CAPTURE(id);
      const Document d = verify::make_instance(id, verify::mix_seed(72, id, s), spec);
      const std::string text = serialize(d);
      const Document back = parse(text);
      std::string detail;
      CHECK_MESSAGE(structurally_equal(d, back, &detail), detail);
      CHECK(serialize(back) == text);
    }
}
