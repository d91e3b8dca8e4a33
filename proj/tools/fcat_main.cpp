#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fcat/catlang.hpp"
#include "fcat/fracture.hpp"
#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "fcat/verify.hpp"
#include "json.hpp"

using namespace fcat;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct Common {
  std::string file;
  bool as_json = false;
};

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json set_json(const FinSet& s) { return json(s.elements); }

std::string set_text(const FinSet& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t i = 0; i < s.elements.size(); ++i) o << (i ? ", " : "") << s.elements[i];
  o << "}";
  return o.str();
}

OverBase over_or_functor(const Document& doc, const std::string& name) {
  if (doc.overs.count(name)) return doc.over(name);
  return OverBase{doc.functor(name)};
}

std::string over_document(const OverBase& p, const std::string& total, const std::string& base) {
  Document out;
  out.add_category(base, p.proj.cod);
  out.add_category(total, p.proj.dom);
  out.add_functor("p", p.proj);
  out.add_over("P", "p");
  return serialize(out);
}

// --- ad-hoc commands ---------------------------------------------------------

struct EndArgs {
  Common c;
  std::vector<std::string> functors;
  std::string diagram, category;
};

SetDiagram end_input(const Document& doc, const EndArgs& a, CatRef& cat) {
  if (!a.diagram.empty()) {
    if (a.category.empty()) throw PreconditionFailed("--diagram needs --on");
    cat = doc.category(a.category);
    SetDiagram t = doc.diagram(a.diagram);
    return t;
  }
  if (a.functors.size() != 2) throw PreconditionFailed("give two functors F G, or --diagram T --on C");
  const FinFunctor& f = doc.functor(a.functors[0]);
  const FinFunctor& g = doc.functor(a.functors[1]);
  cat = f.dom;
  return hom_diagram(f, g);
}

int cmd_end(const EndArgs& a, bool co) {
  Document doc = parse_file(a.c.file);
  CatRef cat;
  SetDiagram t = end_input(doc, a, cat);
  FinSet s = co ? coend_of(cat, t).set : end_of(cat, t).set;
  json j{{"schema", 1}, {"command", co ? "coend" : "end"}, {"cardinality", s.size()}, {"elements", set_json(s)}};
  emit(a.c, j, std::string(co ? "coend" : "end") + " has " + std::to_string(s.size()) + " elements: " + set_text(s) + "\n");
  return kExitPass;
}

int cmd_nat(const EndArgs& a) {
  Document doc = parse_file(a.c.file);
  if (a.functors.size() != 2) throw PreconditionFailed("give two functors F G");
  const FinFunctor& f = doc.functor(a.functors[0]);
  const FinFunctor& g = doc.functor(a.functors[1]);
  NatSet viaend = nat_set_via_end(f, g);
  NatSet brute = brute_nat_set(f, g);
  std::ostringstream o;
  o << "nat(" << a.functors[0] << ", " << a.functors[1] << ") has " << viaend.set.size() << " elements (brute force "
    << brute.set.size() << ")\n";
  json list = json::array();
  for (const NatTrans& t : viaend.transformations) {
    o << "  " << nat_name(t) << "\n";
    list.push_back(nat_name(t));
  }
  json j{{"schema", 1},   {"command", "nat"},   {"cardinality", viaend.set.size()},
         {"brute_force", brute.set.size()}, {"transformations", list}};
  emit(a.c, j, o.str());
  return viaend.set.size() == brute.set.size() ? kExitPass : kExitFail;
}

int cmd_kan(const Common& c, const std::string& functor, const std::string& presheaf) {
  Document doc = parse_file(c.file);
  const FinFunctor& f = doc.functor(functor);
  Presheaf lan = left_kan(f, doc.presheaf(presheaf));
  Document out;
  out.add_category(doc.category_name(f.cod), f.cod);
  out.add_presheaf("Lan", lan);
  const std::string text = serialize(out);
  emit(c, json{{"schema", 1}, {"command", "kan"}, {"document", text}}, text);
  return kExitPass;
}

int cmd_collage(const Common& c, const std::string& prof) {
  Document doc = parse_file(c.file);
  Collage col = collage(doc.profunctor(prof));
  const std::string text = over_document(col.over, "Collage", "I");
  emit(c,
       json{{"schema", 1},
            {"command", "collage"},
            {"objects", col.over.total().object_count()},
            {"morphisms", col.over.total().morphism_count()},
            {"document", text}},
       text);
  return kExitPass;
}

int cmd_extract(const Common& c, const std::string& name) {
  Document doc = parse_file(c.file);
  Extraction ex = extract(over_or_functor(doc, name));
  Document out;
  out.add_category("Fiber0", ex.prof.left);
  out.add_category("Fiber1", ex.prof.right);
  out.add_profunctor("H", ex.prof);
  const std::string text = serialize(out);
  emit(c, json{{"schema", 1}, {"command", "extract"}, {"document", text}}, text);
  return kExitPass;
}

int cmd_classify(const Common& c, const std::string& name) {
  Document doc = parse_file(c.file);
  FibrationClass k = classify(over_or_functor(doc, name));
  const std::pair<const char*, const Verdict*> rows[] = {
      {"left fibration", &k.is_left},
      {"right fibration", &k.is_right},
      {"cocartesian fibration", &k.is_cocartesian},
      {"cartesian fibration", &k.is_cartesian},
      {"locally cocartesian", &k.is_locally_cocartesian},
      {"locally cartesian", &k.is_locally_cartesian},
      {"exponential (lifting)", &k.is_exponential},
      {"exponential (coend)", &k.exponential_coend},
  };
  std::ostringstream o;
  json flags = json::object();
  for (const auto& [label, v] : rows) {
    o << label << ": " << (v->holds ? "yes" : "no") << " (" << v->witness << ")\n";
    flags[label] = json{{"holds", v->holds}, {"witness", v->witness}};
  }
  o << "criteria agree: " << (k.criteria_agree ? "yes" : "no") << "\n";
  emit(c, json{{"schema", 1}, {"command", "classify"}, {"flags", flags}, {"criteria_agree", k.criteria_agree}}, o.str());
  return kExitPass;
}

int cmd_fracture(const Common& c, const std::string& name) {
  Document doc = parse_file(c.file);
  const OverBase p = over_or_functor(doc, name);
  const FinCat& e = p.total();
  std::ostringstream o;
  json classes = json::array();
  try {
    LocalData ld = local_data(p);
    o << "local data: " << ld.classes.size() << " isomorphism class(es) of base objects\n";
    for (const auto& cl : ld.classes) {
      const FinCat& fib = *cl.fiber;
      o << "  " << p.base().object_name(cl.representative) << ": fiber with " << fib.object_count() << " object(s), "
        << fib.morphism_count() << " morphism(s); automorphism group of order " << cl.aut.carrier.size() << "\n";
      json acts = json::array();
      for (std::size_t i = 0; i < cl.action.size(); ++i) {
        const FinFunctor& a = cl.action[i];
        std::ostringstream m;
        for (int x = 0; x < fib.object_count(); ++x)
          m << (x ? ", " : "") << fib.object_name(x) << "->" << fib.object_name(a.obj[x]);
        const std::string aut = p.base().morphism_name(cl.aut.carrier[i]);
        o << "    " << aut << " acts by " << m.str() << "\n";
        acts.push_back(json{{"automorphism", aut}, {"objects", m.str()}});
      }
      classes.push_back(json{{"representative", p.base().object_name(cl.representative)},
                             {"fiber_objects", fib.object_count()},
                             {"fiber_morphisms", fib.morphism_count()},
                             {"automorphisms", cl.aut.carrier.size()},
                             {"action", acts}});
    }
  } catch (const NonFunctorialAction& ex) {
    o << "local data: " << ex.what() << "\n";
  }
  FractureReport r = fracture_check(p);
  o << "gluing data: " << (r.diagram_valid ? "valid lax normal diagram" : "invalid") << "\n";
  for (const auto& v : r.diagram_violations) o << "  " << v << "\n";
  o << "reconstruction: " << (r.iso_found ? "isomorphic over the base" : "no isomorphism found") << "\n";
  json iso = json::object();
  if (r.iso) {
    for (int x = 0; x < e.object_count(); ++x) {
      o << "  " << e.object_name(x) << " |-> " << r.iso->cod->object_name(r.iso->obj[x]) << "\n";
      iso[e.object_name(x)] = r.iso->cod->object_name(r.iso->obj[x]);
    }
  }
  o << "local data consistent: " << (r.local_consistent ? "yes" : "no") << " (" << r.local_detail << ")\n";
  emit(c,
       json{{"schema", 1},
            {"command", "fracture"},
            {"local_data", classes},
            {"diagram_valid", r.diagram_valid},
            {"diagram_violations", r.diagram_violations},
            {"iso_found", r.iso_found},
            {"iso", iso},
            {"local_consistent", r.local_consistent},
            {"local_detail", r.local_detail},
            {"ok", r.ok()}},
       o.str());
  return r.ok() ? kExitPass : kExitFail;
}

int cmd_internal_hom(const Common& c, const std::string& m, const std::string& n) {
  Document doc = parse_file(c.file);
  const OverBase mo = over_or_functor(doc, m);
  const OverBase no = verify::rebase_over(over_or_functor(doc, n), mo.proj.cod);
  InternalHom ih = internal_hom_over_interval(mo, no);
  const std::string text = over_document(ih.over, "Hom", "I");
  emit(c,
       json{{"schema", 1},
            {"command", "internal-hom"},
            {"objects", ih.over.total().object_count()},
            {"morphisms", ih.over.total().morphism_count()},
            {"fiber0_objects", ih.fun0.cat->object_count()},
            {"fiber1_objects", ih.fun1.cat->object_count()},
            {"document", text}},
       text);
  return kExitPass;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string id;
  std::uint64_t seed = 0;
  int count = 200;
  int max_objects = 4;
  int max_morphisms = 16;
  std::vector<std::string> kinds;
  std::string json_path;
  std::string replay;
  bool mutate = false;
  bool no_timing = false;
  unsigned threads = 0;
  int exhaustive_objects = 3;
  int exhaustive_morphisms = 5;
};

int worst(int a, int b) {
  auto rank = [](int x) { return x == kExitFail ? 3 : x == kExitUsage ? 2 : x == kExitCap ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

void print_report(const verify::TheoremReport& r) {
  std::cout << r.theorem << (r.mutate ? " [mutated]" : "") << ": " << r.instances << " instances";
  if (r.exhaustive)
    std::cout << " + " << r.exhaustive->functors << " exhaustive functors over " << r.exhaustive->categories
              << " categories";
  std::cout << ", " << r.failures.size() << " failures, " << r.capped.size() << " capped ("
            << static_cast<long long>(r.millis) << " ms) "
            << (r.exit_code() == 0 ? "PASS" : r.exit_code() == kExitCap ? "CAP" : "FAIL") << "\n";
  std::size_t shown = 0;
  for (const auto& f : r.failures) {
    if (shown++ == 5) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  instance " << f.instance << " (seed " << f.instance_seed << "): " << f.witness << "\n";
  }
  for (std::size_t i = 0; i < r.capped.size() && i < 3; ++i)
    std::cout << "  capped instance " << r.capped[i].instance << ": " << r.capped[i].witness << "\n";
}

int replay(const VerifyArgs& a) {
  std::ifstream in(a.replay);
  if (!in) throw PreconditionFailed("cannot open " + a.replay);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  struct Case {
    std::string theorem, document;
    bool mutate;
  };
  std::vector<Case> cases;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const nlohmann::json j = nlohmann::json::parse(text);
    auto add_report = [&](const nlohmann::json& r) {
      const std::string th = a.id.empty() || a.id == "all" ? r.at("theorem").get<std::string>() : a.id;
      const bool mut = a.mutate || r.value("mutate", false);
      for (const char* key : {"failures", "cap_exceeded"})
        if (r.contains(key))
          for (const auto& f : r.at(key))
            if (!f.value("document", std::string()).empty()) cases.push_back({th, f.at("document"), mut});
    };
    if (j.contains("reports"))
      for (const auto& r : j.at("reports")) add_report(r);
    else
      add_report(j);
  } else {
    if (a.id.empty() || a.id == "all") throw PreconditionFailed("replaying a .fincat file needs a theorem id");
    cases.push_back({a.id, text, a.mutate});
  }
  int code = kExitPass;
  for (const auto& cs : cases) {
    verify::Outcome out = verify::check_document(cs.theorem, parse(cs.document), cs.mutate);
    const int c = out.status == verify::Status::pass ? kExitPass : out.status == verify::Status::fail ? kExitFail : kExitCap;
    std::cout << cs.theorem << ": " << (c == kExitPass ? "PASS" : c == kExitFail ? "FAIL" : "CAP") << ": " << out.witness
              << "\n";
    code = worst(code, c);
  }
  if (cases.empty()) std::cout << "nothing to replay\n";
  return code;
}

int run_verify(VerifyArgs a) {
  if (const char* env = std::getenv("FRACTURE_CAT_SEED")) {
    try {
      std::size_t used = 0;
      a.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "FRACTURE_CAT_SEED is not an unsigned integer: " << env << "\n";
      return kExitUsage;
    }
  }
  if (!a.replay.empty()) return replay(a);
  verify::RunOptions opt;
  opt.spec.seed = a.seed;
  opt.spec.instance_count = a.count;
  opt.spec.max_objects = a.max_objects;
  opt.spec.max_morphisms = a.max_morphisms;
  for (const auto& k : a.kinds) {
    auto kind = verify::parse_kind(k);
    if (!kind) {
      std::cerr << "unknown kind '" << k << "'\n";
      return kExitUsage;
    }
    opt.spec.kinds.push_back(*kind);
  }
  opt.mutate = a.mutate;
  opt.threads = a.threads;
  opt.exhaustive_objects = a.exhaustive_objects;
  opt.exhaustive_morphisms = a.exhaustive_morphisms;
  std::vector<std::string> ids = a.id == "all" ? verify::theorem_ids() : std::vector<std::string>{a.id};
  int code = kExitPass;
  std::vector<std::string> reports;
  for (const auto& id : ids) {
    verify::TheoremReport r = verify::run_theorem(id, opt);
    print_report(r);
    reports.push_back(verify::to_json(r, !a.no_timing));
    code = worst(code, r.exit_code());
  }
  if (!a.json_path.empty()) {
    std::ofstream out(a.json_path);
    if (!out) {
      std::cerr << "cannot write " << a.json_path << "\n";
      return kExitUsage;
    }
    if (reports.size() == 1) {
      out << reports.front();
    } else {
      json all{{"schema", 1}, {"reports", json::array()}};
      for (const auto& r : reports) all["reports"].push_back(json::parse(r));
      out << all.dump(2) << "\n";
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite category computations and property verification"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a property suite over a seeded random corpus");
  verify->add_option("id", va.id, "Theorem id, or 'all'")->required();
  verify->add_option("--seed", va.seed, "Corpus seed (FRACTURE_CAT_SEED overrides)");
  verify->add_option("--count", va.count, "Random instances")->check(CLI::NonNegativeNumber);
  verify->add_option("--max-objects", va.max_objects, "Objects per category")->check(CLI::PositiveNumber);
  verify->add_option("--max-morphisms", va.max_morphisms, "Morphisms per category")->check(CLI::PositiveNumber);
  verify->add_option("--kinds", va.kinds, "posets, groupoids, general, over-[1], over-[2]")->delimiter(',');
  verify->add_option("--json", va.json_path, "Write a JSON report");
  verify->add_flag("--mutate", va.mutate, "Inject the suite's fault");
  verify->add_option("--replay", va.replay, "Re-run failures from a JSON report or a .fincat instance");
  verify->add_flag("--no-timing", va.no_timing, "Omit millis from JSON");
  verify->add_option("--threads", va.threads, "Worker threads (0 = all cores)");
  verify->add_option("--exhaustive-objects", va.exhaustive_objects,
                     "conduche-agreement: exhaustive sweep object bound (0 disables)");
  verify->add_option("--exhaustive-morphisms", va.exhaustive_morphisms,
                     "conduche-agreement: exhaustive sweep morphism bound");

  Common common;
  EndArgs ea;
  auto add_common = [&](CLI::App* sub, Common& c) {
    sub->add_option("file", c.file, "Input .fincat document")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", c.as_json, "Print JSON");
  };
  auto* end = app.add_subcommand("end", "End of hom(F-, G-) or of a diagram on C^op x C");
  auto* coend = app.add_subcommand("coend", "Coend of hom(F-, G-) or of a diagram on C^op x C");
  auto* nat = app.add_subcommand("nat", "Natural transformations F => G");
  for (auto* sub : {end, coend, nat}) {
    add_common(sub, ea.c);
    sub->add_option("functors", ea.functors, "Functor names F G");
  }
  for (auto* sub : {end, coend}) {
    sub->add_option("--diagram", ea.diagram, "Diagram name");
    sub->add_option("--on", ea.category, "Category C");
  }
  std::string name1, name2;
  auto* kan = app.add_subcommand("kan", "Left Kan extension of a presheaf along a functor");
  add_common(kan, common);
  kan->add_option("functor", name1)->required();
  kan->add_option("presheaf", name2)->required();
  auto* col = app.add_subcommand("collage", "Collage of a profunctor, as a category over [1]");
  add_common(col, common);
  col->add_option("profunctor", name1)->required();
  auto* ext = app.add_subcommand("extract", "Profunctor of a category over [1]");
  add_common(ext, common);
  ext->add_option("over", name1)->required();
  auto* cls = app.add_subcommand("classify", "Fibration flags with witnesses");
  add_common(cls, common);
  cls->add_option("over", name1)->required();
  auto* fra = app.add_subcommand("fracture", "Local data, gluing data and reconstruction");
  add_common(fra, common);
  fra->add_option("over", name1)->required();
  auto* ih = app.add_subcommand("internal-hom", "Internal hom of two categories over [1]");
  add_common(ih, common);
  ih->add_option("m", name1)->required();
  ih->add_option("n", name2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return run_verify(va);
    if (*end) return cmd_end(ea, false);
    if (*coend) return cmd_end(ea, true);
    if (*nat) return cmd_nat(ea);
    if (*kan) return cmd_kan(common, name1, name2);
    if (*col) return cmd_collage(common, name1);
    if (*ext) return cmd_extract(common, name1);
    if (*cls) return cmd_classify(common, name1);
    if (*fra) return cmd_fracture(common, name1);
    if (*ih) return cmd_internal_hom(common, name1, name2);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const ClosureExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
