// One PASS/FAIL line per acceptance criterion. Exit 0 when all pass, 1
// otherwise; --report-only always exits 0 after printing.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fcat/catlang.hpp"
#include "fcat/fibration.hpp"
#include "fcat/shapes.hpp"
#include "fcat/verify.hpp"

using namespace fcat;
using Clock = std::chrono::steady_clock;

namespace {

struct Options {
  std::uint64_t seed = 1;
  int count = 200;
  int exhaustive_objects = 3;
  int exhaustive_morphisms = 5;
  unsigned threads = 0;
  std::string golden_dir = FCAT_GOLDEN_DIR;
  bool report_only = false;
};

struct Line {
  bool pass = false;
  std::string detail;
};

int failed_lines = 0;

void print(int n, const Line& l) {
  std::printf("criterion %d: %s - %s\n", n, l.pass ? "PASS" : "FAIL", l.detail.c_str());
  std::fflush(stdout);
  if (!l.pass) ++failed_lines;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

struct Run {
  verify::TheoremReport report;
  double seconds = 0;
  std::size_t passed = 0;  // instances neither failed nor capped
};

Run run(const std::string& id, const Options& o, int ex_objects = 0, int ex_morphisms = 0) {
  verify::RunOptions ro;
  ro.spec.seed = o.seed;
  ro.spec.instance_count = o.count;
  ro.threads = o.threads;
  ro.exhaustive_objects = ex_objects;
  ro.exhaustive_morphisms = ex_morphisms;
  const auto t0 = Clock::now();
  Run r{verify::run_theorem(id, ro), 0, 0};
  r.seconds = seconds_since(t0);
  r.passed = r.report.instances - r.report.failures.size() - r.report.capped.size();
  return r;
}

std::string summary(const Run& r) {
  return std::to_string(r.passed) + "/" + std::to_string(r.report.instances) + " instances pass, " +
         std::to_string(r.report.failures.size()) + " failures, " + std::to_string(r.report.capped.size()) +
         " capped, " + fmt_seconds(r.seconds);
}

bool clean(const Run& r) { return r.report.failures.empty() && r.report.capped.empty(); }

std::set<std::size_t> capped_indices(const Run& r) {
  std::set<std::size_t> s;
  for (const auto& f : r.report.capped) s.insert(f.instance);
  return s;
}

// Instance documents of a run, regenerated from their seeds (capped ones skipped).
template <class Pred>
std::size_t count_instances(const std::string& id, const Options& o, const Run& r, Pred pred) {
  verify::CorpusSpec spec;
  spec.seed = o.seed;
  spec.instance_count = o.count;
  const auto capped = capped_indices(r);
  std::size_t n = 0;
  for (int i = 0; i < o.count; ++i) {
    if (capped.count(static_cast<std::size_t>(i))) continue;
    n += pred(verify::make_instance(id, verify::mix_seed(o.seed, id, static_cast<std::uint64_t>(i)), spec)) ? 1 : 0;
  }
  return n;
}

bool is_groupoid(const FinCat& c) { return core(share(FinCat(c))).cat->morphism_count() == c.morphism_count(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Acceptance report"};
  app.add_option("--seed", o.seed, "Corpus seed");
  app.add_option("--count", o.count, "Random instances per suite");
  app.add_option("--exhaustive-objects", o.exhaustive_objects, "Object bound of the exhaustive sweep");
  app.add_option("--exhaustive-morphisms", o.exhaustive_morphisms, "Morphism bound of the exhaustive sweep");
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--golden", o.golden_dir, "Directory of golden .fincat files");
  app.add_flag("--report-only", o.report_only, "Always exit 0");
  CLI11_PARSE(app, argc, argv);

  const auto start = Clock::now();
  double suite_seconds = 0;

  {
    const Run r = run("end-formula", o);
    suite_seconds += r.seconds;
    print(1, {clean(r) && r.passed >= 200 && r.seconds < 60, "end formula vs brute force: " + summary(r)});
  }
  {
    const Run r = run("collage-roundtrip", o);
    suite_seconds += r.seconds;
    print(2, {clean(r) && r.passed >= 100, "both collage round trips: " + summary(r)});
  }
  {
    const Run r = run("conduche-agreement", o, o.exhaustive_objects, o.exhaustive_morphisms);
    suite_seconds += r.seconds;
    const auto& ex = *r.report.exhaustive;
    const std::size_t handcrafted = verify::handcrafted_conduche_cases().size();
    bool inert_ok = true;
    int inert = 0;
    for (int n = 0; n <= 5; ++n)
      for (int m = n; n + m <= 5; ++m)
        for (int i = 0; i + n <= m; ++i) {
          const OverBase p{shapes::inert(n, m, i)};
          inert_ok = inert_ok && is_exponential_lifting(p).holds && is_exponential_coend(p).holds;
          ++inert;
        }
    const OverBase outer{shapes::subposet_inclusion(2, {0, 2})};
    const bool outer_fails = !is_exponential_lifting(outer).holds && !is_exponential_coend(outer).holds;
    const bool bound_met = o.exhaustive_objects >= 3 && o.exhaustive_morphisms >= 8;
    const bool ok = bound_met && clean(r) && ex.disagreements == 0 && ex.interval_failures == 0 && handcrafted >= 10 &&
                    inert_ok && outer_fails;
    std::string detail = "exhaustive sweep up to " + std::to_string(o.exhaustive_objects) + " objects/" +
                         std::to_string(o.exhaustive_morphisms) + " morphisms: " + std::to_string(ex.categories) +
                         " categories, " + std::to_string(ex.functors) + " functors, " +
                         std::to_string(ex.disagreements) + " disagreements, " + std::to_string(ex.interval_failures) +
                         " failures into [1]; " + std::to_string(handcrafted) + " handcrafted; " + summary(r) + "; " +
                         std::to_string(inert) + " inert maps " + (inert_ok ? "pass" : "FAIL") + "; outer coface " +
                         (outer_fails ? "fails" : "PASSES");
    if (!bound_met) detail += "; required bound 3 objects/8 morphisms not reached (enumeration infeasible)";
    print(3, {ok, detail});
  }
  {
    const Run r = run("fracture-roundtrip", o);
    suite_seconds += r.seconds;
    const std::size_t groupoids = count_instances("fracture-roundtrip", o, r, [](const Document& d) {
      return is_groupoid(d.over("P").base()) && d.over("P").base().morphism_count() > d.over("P").base().object_count();
    });
    print(4, {clean(r) && r.passed >= 100 && groupoids > 0,
              "reconstruction and local data: " + summary(r) + ", " + std::to_string(groupoids) +
                  " over non-discrete groupoid bases"});
  }
  {
    const Run r = run("internal-hom", o);
    suite_seconds += r.seconds;
    const std::size_t with_a = count_instances("internal-hom", o, r, [](const Document& d) { return d.has("A"); });
    print(5, {clean(r) && r.passed >= 100 && with_a >= 50,
              "hom sets vs functors over [1]: " + summary(r) + ", full exponential law on " + std::to_string(with_a) +
                  " triples"});
  }
  {
    const Run r = run("straighten-roundtrip", o);
    suite_seconds += r.seconds;
    print(6, {clean(r) && r.passed >= 100, "strict diagrams recovered, identity comparisons: " + summary(r)});
  }
  {
    const Run r = run("double-cat-laws", o);
    suite_seconds += r.seconds;
    print(7, {clean(r) && r.passed >= 100, "unitors, associator and Fubini: " + summary(r)});
  }
  {
    std::string detail;
    bool ok = true;
    int golden = 0;
    for (const char* name : {"terminal.fincat", "simplex2.fincat", "bz2.fincat", "double_cover.fincat"}) {
      const std::string text = slurp(o.golden_dir + "/" + name);
      bool same = false;
      try {
        same = !text.empty() && serialize(parse(text)) == text;
      } catch (const std::exception&) {
      }
      golden += same;
      ok = ok && same;
    }
    detail = std::to_string(golden) + "/4 golden files byte exact";
    std::size_t replayed = 0, witnesses = 0;
    for (const std::string& id : verify::theorem_ids()) {
      verify::RunOptions ro;
      ro.spec.seed = o.seed;
      ro.spec.instance_count = o.count;
      ro.threads = o.threads;
      ro.mutate = true;
      const verify::TheoremReport m = verify::run_theorem(id, ro);
      if (m.failures.empty()) {
        ok = false;
        detail += "; " + id + " survives its fault";
      }
      for (const auto& f : m.failures) {
        ++witnesses;
        if (verify::check_document(id, parse(f.document), true).status == verify::Status::fail) ++replayed;
      }
    }
    ok = ok && replayed == witnesses;
    detail += "; " + std::to_string(replayed) + "/" + std::to_string(witnesses) + " mutation witnesses replay";
    ok = ok && suite_seconds < 600;
    detail += "; default suite " + fmt_seconds(suite_seconds);
    print(8, {ok, detail});
  }
  std::printf("%d of 8 criteria failed, total %s\n", failed_lines, fmt_seconds(seconds_since(start)).c_str());
  return o.report_only ? 0 : (failed_lines ? 1 : 0);
}
