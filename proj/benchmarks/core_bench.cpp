#include <benchmark/benchmark.h>

#include "fcat/catlang.hpp"
#include "fcat/fibration.hpp"
#include "fcat/fracture.hpp"
#include "fcat/profunctor.hpp"
#include "fcat/shapes.hpp"
#include "fcat/twisted.hpp"
#include "fcat/verify.hpp"

using namespace fcat;

namespace {

// k x k grid poset built as a product of simplices.
CatRef grid(int k) { return product(shapes::simplex(k - 1), shapes::simplex(k - 1)); }

void BM_TwistedArrow(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twisted_arrow(c));
  state.counters["morphisms"] = c->morphism_count();
}
BENCHMARK(BM_TwistedArrow)->DenseRange(2, 4);

void BM_EndOfHom(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  const FinFunctor id = identity_functor(c);
  const SetDiagram t = hom_diagram(id, id);
  for (auto _ : state) benchmark::DoNotOptimize(end_of(c, t));
}
BENCHMARK(BM_EndOfHom)->DenseRange(2, 5);

void BM_CoendOfHom(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  const FinFunctor id = identity_functor(c);
  const SetDiagram t = hom_diagram(id, id);
  for (auto _ : state) benchmark::DoNotOptimize(coend_of(c, t));
}
BENCHMARK(BM_CoendOfHom)->DenseRange(2, 5);

void BM_LeftKanYoneda(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FinFunctor f = shapes::inert(1, n, 0);
  const Presheaf y = yoneda(f.dom, 1);
  for (auto _ : state) benchmark::DoNotOptimize(left_kan(f, y));
}
BENCHMARK(BM_LeftKanYoneda)->DenseRange(2, 6);

void BM_Classify(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  const OverBase p{product_projection(product(shapes::simplex(2), c), shapes::simplex(2), c, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(classify(p));
}
BENCHMARK(BM_Classify)->DenseRange(1, 3);

void BM_CollageRoundTrip(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  const Profunctor h = hom_profunctor(c);
  for (auto _ : state) benchmark::DoNotOptimize(extract(collage(h).over));
}
BENCHMARK(BM_CollageRoundTrip)->DenseRange(2, 4);

void BM_ComposeHom(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  const Profunctor h = hom_profunctor(c);
  for (auto _ : state) benchmark::DoNotOptimize(compose_profunctors(h, h));
}
BENCHMARK(BM_ComposeHom)->DenseRange(2, 4);

void BM_LaxDiagramRoundTrip(benchmark::State& state) {
  const CatRef c = grid(static_cast<int>(state.range(0)));
  const OverBase p{product_projection(product(shapes::simplex(2), c), shapes::simplex(2), c, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(collage_of_diagram(lax_diagram_of(p)));
}
BENCHMARK(BM_LaxDiagramRoundTrip)->DenseRange(1, 3);

void BM_SerializeParse(benchmark::State& state) {
  verify::CorpusSpec spec;
  spec.instance_count = static_cast<int>(state.range(0));
  std::vector<std::string> texts;
  for (const verify::Instance& inst : verify::gen_corpus(spec)) texts.push_back(serialize(inst.doc));
  for (auto _ : state)
    for (const std::string& t : texts) benchmark::DoNotOptimize(serialize(parse(t)));
}
BENCHMARK(BM_SerializeParse)->Arg(50);

void BM_Suite(benchmark::State& state, const char* id) {
  verify::RunOptions ro;
  ro.spec.instance_count = 50;
  ro.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(verify::run_theorem(id, ro));
}
BENCHMARK_CAPTURE(BM_Suite, end_formula, "end-formula")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Suite, collage_roundtrip, "collage-roundtrip")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Suite, double_cat_laws, "double-cat-laws")->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
