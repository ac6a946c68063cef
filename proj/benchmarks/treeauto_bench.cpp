#include <benchmark/benchmark.h>

#include "treeauto/activity.hpp"
#include "treeauto/catalog.hpp"
#include "treeauto/freeness.hpp"
#include "treeauto/nucleus.hpp"
#include "treeauto/schreier.hpp"

using namespace treeauto;

namespace {

// Powers of a product grow the machine, so compose has real work to do.
void BM_ComposeAleshinPowers(benchmark::State& state) {
  const GeneratorSet gens = builtin("aleshin").generators;
  const Automorphism x = evaluate_word(gens, GroupWord::parse("a b c").power(state.range(0)));
  const Automorphism y = evaluate_word(gens, GroupWord::parse("c b^-1"));
  for (auto _ : state) benchmark::DoNotOptimize(compose(x, y));
}
BENCHMARK(BM_ComposeAleshinPowers)->Arg(1)->Arg(2);

void BM_ThetaSequence(benchmark::State& state) {
  const Automorphism b = builtin("aleshin").generators.at("a");
  for (auto _ : state) benchmark::DoNotOptimize(theta_sequence(b, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ThetaSequence)->Arg(64)->Arg(512);

void BM_NucleusGrigorchuk(benchmark::State& state) {
  const GeneratorSet gens = builtin("grigorchuk").generators;
  for (auto _ : state) benchmark::DoNotOptimize(nucleus(gens));
}
BENCHMARK(BM_NucleusGrigorchuk);

void BM_NucleusBasilica(benchmark::State& state) {
  const GeneratorSet gens = builtin("basilica").generators;
  for (auto _ : state) benchmark::DoNotOptimize(nucleus(gens));
}
BENCHMARK(BM_NucleusBasilica);

void BM_FindRelationsGrigorchuk(benchmark::State& state) {
  const GeneratorSet gens = builtin("grigorchuk").generators;
  for (auto _ : state)
    benchmark::DoNotOptimize(find_relations(gens, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FindRelationsGrigorchuk)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_FindRelationsAleshin(benchmark::State& state) {
  const GeneratorSet gens = builtin("aleshin").generators;
  for (auto _ : state) benchmark::DoNotOptimize(find_relations(gens, 8));
}
BENCHMARK(BM_FindRelationsAleshin)->Unit(benchmark::kMillisecond);

void BM_SchreierLevel(benchmark::State& state) {
  const GeneratorSet gens = builtin("grigorchuk").generators;
  const Vertex seed(std::vector<Letter>(static_cast<std::size_t>(state.range(0)), 0));
  for (auto _ : state) benchmark::DoNotOptimize(schreier_level_graph(gens, seed));
}
BENCHMARK(BM_SchreierLevel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FolnerCandidate(benchmark::State& state) {
  const GeneratorSet gens = builtin("grigorchuk").generators;
  const BoundaryPoint w = BoundaryPoint::parse(":1", gens.alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(folner_candidate(gens, w, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FolnerCandidate)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
