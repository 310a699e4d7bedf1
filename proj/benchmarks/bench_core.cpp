#include <benchmark/benchmark.h>

#include "qrel/harness.hpp"
#include "qrel/rng.hpp"

using namespace qrel;

namespace {

FiniteSet carrier(const std::string& prefix, int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; i++) labels.push_back(prefix + std::to_string(i));
  return FiniteSet(prefix, labels);
}

VRel random_lawvere(Rng& rng, const FiniteSet& s) {
  return VRel::build(QuantaleId::lawvere(), s, s, [&](int, int) {
    return QValue::lawvere(XRat(make_rat(static_cast<long>(rng.below(100)))));
  });
}

void BM_ComposeLawvere(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(1);
  FiniteSet s = carrier("n", n);
  VRel a = random_lawvere(rng, s), b = random_lawvere(rng, s);
  for (auto _ : state) benchmark::DoNotOptimize(rel_compose(a, b));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ComposeLawvere)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DeltaTensor(benchmark::State& state) {
  Rng rng(2);
  std::vector<StepFunction> fns;
  for (int i = 0; i < 64; i++) {
    std::vector<StepFunction::Jump> raw;
    for (int j = 0; j < 4; j++)
      raw.push_back({make_rat(static_cast<long>(rng.below(8)), 1 + rng.below(4)),
                     make_rat(static_cast<long>(rng.below(5)), 4)});
    fns.push_back(StepFunction::normalized(std::move(raw)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sf_convolve(TNorm::lukasiewicz, fns[i % 64], fns[(i + 7) % 64]));
    i++;
  }
}
BENCHMARK(BM_DeltaTensor);

void BM_DeltaResiduate(benchmark::State& state) {
  Rng rng(3);
  std::vector<StepFunction> fns;
  for (int i = 0; i < 64; i++) {
    std::vector<StepFunction::Jump> raw;
    for (int j = 0; j < 4; j++)
      raw.push_back({make_rat(static_cast<long>(rng.below(8)), 1 + rng.below(4)),
                     make_rat(static_cast<long>(rng.below(5)), 4)});
    fns.push_back(StepFunction::normalized(std::move(raw)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf_residuate(TNorm::minimum, fns[i % 64], fns[(i + 9) % 64]));
    i++;
  }
}
BENCHMARK(BM_DeltaResiduate);

void BM_PowersetExtend(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(4);
  FiniteSet s = carrier("n", n);
  VRel j = random_lawvere(rng, s);
  for (auto _ : state) benchmark::DoNotOptimize(powerset_extend(j));
}
BENCHMARK(BM_PowersetExtend)->Arg(4)->Arg(6)->Arg(8);

void BM_MaxTheoremInstance(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.quantales = {QuantaleId::lawvere(), QuantaleId::unit_interval(TNorm::product)};
  cfg.seed = 5;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto inst =
        std::get<MaxInstance>(gen_instance(cfg, InstanceKind::max_left_bc, trial++));
    benchmark::DoNotOptimize(verify_max_theorem(MaxVariant::left_bc, inst));
  }
}
BENCHMARK(BM_MaxTheoremInstance);

}  // namespace

BENCHMARK_MAIN();
