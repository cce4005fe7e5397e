#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "predprey/diagnostics.hpp"
#include "predprey/dynamics.hpp"

using namespace predprey;

namespace {

State cosine_state(int n) {
  const Grid g = Grid::square(n, 4.0);
  auto mode = [](double x, double y) {
    return std::cos(std::numbers::pi * x / 4.0) * std::cos(std::numbers::pi * y / 4.0);
  };
  return {Field::from_function(g, [&](double x, double y) { return 1.5 + 0.5 * mode(x, y); }),
          Field::from_function(g, [&](double x, double y) { return 0.5 + 0.3 * mode(x, y); }),
          0.0};
}

void BM_Rhs(benchmark::State& st) {
  const State s = cosine_state(static_cast<int>(st.range(0)));
  const ModelParams p;
  const SchemeConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(rhs(s, p, cfg));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(s.u.size()));
}
BENCHMARK(BM_Rhs)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_Step(benchmark::State& st) {
  const State s = cosine_state(static_cast<int>(st.range(0)));
  const ModelParams p;
  const SchemeConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(step(s, p, cfg));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(s.u.size()));
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64)->Arg(128);

void BM_Record(benchmark::State& st) {
  const State s = cosine_state(static_cast<int>(st.range(0)));
  const ModelParams p;
  const RecordContext ctx = make_record_context(p, SchemeConfig{}, s.v.max());
  for (auto _ : st) benchmark::DoNotOptimize(record(s, ctx));
}
BENCHMARK(BM_Record)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
