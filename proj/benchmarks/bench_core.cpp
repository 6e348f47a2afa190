// Hot-path timings: negativity evaluation, the two key-rate routes, the
// illumination exponents, and a full sweep row.

#include <benchmark/benchmark.h>

#include "thzlink/gaussian.hpp"
#include "thzlink/qkd.hpp"
#include "thzlink/radar.hpp"
#include "thzlink/sweep.hpp"
#include "thzlink/thermal.hpp"

namespace {

void bm_log_negativity(benchmark::State& state) {
  thzlink::TwoModeCM cm = thzlink::squeezed_thermal_cm(10.0, 3.1278, 3.1278);
  for (auto _ : state) benchmark::DoNotOptimize(thzlink::log_negativity(cm));
}
BENCHMARK(bm_log_negativity);

void bm_closed_form_rate(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(thzlink::rr_key_rate(1.085, 0.0014, 0.1).raw_bits);
}
BENCHMARK(bm_closed_form_rate);

void bm_pipeline_rate(benchmark::State& state) {
  thzlink::QkdScenario sc;
  sc.v0 = 1.085;
  sc.trans = 0.5;
  sc.eta = 0.1;
  for (auto _ : state)
    benchmark::DoNotOptimize(thzlink::rr_key_rate_from_model_asymptotic(sc).raw_bits);
}
BENCHMARK(bm_pipeline_rate);

void bm_qi_exponent_1thz(benchmark::State& state) {
  thzlink::IlluminationScenario sc;
  sc.background_nb = 5.68114472689;
  for (auto _ : state) benchmark::DoNotOptimize(thzlink::qi_exponent(sc).exponent);
}
BENCHMARK(bm_qi_exponent_1thz);

void bm_qi_exponent_bright(benchmark::State& state) {
  thzlink::IlluminationScenario sc;
  sc.background_nb = 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(thzlink::qi_exponent(sc).exponent);
}
BENCHMARK(bm_qi_exponent_bright);

void bm_dense_chernoff(benchmark::State& state) {
  thzlink::IlluminationScenario sc;
  sc.background_nb = 0.2;
  thzlink::FockStatePair pair = thzlink::qi_states(sc);
  int dim = pair.dim_return * pair.dim_idler;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        thzlink::chernoff_exponent(pair.rho0, pair.rho1, dim).exponent);
}
BENCHMARK(bm_dense_chernoff);

void bm_keyrate_sweep_row(benchmark::State& state) {
  thzlink::ParamLists params = {{"freq", {50e12}}, {"temp", {30.0}}, {"eta", {0.1}},
                                {"w0", {0.1}},     {"ra", {0.1}},
                                {"dist", {2e5}}};
  for (auto _ : state)
    benchmark::DoNotOptimize(thzlink::run_command("keyrate", params).rows.size());
}
BENCHMARK(bm_keyrate_sweep_row);

}  // namespace

BENCHMARK_MAIN();
