#include <benchmark/benchmark.h>

#include "bpb/equilibrium.hpp"
#include "bpb/generator.hpp"
#include "bpb/learning.hpp"
#include "bpb/selection.hpp"

// Serial reference vs. OpenMP execution of the two scan kernels. On a
// single-core host the two are expected to be on par; the parallel policy pays
// off once OMP_NUM_THREADS > 1.

namespace {

struct Fixture {
  bpb::Instance inst;
  bpb::PriceVector prices;
  std::vector<bpb::Scalar> grid;

  explicit Fixture(int n) {
    inst = bpb::random_instance(bpb::MatroidFamily::Uniform, n, 4242 + n);
    prices = bpb::construct_eq_weighted(inst).prices;
    bpb::BidGrid g = bpb::BidGrid::make(bpb::Scalar(1) / 100, inst.B);
    for (int i = 0; i < g.m; ++i) grid.push_back(g.bid(i));
  }
};

void bench_verify(benchmark::State& state, bpb::ExecPolicy policy) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto rep = bpb::verify_eps_equilibrium(fx.inst, fx.prices, bpb::Scalar(0), bpb::Rule::Bpb,
                                           bpb::TieBreak::by_cost_ratio(), policy);
    benchmark::DoNotOptimize(rep.pass);
  }
}

void bench_critical(benchmark::State& state, bpb::ExecPolicy policy) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto cp = bpb::critical_price(fx.inst, fx.prices, 0, fx.grid, bpb::Rule::Bpb,
                                  bpb::TieBreak::by_cost_ratio(), policy);
    benchmark::DoNotOptimize(cp.has_value());
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_verify, serial, bpb::ExecPolicy::Serial)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK_CAPTURE(bench_verify, parallel, bpb::ExecPolicy::Parallel)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK_CAPTURE(bench_critical, serial, bpb::ExecPolicy::Serial)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK_CAPTURE(bench_critical, parallel, bpb::ExecPolicy::Parallel)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
