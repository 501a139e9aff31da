#include <benchmark/benchmark.h>

#include "recq/arith.hpp"
#include "recq/ffzeros.hpp"
#include "recq/polyzero.hpp"
#include "recq/recurrence.hpp"
#include "recq/sieve.hpp"

namespace {

using namespace recq;

void BM_PrimesUpTo(benchmark::State& state) {
  const u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    PrimeTable t = primes_up_to(limit);
    benchmark::DoNotOptimize(t.primes.data());
  }
}
BENCHMARK(BM_PrimesUpTo)->Arg(100000)->Arg(1000000)->Arg(10000000);

void BM_EvalModFibonacci(benchmark::State& state) {
  CompanionRecurrence fib;
  fib.coeffs = {1, 1};
  fib.init = {0, 1};
  const u64 n = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_mod(fib, n, 1000000007ULL));
  }
}
BENCHMARK(BM_EvalModFibonacci)->Arg(1 << 20)->Arg(1ULL << 40);

void BM_ZerosModP(benchmark::State& state) {
  const IntPolynomial f({-2, 0, 1});  // X^2 - 2
  const PrimeTable t = primes_up_to(200000);
  for (auto _ : state) {
    u64 total = 0;
    for (u64 p : t.primes)
      if (p > 10000) total += *zeros_mod_p(f, p);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_ZerosModP);

void BM_SparseZeroCount(benchmark::State& state) {
  const FiniteField f = FiniteField::make(4093, 1);
  SparseInstance inst;
  inst.field = f;
  inst.c = {f.from_int(1), f.from_int(4092), f.from_int(7)};
  inst.a = {f.from_int(2), f.from_int(3), f.from_int(5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparse_zero_count(inst));
  }
}
BENCHMARK(BM_SparseZeroCount);

void BM_SievedCount(benchmark::State& state) {
  const IntPolynomial g({1, 0, 1});  // X^2 + 1
  const SieveSystem sys = build_sieve_system(g, {}, {}, 10, 1000);
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sieved_count(x, sys));
  }
}
BENCHMARK(BM_SievedCount)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
