// Copyright 2026 The strobotherm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.
// The thread count follows STROBOTHERM_THREADS when set.

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <random>

#include "strobotherm/kernels.hpp"
#include "strobotherm/liouville.hpp"
#include "strobotherm/matcore.hpp"

namespace {

using namespace strobotherm;

ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> n;
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

GkslGenerator make_generator(Eigen::Index d) {
  std::mt19937_64 rng(0x5eed2026ULL + static_cast<std::uint64_t>(d));
  const ComplexMatrix a = random_complex(rng, d);
  std::vector<JumpOperator> jumps;
  for (int k = 0; k < 3; ++k) jumps.push_back({random_complex(rng, d), 0.1 * (k + 1)});
  return GkslGenerator(0.5 * (a + a.adjoint()), std::move(jumps));
}

void apply_thread_env() {
  if (const char* raw = std::getenv("STROBOTHERM_THREADS")) kernels::set_thread_count(std::atoi(raw));
}

void BM_LiouvillianSerial(benchmark::State& state) {
  const GkslGenerator gen = make_generator(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::liouvillian_serial(gen));
}

void BM_LiouvillianOmp(benchmark::State& state) {
  apply_thread_env();
  const GkslGenerator gen = make_generator(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::liouvillian_omp(gen));
  state.counters["threads"] = kernels::thread_count();
}

void BM_ChoiSerial(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const ComplexMatrix superop = Propagator(make_generator(d), 0.3).superoperator();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::choi_serial(superop, d));
}

void BM_ChoiOmp(benchmark::State& state) {
  apply_thread_env();
  const Eigen::Index d = state.range(0);
  const ComplexMatrix superop = Propagator(make_generator(d), 0.3).superoperator();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::choi_omp(superop, d));
  state.counters["threads"] = kernels::thread_count();
}

BENCHMARK(BM_LiouvillianSerial)->Arg(2)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_LiouvillianOmp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_ChoiSerial)->Arg(2)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_ChoiOmp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
