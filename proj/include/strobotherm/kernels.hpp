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

// Data-parallel kernels.
//
// Every OpenMP kernel has a serial counterpart computed by a different route.
// The serial versions are the reference the tests compare against and the
// baseline of the benchmark target; the library calls the OpenMP versions.

#ifndef STROBOTHERM_KERNELS_HPP
#define STROBOTHERM_KERNELS_HPP

#include <cstddef>
#include <functional>

#include "strobotherm/liouville.hpp"

namespace strobotherm::kernels {

/// Liouvillian by Kronecker composition of each GKSL term.
ComplexMatrix liouvillian_serial(const GkslGenerator& gen);
/// Liouvillian filled entry by entry, columns distributed over threads.
ComplexMatrix liouvillian_omp(const GkslGenerator& gen);

/// Choi matrix of a channel given as a d² x d² superoperator.
/// Serial: applies the channel to each matrix unit and Kronecker-accumulates.
ComplexMatrix choi_serial(const ComplexMatrix& superop, Eigen::Index dim);
/// Parallel: permutes superoperator entries directly.
ComplexMatrix choi_omp(const ComplexMatrix& superop, Eigen::Index dim);

/// Number of threads parallel regions will use.
int thread_count();
/// Overrides the thread count for subsequent parallel regions (<= 0 resets).
void set_thread_count(int n);

/// Calls body(i) for i in [0, n) on the calling thread.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Calls body(i) for i in [0, n) across OpenMP threads. Each index runs
/// exactly once; the exception from the lowest failing index is rethrown
/// after the loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace strobotherm::kernels

#endif  // STROBOTHERM_KERNELS_HPP
