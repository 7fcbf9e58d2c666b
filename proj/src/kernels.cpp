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

#include "strobotherm/kernels.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <vector>

#include <omp.h>

namespace strobotherm::kernels {

namespace {

std::atomic<int> g_thread_override{0};

}  // namespace

ComplexMatrix liouvillian_serial(const GkslGenerator& gen) {
  const Eigen::Index d = gen.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const cplx i_unit(0.0, 1.0);
  const ComplexMatrix& h = gen.hamiltonian();
  ComplexMatrix out = -i_unit * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& jump : gen.jumps()) {
    const ComplexMatrix n = jump.op.adjoint() * jump.op;
    out += jump.rate * (kron(jump.op.conjugate(), jump.op) - 0.5 * kron(id, n) -
                        0.5 * kron(n.transpose(), id));
  }
  return out;
}

ComplexMatrix liouvillian_omp(const GkslGenerator& gen) {
  const Eigen::Index d = gen.dim();
  const Eigen::Index d2 = d * d;
  const ComplexMatrix& h = gen.hamiltonian();
  const auto& jumps = gen.jumps();
  std::vector<ComplexMatrix> number_ops;
  number_ops.reserve(jumps.size());
  for (const auto& jump : jumps) number_ops.push_back(jump.op.adjoint() * jump.op);
  const cplx i_unit(0.0, 1.0);

  ComplexMatrix out(d2, d2);
  const int threads = thread_count();
  // Column (k, l) of the superoperator holds the image of |k><l|.
#pragma omp parallel for num_threads(threads) schedule(static)
  for (Eigen::Index col = 0; col < d2; ++col) {
    const Eigen::Index k = col % d;
    const Eigen::Index l = col / d;
    for (Eigen::Index row = 0; row < d2; ++row) {
      const Eigen::Index i = row % d;
      const Eigen::Index j = row / d;
      cplx v = 0.0;
      if (l == j) v -= i_unit * h(i, k);
      if (i == k) v += i_unit * h(l, j);
      for (std::size_t q = 0; q < jumps.size(); ++q) {
        const ComplexMatrix& op = jumps[q].op;
        const ComplexMatrix& n = number_ops[q];
        cplx t = op(i, k) * std::conj(op(j, l));
        if (l == j) t -= 0.5 * n(i, k);
        if (i == k) t -= 0.5 * n(l, j);
        v += jumps[q].rate * t;
      }
      out(row, col) = v;
    }
  }
  return out;
}

ComplexMatrix choi_serial(const ComplexMatrix& superop, Eigen::Index dim) {
  const Eigen::Index d2 = dim * dim;
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      const ComplexMatrix image = unvec(superop * vec(unit), dim);
      out += kron(unit, image);
    }
  }
  return out;
}

ComplexMatrix choi_omp(const ComplexMatrix& superop, Eigen::Index dim) {
  const Eigen::Index d2 = dim * dim;
  ComplexMatrix out(d2, d2);
  const int threads = thread_count();
#pragma omp parallel for collapse(2) num_threads(threads) schedule(static)
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index l = 0; l < dim; ++l) {
        for (Eigen::Index k = 0; k < dim; ++k) {
          out(i * dim + k, j * dim + l) = superop(k + dim * l, i + dim * j);
        }
      }
    }
  }
  return out;
}

int thread_count() {
  const int forced = g_thread_override.load();
  return forced > 0 ? forced : omp_get_max_threads();
}

void set_thread_count(int n) { g_thread_override.store(n > 0 ? n : 0); }

void serial_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::exception_ptr first_error;
  long long first_index = -1;
  std::mutex error_mutex;
  const auto count = static_cast<long long>(n);
  const int threads = thread_count();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (first_index < 0 || i < first_index) {
        first_error = std::current_exception();
        first_index = i;
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace strobotherm::kernels
