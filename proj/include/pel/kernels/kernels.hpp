// Copyright 2026 The pel Authors
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

#ifndef PEL_KERNELS_KERNELS_HPP
#define PEL_KERNELS_KERNELS_HPP

// Dense complex inner loops. Every kernel has a scalar reference version and,
// where the build and the CPU allow it, an AVX2/FMA version. The active table
// is picked once at startup from cpuid; tests pin each backend explicitly and
// compare the two.
//
// All matrices are row-major with explicit leading dimensions (elements, not
// bytes). Output buffers must not alias inputs.

#include <complex>
#include <cstddef>
#include <vector>

namespace pel::kernels {

using cplx = std::complex<double>;

enum class Backend {
    Scalar,
    Avx2,
};

struct KernelTable {
    Backend backend;

    // C (m x n) = A (m x k) * B (k x n)
    void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx *a, std::size_t lda, const cplx *b,
                 std::size_t ldb, cplx *c, std::size_t ldc);

    // C (m x n) = A (m x k) * B^H, where B is stored as n x k
    void (*gemm_adj_b)(std::size_t m, std::size_t n, std::size_t k, const cplx *a, std::size_t lda,
                       const cplx *b, std::size_t ldb, cplx *c, std::size_t ldc);

    // y += alpha * x
    void (*axpy)(std::size_t n, cplx alpha, const cplx *x, cplx *y);

    // sum_i |x_i|^2
    double (*norm_sq)(std::size_t n, const cplx *x);
};

const KernelTable &scalar_table();

/// Backends compiled into this binary and supported by the running CPU.
std::vector<Backend> available_backends();
bool backend_available(Backend backend);
const KernelTable &table(Backend backend);

/// The table used by the rest of the library.
const KernelTable &active();

/// Overrides the runtime choice; throws if the backend is unavailable.
void force_backend(Backend backend);
void reset_backend();

const char *backend_name(Backend backend);

}  // namespace pel::kernels

#endif
