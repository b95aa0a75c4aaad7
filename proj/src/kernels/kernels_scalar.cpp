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

#include "pel/kernels/kernels.hpp"

namespace pel::kernels {
namespace {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx *a, std::size_t lda, const cplx *b,
                 std::size_t ldb, cplx *c, std::size_t ldc) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx *crow = c + i * ldc;
        for (std::size_t j = 0; j < n; ++j) {
            crow[j] = 0.0;
        }
        const cplx *arow = a + i * lda;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = arow[p].real();
            const double ai = arow[p].imag();
            if (ar == 0.0 && ai == 0.0) {
                continue;
            }
            const cplx *brow = b + p * ldb;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real();
                const double bi = brow[j].imag();
                crow[j] = {crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br)};
            }
        }
    }
}

void gemm_adj_b_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx *a, std::size_t lda,
                       const cplx *b, std::size_t ldb, cplx *c, std::size_t ldc) {
    for (std::size_t i = 0; i < m; ++i) {
        const cplx *arow = a + i * lda;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx *brow = b + j * ldb;
            double re = 0.0;
            double im = 0.0;
            for (std::size_t p = 0; p < k; ++p) {
                const double ar = arow[p].real();
                const double ai = arow[p].imag();
                const double br = brow[p].real();
                const double bi = brow[p].imag();
                re += ar * br + ai * bi;
                im += ai * br - ar * bi;
            }
            c[i * ldc + j] = {re, im};
        }
    }
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx *x, cplx *y) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

double norm_sq_scalar(std::size_t n, const cplx *x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += std::norm(x[i]);
    }
    return s;
}

}  // namespace

const KernelTable &scalar_table() {
    static const KernelTable t{Backend::Scalar, gemm_scalar, gemm_adj_b_scalar, axpy_scalar, norm_sq_scalar};
    return t;
}

}  // namespace pel::kernels
