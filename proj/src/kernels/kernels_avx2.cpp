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

// Compiled with -mavx2 -mfma; only reached through the dispatch table after a
// cpuid check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace pel::kernels::detail {
namespace {

// (a_re + i a_im) * [b0, b1] for two interleaved complex numbers in b.
inline __m256d cmul_broadcast(__m256d a_re, __m256d a_im, __m256d b) {
    const __m256d b_swapped = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swapped));
}

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx *a, std::size_t lda, const cplx *b,
               std::size_t ldb, cplx *c, std::size_t ldc) {
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        double *crow = reinterpret_cast<double *>(c + i * ldc);
        for (std::size_t j = 0; j < 2 * n; ++j) {
            crow[j] = 0.0;
        }
        const cplx *arow = a + i * lda;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = arow[p].real();
            const double ai = arow[p].imag();
            if (ar == 0.0 && ai == 0.0) {
                continue;
            }
            const __m256d vr = _mm256_set1_pd(ar);
            const __m256d vi = _mm256_set1_pd(ai);
            const double *brow = reinterpret_cast<const double *>(b + p * ldb);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
                const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(cv, cmul_broadcast(vr, vi, bv)));
            }
            for (; j < n; ++j) {
                const double br = brow[2 * j];
                const double bi = brow[2 * j + 1];
                crow[2 * j] += ar * br - ai * bi;
                crow[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

void gemm_adj_b_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx *a, std::size_t lda,
                     const cplx *b, std::size_t ldb, cplx *c, std::size_t ldc) {
    const std::size_t k2 = k & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const double *arow = reinterpret_cast<const double *>(a + i * lda);
        for (std::size_t j = 0; j < n; ++j) {
            const double *brow = reinterpret_cast<const double *>(b + j * ldb);
            // direct: [ar*br, ai*bi], crossed: [ar*bi, ai*br]
            __m256d direct = _mm256_setzero_pd();
            __m256d crossed = _mm256_setzero_pd();
            std::size_t p = 0;
            for (; p < k2; p += 2) {
                const __m256d av = _mm256_loadu_pd(arow + 2 * p);
                const __m256d bv = _mm256_loadu_pd(brow + 2 * p);
                direct = _mm256_fmadd_pd(av, bv, direct);
                crossed = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), crossed);
            }
            alignas(32) double d[4];
            alignas(32) double x[4];
            _mm256_store_pd(d, direct);
            _mm256_store_pd(x, crossed);
            double re = (d[0] + d[1]) + (d[2] + d[3]);
            double im = (x[1] - x[0]) + (x[3] - x[2]);
            for (; p < k; ++p) {
                const double ar = arow[2 * p];
                const double ai = arow[2 * p + 1];
                const double br = brow[2 * p];
                const double bi = brow[2 * p + 1];
                re += ar * br + ai * bi;
                im += ai * br - ar * bi;
            }
            c[i * ldc + j] = {re, im};
        }
    }
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx *x, cplx *y) {
    const __m256d vr = _mm256_set1_pd(alpha.real());
    const __m256d vi = _mm256_set1_pd(alpha.imag());
    const double *xd = reinterpret_cast<const double *>(x);
    double *yd = reinterpret_cast<double *>(y);
    const std::size_t n2 = n & ~std::size_t{1};
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_broadcast(vr, vi, xv)));
    }
    for (; i < n; ++i) {
        const double xr = xd[2 * i];
        const double xi = xd[2 * i + 1];
        yd[2 * i] += alpha.real() * xr - alpha.imag() * xi;
        yd[2 * i + 1] += alpha.real() * xi + alpha.imag() * xr;
    }
}

double norm_sq_avx2(std::size_t n, const cplx *x) {
    const double *xd = reinterpret_cast<const double *>(x);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n2 = n & ~std::size_t{1};
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double a[4];
    _mm256_store_pd(a, acc);
    double s = (a[0] + a[1]) + (a[2] + a[3]);
    for (; i < n; ++i) {
        s += xd[2 * i] * xd[2 * i] + xd[2 * i + 1] * xd[2 * i + 1];
    }
    return s;
}

}  // namespace

const KernelTable &avx2_table() {
    static const KernelTable t{Backend::Avx2, gemm_avx2, gemm_adj_b_avx2, axpy_avx2, norm_sq_avx2};
    return t;
}

}  // namespace pel::kernels::detail
