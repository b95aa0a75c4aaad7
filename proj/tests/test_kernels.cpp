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

#include <gtest/gtest.h>

#include <random>

#include "pel/kernels/kernels.hpp"

namespace {

using pel::kernels::cplx;
namespace k = pel::kernels;

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto &x : v) {
        x = cplx(g(rng), g(rng));
    }
    return v;
}

double max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

struct Shape {
    std::size_t m, n, k;
};

const Shape kShapes[] = {{1, 1, 1}, {3, 5, 7}, {4, 4, 4}, {8, 9, 10}, {17, 3, 33}, {31, 32, 33}, {64, 65, 5}};

TEST(Kernels, ScalarGemmMatchesTripleLoop) {
    std::mt19937_64 rng(1);
    const auto &t = k::scalar_table();
    for (const Shape &s : kShapes) {
        const auto a = random_vec(s.m * s.k, rng);
        const auto b = random_vec(s.k * s.n, rng);
        std::vector<cplx> c(s.m * s.n), ref(s.m * s.n);
        t.gemm(s.m, s.n, s.k, a.data(), s.k, b.data(), s.n, c.data(), s.n);
        for (std::size_t i = 0; i < s.m; ++i) {
            for (std::size_t j = 0; j < s.n; ++j) {
                for (std::size_t l = 0; l < s.k; ++l) {
                    ref[i * s.n + j] += a[i * s.k + l] * b[l * s.n + j];
                }
            }
        }
        EXPECT_LT(max_diff(c, ref), 1e-12 * s.k);
    }
}

TEST(Kernels, ScalarGemmAdjointMatchesTripleLoop) {
    std::mt19937_64 rng(2);
    const auto &t = k::scalar_table();
    for (const Shape &s : kShapes) {
        const auto a = random_vec(s.m * s.k, rng);
        const auto b = random_vec(s.n * s.k, rng);
        std::vector<cplx> c(s.m * s.n), ref(s.m * s.n);
        t.gemm_adj_b(s.m, s.n, s.k, a.data(), s.k, b.data(), s.k, c.data(), s.n);
        for (std::size_t i = 0; i < s.m; ++i) {
            for (std::size_t j = 0; j < s.n; ++j) {
                for (std::size_t l = 0; l < s.k; ++l) {
                    ref[i * s.n + j] += a[i * s.k + l] * std::conj(b[j * s.k + l]);
                }
            }
        }
        EXPECT_LT(max_diff(c, ref), 1e-12 * s.k);
    }
}

TEST(Kernels, LeadingDimensionsAreHonoured) {
    std::mt19937_64 rng(3);
    const std::size_t m = 5, n = 6, kk = 7, lda = 9, ldb = 11, ldc = 13;
    const auto a = random_vec(m * lda, rng);
    const auto b = random_vec(kk * ldb, rng);
    for (k::Backend be : k::available_backends()) {
        std::vector<cplx> c(m * ldc, cplx(42.0, 0.0));
        k::table(be).gemm(m, n, kk, a.data(), lda, b.data(), ldb, c.data(), ldc);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < ldc; ++j) {
                if (j >= n) {
                    EXPECT_EQ(c[i * ldc + j], cplx(42.0, 0.0)) << "padding overwritten";
                    continue;
                }
                cplx ref = 0.0;
                for (std::size_t l = 0; l < kk; ++l) {
                    ref += a[i * lda + l] * b[l * ldb + j];
                }
                EXPECT_LT(std::abs(c[i * ldc + j] - ref), 1e-12);
            }
        }
    }
}

TEST(Kernels, BackendsAgree) {
    const auto backends = k::available_backends();
    ASSERT_FALSE(backends.empty());
    EXPECT_EQ(backends.front(), k::Backend::Scalar);
    std::mt19937_64 rng(4);
    const auto &ref = k::scalar_table();
    for (k::Backend be : backends) {
        const auto &t = k::table(be);
        SCOPED_TRACE(k::backend_name(be));
        for (const Shape &s : kShapes) {
            const auto a = random_vec(s.m * s.k, rng);
            const auto b = random_vec(s.k * s.n, rng);
            const auto bt = random_vec(s.n * s.k, rng);
            std::vector<cplx> c1(s.m * s.n), c2(s.m * s.n);
            ref.gemm(s.m, s.n, s.k, a.data(), s.k, b.data(), s.n, c1.data(), s.n);
            t.gemm(s.m, s.n, s.k, a.data(), s.k, b.data(), s.n, c2.data(), s.n);
            EXPECT_LT(max_diff(c1, c2), 1e-12 * s.k);
            ref.gemm_adj_b(s.m, s.n, s.k, a.data(), s.k, bt.data(), s.k, c1.data(), s.n);
            t.gemm_adj_b(s.m, s.n, s.k, a.data(), s.k, bt.data(), s.k, c2.data(), s.n);
            EXPECT_LT(max_diff(c1, c2), 1e-12 * s.k);

            const std::size_t len = s.m * s.k;
            auto y1 = random_vec(len, rng);
            auto y2 = y1;
            const cplx alpha(0.3, -1.7);
            ref.axpy(len, alpha, a.data(), y1.data());
            t.axpy(len, alpha, a.data(), y2.data());
            EXPECT_LT(max_diff(y1, y2), 1e-13);
            EXPECT_NEAR(ref.norm_sq(len, a.data()), t.norm_sq(len, a.data()), 1e-12 * len);
        }
    }
}

TEST(Kernels, ForcingBackendChangesActiveTable) {
    for (k::Backend be : k::available_backends()) {
        k::force_backend(be);
        EXPECT_EQ(k::active().backend, be);
    }
    k::reset_backend();
    EXPECT_EQ(k::active().backend, k::available_backends().back());
}

}  // namespace
