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

#include <bit>
#include <cstdint>

#include "pel/error.hpp"
#include "pel/permanent.hpp"

namespace pel {

cplx permanent(const CMatrix &a) {
    if (!a.square()) {
        throw Error(ErrorKind::Contract, "permanent of a non-square matrix");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1.0;
    }
    if (n > 40) {
        throw Error(ErrorKind::Capacity, "permanent of a matrix larger than 40x40");
    }
    // Column sums of delta_i * a_ij, starting from delta = (1, ..., 1).
    std::vector<cplx> sums(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            sums[j] += a(i, j);
        }
    }
    auto product = [&]() {
        cplx p = 1.0;
        for (const cplx &s : sums) {
            p *= s;
        }
        return p;
    };
    cplx total = product();
    double sign = 1.0;
    std::uint64_t gray = 0;
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t k = 1; k < count; ++k) {
        const int bit = std::countr_zero(k);
        const std::uint64_t mask = std::uint64_t{1} << bit;
        gray ^= mask;
        // Row bit+1 flips its sign.
        const double flip = (gray & mask) ? -2.0 : 2.0;
        const std::size_t row = static_cast<std::size_t>(bit) + 1;
        for (std::size_t j = 0; j < n; ++j) {
            sums[j] += flip * a(row, j);
        }
        sign = -sign;
        total += sign * product();
    }
    return total / static_cast<double>(count);
}

}  // namespace pel
