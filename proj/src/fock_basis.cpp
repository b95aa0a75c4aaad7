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

#include "pel/fock_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pel/error.hpp"

namespace pel {
namespace {

// Occupation vectors with `modes` entries summing to exactly `n`, in
// ascending lexicographic order.
void enumerate_sector(int modes, int n, std::vector<int> &prefix, std::vector<int> &out) {
    const int used = static_cast<int>(prefix.size());
    if (used == modes - 1) {
        int rest = n;
        for (int v : prefix) {
            rest -= v;
        }
        out.insert(out.end(), prefix.begin(), prefix.end());
        out.push_back(rest);
        return;
    }
    int remaining = n;
    for (int v : prefix) {
        remaining -= v;
    }
    for (int v = 0; v <= remaining; ++v) {
        prefix.push_back(v);
        enumerate_sector(modes, n, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::optional<std::size_t> FockBasis::count_states(int modes, int cutoff) {
    // C(cutoff + modes, modes) computed incrementally; each partial product is
    // itself a binomial coefficient, so the division is exact.
    unsigned long long c = 1;
    for (int i = 1; i <= modes; ++i) {
        const unsigned long long num = static_cast<unsigned long long>(cutoff) + static_cast<unsigned long long>(i);
        if (c > std::numeric_limits<unsigned long long>::max() / num) {
            return std::nullopt;
        }
        c = c * num / static_cast<unsigned long long>(i);
    }
    if (c > std::numeric_limits<std::size_t>::max()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(c);
}

FockBasis::FockBasis(int modes, int cutoff, const Tolerances &tol) : modes_(modes), cutoff_(cutoff) {
    if (modes < 1) {
        throw Error(ErrorKind::Validation, "basis needs at least one mode (got " + std::to_string(modes) + ")");
    }
    if (cutoff < 0) {
        throw Error(ErrorKind::Validation, "photon cutoff must be non-negative (got " + std::to_string(cutoff) + ")");
    }
    const auto count = count_states(modes, cutoff);
    if (!count || *count > tol.max_dimension) {
        std::ostringstream os;
        os << "basis with " << modes << " modes and cutoff " << cutoff << " has dimension ";
        if (count) {
            os << *count;
        } else {
            os << "beyond 64-bit range";
        }
        os << ", above the configured maximum " << tol.max_dimension;
        throw Error(ErrorKind::Capacity, os.str());
    }
    const std::size_t dim = *count;
    const auto m = static_cast<std::size_t>(modes);

    occupations_.reserve(dim * m);
    block_start_.push_back(0);
    std::vector<int> prefix;
    for (int n = 0; n <= cutoff; ++n) {
        enumerate_sector(modes, n, prefix, occupations_);
        block_start_.push_back(occupations_.size() / m);
    }
    total_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        int t = 0;
        for (std::size_t k = 0; k < m; ++k) {
            t += occupations_[i * m + k];
        }
        total_[i] = t;
    }

    raise_.assign(m * dim, npos);
    lower_.assign(m * dim, npos);
    std::vector<int> occ(m);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            auto src = occupation(i);
            std::copy(src.begin(), src.end(), occ.begin());
            if (total_[i] < cutoff) {
                occ[k] += 1;
                raise_[k * dim + i] = index_of(occ);
                occ[k] -= 1;
            }
            if (occ[k] > 0) {
                occ[k] -= 1;
                lower_[k * dim + i] = index_of(occ);
            }
        }
    }
}

std::size_t FockBasis::rank_in_sector(std::span<const int> occupation, int total) const {
    // Number of same-total vectors that precede `occupation` lexicographically:
    // at position k, every smaller value u leaves (rest - u) photons for the
    // remaining free positions.
    std::size_t r = 0;
    int rest = total;
    for (int k = 0; k + 1 < modes_; ++k) {
        const int free_positions = modes_ - k - 1;
        for (int u = 0; u < occupation[static_cast<std::size_t>(k)]; ++u) {
            r += static_cast<std::size_t>(binomial(rest - u + free_positions - 1, free_positions - 1));
        }
        rest -= occupation[static_cast<std::size_t>(k)];
    }
    return r;
}

std::size_t FockBasis::index_of(std::span<const int> occupation) const {
    if (occupation.size() != static_cast<std::size_t>(modes_)) {
        return npos;
    }
    int total = 0;
    for (int v : occupation) {
        if (v < 0) {
            return npos;
        }
        total += v;
    }
    if (total > cutoff_) {
        return npos;
    }
    return block_start_[static_cast<std::size_t>(total)] + rank_in_sector(occupation, total);
}

BasisPtr make_basis(int modes, int cutoff, const Tolerances &tol) {
    return std::make_shared<const FockBasis>(modes, cutoff, tol);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r);
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) {
        r *= static_cast<double>(i);
    }
    return r;
}

}  // namespace pel
