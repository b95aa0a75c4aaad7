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

#ifndef PEL_FOCK_BASIS_HPP
#define PEL_FOCK_BASIS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pel/tolerances.hpp"

namespace pel {

using Occupation = std::vector<int>;

/// Truncated multimode photon-number basis: all occupation vectors
/// (n_0, ..., n_{M-1}) with sum n_k <= cutoff. States are ordered by total
/// photon number, then lexicographically, so every total-number sector is a
/// contiguous index range.
///
/// Immutable; shared between states through shared_ptr.
class FockBasis {
   public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    FockBasis(int modes, int cutoff, const Tolerances &tol = default_tolerances());

    int modes() const noexcept {
        return modes_;
    }
    int cutoff() const noexcept {
        return cutoff_;
    }
    std::size_t dimension() const noexcept {
        return total_.size();
    }

    /// Occupation vector of a basis index.
    std::span<const int> occupation(std::size_t index) const {
        return {occupations_.data() + index * static_cast<std::size_t>(modes_), static_cast<std::size_t>(modes_)};
    }
    int photons(std::size_t index, int mode) const {
        return occupations_[index * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(mode)];
    }
    int total_photons(std::size_t index) const {
        return total_[index];
    }

    /// Index of an occupation vector, or npos if it lies outside the basis.
    std::size_t index_of(std::span<const int> occupation) const;

    /// Index with one more / one fewer photon in `mode`, or npos.
    std::size_t raise(std::size_t index, int mode) const {
        return raise_[static_cast<std::size_t>(mode) * dimension() + index];
    }
    std::size_t lower(std::size_t index, int mode) const {
        return lower_[static_cast<std::size_t>(mode) * dimension() + index];
    }

    /// [start, start + size) of the sector with `n` photons in total.
    std::size_t block_start(int n) const {
        return block_start_[static_cast<std::size_t>(n)];
    }
    std::size_t block_size(int n) const {
        return block_start_[static_cast<std::size_t>(n) + 1] - block_start_[static_cast<std::size_t>(n)];
    }

    bool operator==(const FockBasis &other) const noexcept {
        return modes_ == other.modes_ && cutoff_ == other.cutoff_;
    }

    /// C(cutoff + modes, modes), or nullopt on overflow.
    static std::optional<std::size_t> count_states(int modes, int cutoff);

   private:
    std::size_t rank_in_sector(std::span<const int> occupation, int total) const;

    int modes_;
    int cutoff_;
    std::vector<int> occupations_;
    std::vector<int> total_;
    std::vector<std::size_t> block_start_;
    std::vector<std::size_t> raise_;
    std::vector<std::size_t> lower_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr make_basis(int modes, int cutoff, const Tolerances &tol = default_tolerances());

/// C(n, k) in double precision; exact for the photon numbers used here.
double binomial(int n, int k);
double factorial(int n);

}  // namespace pel

#endif
