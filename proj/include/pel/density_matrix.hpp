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

#ifndef PEL_DENSITY_MATRIX_HPP
#define PEL_DENSITY_MATRIX_HPP

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pel/fock_basis.hpp"
#include "pel/matrix.hpp"
#include "pel/tolerances.hpp"

namespace pel {

/// Hermitian operator on a truncated Fock basis.
///
/// A state is `normalized` when it is meant to carry unit trace; conditional
/// intermediates and truncated products may be unnormalized. `tail_weight`
/// accumulates probability that was discarded by truncation on the way to this
/// state (coherent-state tails, product truncation).
class DensityMatrix {
   public:
    DensityMatrix(BasisPtr basis, CMatrix elements, bool normalized = true, double tail_weight = 0.0);

    const FockBasis &basis() const noexcept {
        return *basis_;
    }
    const BasisPtr &basis_ptr() const noexcept {
        return basis_;
    }
    const CMatrix &elements() const noexcept {
        return elements_;
    }
    cplx operator()(std::size_t i, std::size_t j) const {
        return elements_(i, j);
    }
    std::size_t dimension() const noexcept {
        return elements_.rows();
    }
    int modes() const noexcept {
        return basis_->modes();
    }
    bool normalized() const noexcept {
        return normalized_;
    }
    double tail_weight() const noexcept {
        return tail_weight_;
    }

    double trace() const;
    std::vector<double> diagonal() const;

    /// Probability of each total photon number (length cutoff + 1).
    std::vector<double> photon_number_distribution() const;

    /// Checks Hermiticity, and for normalized states unit trace and PSD.
    /// Throws Contract / Positivity describing the first failed check.
    void validate(const Tolerances &tol = default_tolerances()) const;

   private:
    BasisPtr basis_;
    CMatrix elements_;
    bool normalized_;
    double tail_weight_;
};

struct Isps {
    double p;
};
struct Coherent {
    cplx alpha;
};
struct FockNumber {
    int n;
};
struct PartialQubit {
    double p;
    cplx q;
};

/// Single-mode source description.
using SourceSpec = std::variant<Isps, Coherent, FockNumber, PartialQubit>;

std::string describe(const SourceSpec &spec);

/// Probability that a coherent state with mean photon number |alpha|^2 has
/// more than `cutoff` photons.
double coherent_tail(double mean_photons, int cutoff);

/// Normalized single-mode state for `spec` on a single-mode basis.
/// Coherent states are renormalized over the truncated basis and refused if
/// the discarded tail exceeds tol.tail.
DensityMatrix make_state(const SourceSpec &spec, const BasisPtr &basis, const Tolerances &tol = default_tolerances());

/// Convenience: single-mode basis with the given cutoff.
DensityMatrix make_state(const SourceSpec &spec, int cutoff, const Tolerances &tol = default_tolerances());

/// Pure state |psi><psi| from amplitudes over a basis (not renormalized).
DensityMatrix pure_state(const BasisPtr &basis, std::span<const cplx> amplitudes);

enum class TruncationPolicy {
    /// Renormalize when the discarded weight is within tol.tail; refuse otherwise.
    Refuse,
    /// Keep the truncated operator as is and flag it unnormalized.
    KeepUnnormalized,
};

/// Product a (x) b embedded into `joint`, whose modes are a's modes followed
/// by b's modes. Occupation vectors above joint.cutoff are dropped.
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b, const BasisPtr &joint,
                     TruncationPolicy policy = TruncationPolicy::Refuse, const Tolerances &tol = default_tolerances());

/// Product of several states on a joint basis with the given cutoff.
DensityMatrix tensor_all(std::span<const DensityMatrix> factors, int joint_cutoff,
                         TruncationPolicy policy = TruncationPolicy::Refuse,
                         const Tolerances &tol = default_tolerances());

/// Reduced state on `keep` (ascending mode indices, in that order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

}  // namespace pel

#endif
