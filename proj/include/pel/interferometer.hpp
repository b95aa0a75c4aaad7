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

#ifndef PEL_INTERFEROMETER_HPP
#define PEL_INTERFEROMETER_HPP

// Convention. A mode unitary U acts on creation operators as
//
//     V a_j^H V^H = sum_k U_kj a_k^H,
//
// so a photon entering mode j leaves in mode k with amplitude U_kj, and the
// one-photon sector of the Fock lift V is U itself. The two-mode coupler is
//
//     R(theta, phi) = [[cos theta, -e^{i phi} sin theta],
//                      [e^{-i phi} sin theta, cos theta]].
//
// With theta = pi/4 and phi = 0, |1,1> goes to (|0,2> - |2,0>)/sqrt(2).
//
// Rectangular mesh on M modes: layers l = 0..M-1, each holding couplers on
// the adjacent pairs (i, i+1) with i = l mod 2, i + 1 < M; M(M-1)/2 couplers
// in total. Parameters are (theta, phi) for each coupler in layer order,
// followed by M output phases, M^2 values in all, and the mesh unitary is
// D T_K ... T_1 with T_1 the first coupler.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pel/density_matrix.hpp"

namespace pel {

class ModeUnitary {
   public:
    /// Throws Contract when u is not square or not unitary within tol.unitarity.
    explicit ModeUnitary(CMatrix u, const Tolerances &tol = default_tolerances());
    ModeUnitary(CMatrix u, std::vector<double> mesh_params, const Tolerances &tol = default_tolerances());

    static ModeUnitary identity(int modes);

    const CMatrix &matrix() const noexcept {
        return u_;
    }
    int modes() const noexcept {
        return static_cast<int>(u_.rows());
    }
    const std::optional<std::vector<double>> &mesh_params() const noexcept {
        return params_;
    }

    ModeUnitary operator*(const ModeUnitary &other) const;

   private:
    CMatrix u_;
    std::optional<std::vector<double>> params_;
};

/// The 2x2 coupler R(theta, phi).
CMatrix coupler(double theta, double phi);

/// Lower mode index of every coupler, in layer order.
std::vector<int> mesh_layout(int modes);

std::size_t mesh_param_count(int modes);

/// Haar-random unitary from the QR factorization of a complex Gaussian
/// matrix, with the phases of R's diagonal moved into Q. Deterministic in seed.
ModeUnitary haar_random(int modes, std::uint64_t seed);

/// Throws Validation on a parameter count other than modes^2.
ModeUnitary from_mesh(std::span<const double> params, int modes);

/// Mesh parameters reproducing u, from Clements-style nulling.
std::vector<double> decompose_mesh(const ModeUnitary &u);

/// Unitary representation of a mode unitary on a truncated Fock basis, one
/// block per total photon number.
class FockLift {
   public:
    FockLift(BasisPtr basis, std::vector<CMatrix> blocks);

    const FockBasis &basis() const noexcept {
        return *basis_;
    }
    const BasisPtr &basis_ptr() const noexcept {
        return basis_;
    }
    /// Block acting on the sector with n photons.
    const CMatrix &block(int n) const {
        return blocks_[static_cast<std::size_t>(n)];
    }
    /// Block-diagonal matrix over the whole basis.
    CMatrix dense() const;
    /// max over blocks of |V^H V - I|.
    double unitarity_error() const;

   private:
    BasisPtr basis_;
    std::vector<CMatrix> blocks_;
};

/// <a', b'| V |a, b> for a two-mode unitary w on the n = a + b sector,
/// indexed [a'][a] with a, a' the photons in the first mode.
CMatrix two_mode_sector(const CMatrix &w, int n);

/// Lift by composing two-mode coupler lifts along the mesh decomposition.
FockLift lift_mesh(const ModeUnitary &u, const BasisPtr &basis);

/// Lift from <m|V|n> = Perm(U[m, n]) / sqrt(prod m_k! prod n_k!).
FockLift lift_permanent(const ModeUnitary &u, const BasisPtr &basis);

/// Default lift (mesh composition).
FockLift lift(const ModeUnitary &u, const BasisPtr &basis);

/// V rho V^H, block by block.
DensityMatrix apply_lift(const DensityMatrix &rho, const FockLift &v);

DensityMatrix apply_interferometer(const DensityMatrix &rho, const ModeUnitary &u);

}  // namespace pel

#endif
