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

#ifndef PEL_CHANNELS_HPP
#define PEL_CHANNELS_HPP

// Photon loss with transmissivity p. The single-mode channel has Kraus
// operators
//
//     <n - l| K_l |n> = sqrt(C(n, l)) p^((n - l)/2) (1 - p)^(l/2),
//
// so its diagonal action is the binomial (Bernoulli) redistribution
// <n|E_p(rho)|n> = sum_m C(m, n) p^n (1 - p)^(m - n) <m|rho|m>. Multimode loss
// is applied mode by mode with the same p on each listed mode.
//
// Truncated inverse. E_p only moves weight downward in photon number, and the
// l = 0 term keeps every element (m, n) with the nonzero factor p^((m+n)/2).
// On a state whose support lies inside the cutoff the map restricted to the
// truncated space is therefore triangular with a nonzero diagonal, and its
// inverse there is the exact preimage in the full space. invert_loss solves
// that triangular system from the top photon number down.

#include <optional>
#include <vector>

#include "pel/density_matrix.hpp"

namespace pel {

struct LossChannel {
    double p = 1.0;
    /// Modes the channel acts on; empty means every mode.
    std::vector<int> modes;
};

/// Kraus operators K_0..K_cutoff of single-mode loss on a basis of the given cutoff.
std::vector<CMatrix> kraus_operators(double p, int cutoff);

/// max |sum_l K_l^H K_l - I|.
double kraus_completeness_error(const std::vector<CMatrix> &kraus);

/// Bernoulli transform of a single-mode photon-number distribution.
std::vector<double> bernoulli_diagonal(std::span<const double> diag, double p);

DensityMatrix apply_loss(const DensityMatrix &rho, const LossChannel &ch);

/// Same channel built from dense Kraus operators (single-mode states only);
/// kept as an independent implementation for cross-checks.
DensityMatrix apply_loss_kraus_dense(const DensityMatrix &rho, double p);

/// Largest photon number carrying diagonal weight above `threshold`.
int support_bound(const DensityMatrix &rho, double threshold = 0.0);

/// Preimage of rho under the channel on the truncated space. The result is
/// Hermitian with the trace of rho but not necessarily positive. Throws
/// Conditioning when p^-N exceeds tol.conditioning, with N the support bound.
CMatrix invert_loss(const DensityMatrix &rho, const LossChannel &ch, const Tolerances &tol = default_tolerances());

/// Smallest transmissivity invert_loss accepts for a state with the given
/// support bound.
double conditioning_floor(int support, const Tolerances &tol = default_tolerances());

struct LindbladParams {
    double kappa = 1.0;
    double t0 = 0.0;
    int steps = 0;

    /// kappa * t0 = -ln p, with a step count that keeps the integrator error
    /// estimate below 1e-9 for states with up to `max_photons` photons.
    static LindbladParams for_transmissivity(double p, int max_photons);

    double transmissivity() const;
};

struct LindbladResult {
    DensityMatrix state;
    double error_estimate;
    bool accuracy_warning;
};

/// Integrates d(rho)/dt = kappa sum_k [a_k rho a_k^H - (n_k rho + rho n_k)/2]
/// over [0, t0] with classical fourth-order Runge-Kutta on every mode.
LindbladResult apply_loss_lindblad(const DensityMatrix &rho, const LindbladParams &params);

}  // namespace pel

#endif
