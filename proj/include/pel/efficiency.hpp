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

#ifndef PEL_EFFICIENCY_HPP
#define PEL_EFFICIENCY_HPP

// Generalized efficiency of a single-mode state: the smallest transmissivity
// p for which rho = E_p(rho0) with rho0 a valid state. The preimage is unique
// (see channels.hpp), so feasibility at p is positivity of invert_loss(rho, p),
// and feasibility is monotone in p because E_p' = E_(p'/p) o E_p.

#include <span>
#include <vector>

#include "pel/density_matrix.hpp"

namespace pel {

struct EfficiencyResult {
    /// Upper end of the final bracket; feasible.
    double value = 1.0;
    double lo = 0.0;
    double hi = 1.0;
    /// False when the state is feasible at the smallest probed p, so the
    /// infimum lies at or below `value` and was not located.
    bool attained = true;
    int cutoff_used = 0;
    /// Largest photon number in the support of the input.
    int support = 0;
    /// Smallest transmissivity probed.
    double floor = 0.0;
    /// Smallest eigenvalue of the preimage at hi.
    double witness_eigenvalue = 0.0;
};

bool is_feasible(const DensityMatrix &rho, double p, const Tolerances &tol = default_tolerances());

/// Bisection on [floor, 1] with floor = max(tol.efficiency_floor, conditioning
/// floor of the support). Throws NonMonotone if probes outside the final
/// bracket contradict monotone feasibility.
EfficiencyResult generalized_efficiency(const DensityMatrix &rho, double bisection_tol = 1e-8,
                                        const Tolerances &tol = default_tolerances());

struct MultimodeEfficiency {
    double value;
    std::vector<EfficiencyResult> modes;
};

/// Efficiency of a product state given by its factors: the largest factor value.
MultimodeEfficiency multimode_efficiency(std::span<const DensityMatrix> factors, double bisection_tol = 1e-8,
                                         const Tolerances &tol = default_tolerances());

/// p / (1 - |q|^2 / p) for the zero/one-photon state with coherence q;
/// 0 for p = q = 0. Throws Positivity when |q|^2 > p (1 - p).
double qubit_efficiency_formula(double p, cplx q);

}  // namespace pel

#endif
