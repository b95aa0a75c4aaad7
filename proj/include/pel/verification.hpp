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

#ifndef PEL_VERIFICATION_HPP
#define PEL_VERIFICATION_HPP

// Randomized checks of the loss/interferometer commutation and of the
// photon-number consequences of loss on a heralded single-mode state.

#include <cstdint>

#include "pel/interferometer.hpp"

namespace pel {

/// Random single-mode state with support on photon numbers 0..support, on a
/// basis with the given cutoff (rho = G G^H / tr with G complex Gaussian).
DensityMatrix random_state(int support, int cutoff, std::uint64_t seed);

/// Trace distance between U(E_p(rho)) and E_p(U(rho)), loss on every mode.
double commutation_deviation(const DensityMatrix &rho, const ModeUnitary &u, double p);

struct CommutationReport {
    double max_deviation = 0.0;
    int trials = 0;
    int cutoff = 0;
    /// Same comparison with unequal loss on a two-mode coupler.
    double unequal_loss_deviation = 0.0;
};

/// Random product inputs (ISPS and small coherent states) on 2-4 modes,
/// Haar-random U and p in [0.3, 0.95].
CommutationReport verify_commutation(std::uint64_t seed, int trials, int cutoff = 6);

/// Two-mode input |1, 0>, coupler R(pi/5, 0.3), loss p0 on mode 0 and p1 on
/// mode 1 applied before or after: the trace distance between the orders.
double unequal_loss_deviation(double p0, double p1, int cutoff = 4);

struct BernoulliReport {
    bool passed = false;
    int trials = 0;
    /// max |X - p <1|rho|1>| over states without multiphoton weight.
    double max_proportionality_error = 0.0;
    /// max (X - p) over states with multiphoton weight and p >= 1/2.
    double max_bound_excess = 0.0;
};

BernoulliReport verify_bernoulli_consequence(std::uint64_t seed, int trials, int cutoff = 6);

}  // namespace pel

#endif
