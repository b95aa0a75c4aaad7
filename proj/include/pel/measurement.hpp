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

#ifndef PEL_MEASUREMENT_HPP
#define PEL_MEASUREMENT_HPP

#include <string>
#include <vector>

#include "pel/density_matrix.hpp"

namespace pel {

/// Ideal photon-number-resolving detection on some modes. A detection with
/// count `traced_out` discards its mode without measuring it. Modes not listed
/// survive; at least one must.
struct Detection {
    int mode;
    int count;
};

struct MeasurementPattern {
    static constexpr int traced_out = -1;

    std::vector<Detection> detections;

    /// Modes left over after the detections, ascending.
    std::vector<int> surviving_modes(int total_modes) const;
    /// Total photons in counted detections.
    int detected_photons() const;
    std::string describe() const;

    /// Throws Validation on repeated or out-of-range modes, negative counts,
    /// or a pattern that leaves no mode.
    void validate(int total_modes) const;
};

double outcome_probability(const DensityMatrix &rho, const MeasurementPattern &pattern);

struct Conditioned {
    DensityMatrix state;
    double probability;
};

/// Projects on the counted outcomes, traces out the wildcard modes and
/// renormalizes on the surviving modes. Throws HeraldImpossible when the
/// outcome probability is below tol.herald_floor.
Conditioned condition(const DensityMatrix &rho, const MeasurementPattern &pattern,
                      const Tolerances &tol = default_tolerances());

/// <1|rho|1> of a single-mode state.
double single_photon_probability(const DensityMatrix &rho);

/// sum_{n >= 2} <n|rho|n> of a single-mode state.
double multiphoton_weight(const DensityMatrix &rho);

}  // namespace pel

#endif
