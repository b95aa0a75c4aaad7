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

#ifndef PEL_TOLERANCES_HPP
#define PEL_TOLERANCES_HPP

#include <cstddef>

namespace pel {

/// Numerical tolerances shared by every module. Callers override individual
/// fields.
struct Tolerances {
    double hermiticity = 1e-12;     // absolute, entrywise
    double trace = 1e-10;           // |trace - 1| for normalized states
    double psd = 1e-10;             // min eigenvalue >= -psd * trace
    double tail = 1e-10;            // discarded weight allowed by truncation
    double unitarity = 1e-12;       // max |U^H U - I|
    double herald_floor = 1e-12;    // smallest outcome probability we condition on
    double feasibility = 1e-9;      // PSD verdict for inverse-loss preimages
    double conditioning = 1e12;     // largest allowed p^-N amplification
    double efficiency_floor = 1e-3; // smallest transmissivity probed by bisection
    double bisection = 1e-8;        // default bracket width for E(rho)
    std::size_t max_dimension = 20000;
};

inline const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace pel

#endif
