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

#ifndef PEL_LINALG_HPP
#define PEL_LINALG_HPP

#include <vector>

#include "pel/matrix.hpp"
#include "pel/tolerances.hpp"

namespace pel {

/// Ascending eigenvalues of a Hermitian matrix. Throws Contract if the input
/// is not Hermitian within tol.hermiticity (scaled by max(1, max|h_ij|)).
std::vector<double> hermitian_eigenvalues(const CMatrix &h, const Tolerances &tol = default_tolerances());

double min_eigenvalue(const CMatrix &h, const Tolerances &tol = default_tolerances());

/// (1/2) * sum |eig(a - b)|, for Hermitian a, b.
double trace_distance(const CMatrix &a, const CMatrix &b, const Tolerances &tol = default_tolerances());

}  // namespace pel

#endif
