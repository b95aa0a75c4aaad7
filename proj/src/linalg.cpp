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

#include "pel/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "pel/error.hpp"

namespace pel {
namespace {

void require_hermitian(const CMatrix &h, const Tolerances &tol) {
    if (!h.square()) {
        throw Error(ErrorKind::Contract, "eigenvalue input is not square");
    }
    const double err = h.hermiticity_error();
    const double scale = std::max(1.0, h.max_abs());
    if (err > tol.hermiticity * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |h_ij - conj(h_ji)| = " << err << " exceeds " << tol.hermiticity * scale;
        throw Error(ErrorKind::Contract, os.str());
    }
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix &h, const Tolerances &tol) {
    require_hermitian(h, tol);
    const auto n = static_cast<Eigen::Index>(h.rows());
    if (n == 0) {
        return {};
    }
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // Symmetrize so round-off asymmetry does not leak into the solver.
            m(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::Contract, "Hermitian eigensolver did not converge");
    }
    const auto &ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

double min_eigenvalue(const CMatrix &h, const Tolerances &tol) {
    const auto ev = hermitian_eigenvalues(h, tol);
    if (ev.empty()) {
        throw Error(ErrorKind::Contract, "min_eigenvalue of an empty matrix");
    }
    return ev.front();
}

double trace_distance(const CMatrix &a, const CMatrix &b, const Tolerances &tol) {
    const auto ev = hermitian_eigenvalues(a - b, tol);
    double s = 0.0;
    for (double v : ev) {
        s += std::abs(v);
    }
    return 0.5 * s;
}

}  // namespace pel
