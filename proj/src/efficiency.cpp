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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pel/channels.hpp"
#include "pel/efficiency.hpp"
#include "pel/error.hpp"
#include "pel/linalg.hpp"

namespace pel {
namespace {

void require_single_mode(const DensityMatrix &rho) {
    if (rho.modes() != 1) {
        throw Error(ErrorKind::Validation, "generalized efficiency is computed for single-mode states");
    }
}

// Copy of rho restricted to photon numbers 0..support.
DensityMatrix trim_to_support(const DensityMatrix &rho, int support) {
    const auto d = static_cast<std::size_t>(support + 1);
    if (d == rho.dimension()) {
        return rho;
    }
    CMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = rho(i, j);
        }
    }
    return DensityMatrix(make_basis(1, support), std::move(m), rho.normalized(), rho.tail_weight());
}

double preimage_min_eigenvalue(const DensityMatrix &rho, double p, const Tolerances &tol) {
    return min_eigenvalue(invert_loss(rho, LossChannel{p, {}}, tol), tol);
}

bool feasible_margin(double min_eig, double scale, const Tolerances &tol) {
    return min_eig >= -tol.feasibility * scale;
}

}  // namespace

bool is_feasible(const DensityMatrix &rho, double p, const Tolerances &tol) {
    require_single_mode(rho);
    return feasible_margin(preimage_min_eigenvalue(rho, p, tol), std::abs(rho.trace()), tol);
}

EfficiencyResult generalized_efficiency(const DensityMatrix &input, double bisection_tol, const Tolerances &tol) {
    require_single_mode(input);
    if (!(bisection_tol >= tol.bisection)) {
        std::ostringstream os;
        os << "bisection tolerance " << bisection_tol << " is below the supported " << tol.bisection;
        throw Error(ErrorKind::Validation, os.str());
    }
    EfficiencyResult res;
    res.cutoff_used = input.basis().cutoff();
    res.support = support_bound(input);
    const DensityMatrix rho = trim_to_support(input, res.support);
    const double scale = std::abs(rho.trace());
    res.floor = std::max(tol.efficiency_floor, conditioning_floor(res.support, tol));

    auto eig_at = [&](double p) { return preimage_min_eigenvalue(rho, p, tol); };
    auto ok = [&](double e) { return feasible_margin(e, scale, tol); };

    const double eig_floor = eig_at(res.floor);
    if (ok(eig_floor)) {
        res.value = res.hi = res.floor;
        res.lo = 0.0;
        res.attained = false;
        res.witness_eigenvalue = eig_floor;
        return res;
    }
    double lo = res.floor;
    double hi = 1.0;
    double eig_hi = eig_at(hi);
    if (!ok(eig_hi)) {
        std::ostringstream os;
        os << "state is infeasible at p = 1 (min eigenvalue " << eig_hi << "); it is not a valid state";
        throw Error(ErrorKind::Positivity, os.str());
    }
    while (hi - lo > bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        const double e = eig_at(mid);
        if (ok(e)) {
            hi = mid;
            eig_hi = e;
        } else {
            lo = mid;
        }
    }
    // Monotone feasibility check away from the boundary.
    constexpr int probes = 4;
    for (int k = 1; k <= probes; ++k) {
        const double above = 1.0 - (1.0 - hi) * (probes - k) / probes;
        const double below = res.floor + (lo - res.floor) * (probes - k) / probes;
        const double ea = eig_at(above);
        const double eb = eig_at(below);
        if (!ok(ea) || ok(eb)) {
            std::ostringstream os;
            os << "feasibility is not monotone: bracket [" << lo << ", " << hi << "], p = " << above
               << " gives min eigenvalue " << ea << ", p = " << below << " gives " << eb;
            throw Error(ErrorKind::NonMonotone, os.str());
        }
    }
    res.value = hi;
    res.lo = lo;
    res.hi = hi;
    res.attained = true;
    res.witness_eigenvalue = eig_hi;
    return res;
}

MultimodeEfficiency multimode_efficiency(std::span<const DensityMatrix> factors, double bisection_tol,
                                         const Tolerances &tol) {
    if (factors.empty()) {
        throw Error(ErrorKind::Validation, "multimode efficiency needs at least one factor");
    }
    MultimodeEfficiency out{0.0, {}};
    for (const DensityMatrix &f : factors) {
        out.modes.push_back(generalized_efficiency(f, bisection_tol, tol));
        out.value = std::max(out.value, out.modes.back().value);
    }
    return out;
}

double qubit_efficiency_formula(double p, cplx q) {
    const double q2 = std::norm(q);
    if (!(p >= 0.0 && p <= 1.0) || q2 > p * (1.0 - p) + 1e-15) {
        std::ostringstream os;
        os << "partially mixed state with p = " << p << ", |q|^2 = " << q2 << " violates |q|^2 <= p(1-p)";
        throw Error(ErrorKind::Positivity, os.str());
    }
    if (p == 0.0) {
        return 0.0;
    }
    return p / (1.0 - q2 / p);
}

}  // namespace pel
