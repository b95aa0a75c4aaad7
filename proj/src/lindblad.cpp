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

#include "pel/channels.hpp"
#include "pel/error.hpp"
#include "pel/kernels/kernels.hpp"

namespace pel {
namespace {

// L(rho) = sum_k [a_k rho a_k^H - (n_k rho + rho n_k)/2], without kappa.
void lindblad_rhs(const CMatrix &rho, const FockBasis &basis, CMatrix &out) {
    const std::size_t d = basis.dimension();
    const int modes = basis.modes();
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
            cplx s = -0.5 * static_cast<double>(basis.total_photons(x) + basis.total_photons(y)) * rho(x, y);
            for (int k = 0; k < modes; ++k) {
                const std::size_t xu = basis.raise(x, k);
                const std::size_t yu = basis.raise(y, k);
                if (xu != FockBasis::npos && yu != FockBasis::npos) {
                    s += std::sqrt(static_cast<double>((basis.photons(x, k) + 1) * (basis.photons(y, k) + 1))) *
                         rho(xu, yu);
                }
            }
            out(x, y) = s;
        }
    }
}

double error_estimate(double kappa, double t0, int steps, int max_photons) {
    if (steps <= 0) {
        return t0 == 0.0 ? 0.0 : INFINITY;
    }
    const double lambda_h = kappa * std::max(1, max_photons) * t0 / steps;
    return steps * std::pow(lambda_h, 5) / 120.0;
}

}  // namespace

LindbladParams LindbladParams::for_transmissivity(double p, int max_photons) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::Validation, "Lindblad transmissivity must lie in (0, 1]");
    }
    LindbladParams params;
    params.kappa = 1.0;
    params.t0 = -std::log(p);
    // steps * (lambda t0 / steps)^5 / 120 < 1e-9  <=>  steps^4 > (lambda t0)^5 / 1.2e-7
    const double lt = std::max(1, max_photons) * params.t0;
    const double needed = std::pow(std::pow(lt, 5) / 1.2e-7, 0.25);
    params.steps = std::max(1, static_cast<int>(std::ceil(needed)) + 1);
    return params;
}

double LindbladParams::transmissivity() const {
    return std::exp(-kappa * t0);
}

LindbladResult apply_loss_lindblad(const DensityMatrix &rho, const LindbladParams &params) {
    if (params.kappa < 0.0 || params.t0 < 0.0) {
        throw Error(ErrorKind::Validation, "Lindblad kappa and t0 must be non-negative");
    }
    const FockBasis &basis = rho.basis();
    const double est = error_estimate(params.kappa, params.t0, params.steps, basis.cutoff());
    if (params.t0 == 0.0 || params.kappa == 0.0) {
        return {rho, 0.0, false};
    }
    if (params.steps <= 0) {
        throw Error(ErrorKind::Validation, "Lindblad integration needs a positive step count");
    }
    const std::size_t d = basis.dimension();
    const double h = params.kappa * params.t0 / params.steps;
    CMatrix y = rho.elements();
    CMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    const auto &kern = kernels::active();
    const std::size_t n = d * d;
    // dst = base + a * k
    auto stage = [&](CMatrix &dst, const CMatrix &base, const CMatrix &k, double a) {
        dst = base;
        kern.axpy(n, a, k.data(), dst.data());
    };
    for (int s = 0; s < params.steps; ++s) {
        lindblad_rhs(y, basis, k1);
        stage(tmp, y, k1, 0.5 * h);
        lindblad_rhs(tmp, basis, k2);
        stage(tmp, y, k2, 0.5 * h);
        lindblad_rhs(tmp, basis, k3);
        stage(tmp, y, k3, h);
        lindblad_rhs(tmp, basis, k4);
        kern.axpy(n, h / 6.0, k1.data(), y.data());
        kern.axpy(n, h / 3.0, k2.data(), y.data());
        kern.axpy(n, h / 3.0, k3.data(), y.data());
        kern.axpy(n, h / 6.0, k4.data(), y.data());
    }
    return {DensityMatrix(rho.basis_ptr(), std::move(y), rho.normalized(), rho.tail_weight()), est, est > 1e-8};
}

}  // namespace pel
