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
#include <numbers>
#include <random>

#include "pel/channels.hpp"
#include "pel/error.hpp"
#include "pel/linalg.hpp"
#include "pel/measurement.hpp"
#include "pel/verification.hpp"

namespace pel {
namespace {

constexpr double kProportionalityTol = 1e-10;
constexpr double kBoundTol = 1e-12;

DensityMatrix random_state_rng(int support, int cutoff, std::mt19937_64 &rng) {
    if (support < 0 || support > cutoff) {
        throw Error(ErrorKind::Validation, "random state support must lie in [0, cutoff]");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto s = static_cast<std::size_t>(support + 1);
    CMatrix g(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = cplx(re, im);
        }
    }
    const CMatrix small = multiply_adjoint(g, g);
    const double tr = small.trace().real();
    const auto d = static_cast<std::size_t>(cutoff + 1);
    CMatrix rho(d, d);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            rho(i, j) = small(i, j) / tr;
        }
    }
    // Exact Hermiticity.
    for (std::size_t i = 0; i < s; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t j = i + 1; j < s; ++j) {
            rho(j, i) = std::conj(rho(i, j));
        }
    }
    return DensityMatrix(make_basis(1, cutoff), std::move(rho));
}

}  // namespace

DensityMatrix random_state(int support, int cutoff, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_state_rng(support, cutoff, rng);
}

double commutation_deviation(const DensityMatrix &rho, const ModeUnitary &u, double p) {
    const LossChannel loss{p, {}};
    const DensityMatrix a = apply_interferometer(apply_loss(rho, loss), u);
    const DensityMatrix b = apply_loss(apply_interferometer(rho, u), loss);
    return trace_distance(a.elements(), b.elements());
}

CommutationReport verify_commutation(std::uint64_t seed, int trials, int cutoff) {
    if (trials < 1) {
        throw Error(ErrorKind::Validation, "commutation check needs at least one trial");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> mode_count(2, 4);
    CommutationReport rep;
    rep.trials = trials;
    rep.cutoff = cutoff;
    for (int t = 0; t < trials; ++t) {
        const int m = mode_count(rng);
        std::vector<DensityMatrix> factors;
        for (int k = 0; k < m; ++k) {
            if (unit(rng) < 0.5) {
                factors.push_back(make_state(Isps{unit(rng)}, cutoff));
            } else {
                const double r = 0.3 * unit(rng);
                factors.push_back(make_state(Coherent{std::polar(r, 2.0 * std::numbers::pi * unit(rng))}, cutoff));
            }
        }
        const DensityMatrix rho = tensor_all(factors, cutoff, TruncationPolicy::KeepUnnormalized);
        const ModeUnitary u = haar_random(m, rng());
        const double p = 0.3 + 0.65 * unit(rng);
        rep.max_deviation = std::max(rep.max_deviation, commutation_deviation(rho, u, p));
    }
    rep.unequal_loss_deviation = unequal_loss_deviation(0.3, 0.9);
    return rep;
}

double unequal_loss_deviation(double p0, double p1, int cutoff) {
    const BasisPtr basis = make_basis(2, cutoff);
    std::vector<cplx> amp(basis->dimension(), 0.0);
    const int one_zero[] = {1, 0};
    amp[basis->index_of(one_zero)] = 1.0;
    const DensityMatrix rho = pure_state(basis, amp);
    const ModeUnitary u(coupler(std::numbers::pi / 5, 0.3));
    auto lossy = [&](const DensityMatrix &s) {
        return apply_loss(apply_loss(s, LossChannel{p0, {0}}), LossChannel{p1, {1}});
    };
    const DensityMatrix a = apply_interferometer(lossy(rho), u);
    const DensityMatrix b = lossy(apply_interferometer(rho, u));
    return trace_distance(a.elements(), b.elements());
}

BernoulliReport verify_bernoulli_consequence(std::uint64_t seed, int trials, int cutoff) {
    if (trials < 1) {
        throw Error(ErrorKind::Validation, "Bernoulli check needs at least one trial");
    }
    if (cutoff < 2) {
        throw Error(ErrorKind::Validation, "Bernoulli check needs a cutoff of at least 2");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> support(2, cutoff);
    BernoulliReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        // No multiphoton weight: X = p <1|rho|1>.
        const DensityMatrix qubit = random_state_rng(1, cutoff, rng);
        const double p = 1.0 - unit(rng);
        const double x = single_photon_probability(apply_loss(qubit, LossChannel{p, {}}));
        rep.max_proportionality_error =
            std::max(rep.max_proportionality_error, std::abs(x - p * single_photon_probability(qubit)));

        // Multiphoton weight and p >= 1/2: X <= p.
        const DensityMatrix multi = random_state_rng(support(rng), cutoff, rng);
        const double q = 0.5 + 0.5 * unit(rng);
        const double xm = single_photon_probability(apply_loss(multi, LossChannel{q, {}}));
        rep.max_bound_excess = t == 0 ? xm - q : std::max(rep.max_bound_excess, xm - q);
    }
    rep.passed = rep.max_proportionality_error <= kProportionalityTol && rep.max_bound_excess <= kBoundTol;
    return rep;
}

}  // namespace pel
