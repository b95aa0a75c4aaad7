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
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "pel/error.hpp"
#include "pel/interferometer.hpp"
#include "pel/nogo.hpp"

namespace pel {
namespace {

constexpr double kTailTarget = 1e-13;
constexpr double kCertification = 1e-9;

std::vector<cplx> ancilla_amplitudes(const SearchSpace &space, std::span<const double> params) {
    const std::size_t off = mesh_param_count(space.modes());
    const double scale = std::sqrt(space.attenuation);
    std::vector<cplx> out(static_cast<std::size_t>(space.num_coherent));
    for (std::size_t c = 0; c < out.size(); ++c) {
        out[c] = scale * cplx(params[off + 2 * c], params[off + 2 * c + 1]);
    }
    return out;
}

void check_params(const SearchSpace &space, std::span<const double> params) {
    if (params.size() != space.param_count()) {
        std::ostringstream os;
        os << "scheme takes " << space.param_count() << " parameters, got " << params.size();
        throw Error(ErrorKind::Validation, os.str());
    }
}

SchemeOutcome score(const SearchSpace &space, double herald, double zero, double one) {
    SchemeOutcome o;
    o.herald_probability = herald;
    o.X = one / herald;
    o.multiphoton_weight = std::max(0.0, 1.0 - (zero + one) / herald);
    o.constraint_satisfied =
        space.constraint.kind != ConstraintKind::NoMultiphoton || o.multiphoton_weight <= space.constraint.epsilon;
    return o;
}

}  // namespace

std::string constraint_name(ConstraintKind kind) {
    return kind == ConstraintKind::NoMultiphoton ? "no_multiphoton" : "unconstrained";
}

std::size_t SearchSpace::param_count() const {
    return mesh_param_count(modes()) + 2 * static_cast<std::size_t>(num_coherent);
}

double SearchSpace::p_max() const {
    double m = 0.0;
    for (double p : source_efficiencies) {
        m = std::max(m, p);
    }
    return m;
}

double SearchSpace::bound() const {
    return constraint.kind == ConstraintKind::NoMultiphoton ? p_max() : std::max(p_max(), 0.5);
}

void SearchSpace::validate() const {
    if (source_efficiencies.empty()) {
        throw Error(ErrorKind::Validation, "search space needs at least one source");
    }
    for (double p : source_efficiencies) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorKind::Validation, "source efficiencies must lie in [0, 1]");
        }
    }
    if (num_coherent < 0) {
        throw Error(ErrorKind::Validation, "num_coherent must be non-negative");
    }
    if (modes() < 2) {
        throw Error(ErrorKind::Validation, "a heralded scheme needs at least two modes");
    }
    if (!(alpha_max >= 0.0) || !std::isfinite(alpha_max)) {
        throw Error(ErrorKind::Validation, "alpha_max must be a non-negative number");
    }
    if (!(attenuation > 0.0 && attenuation <= 1.0)) {
        throw Error(ErrorKind::Validation, "attenuation must lie in (0, 1]");
    }
    if (cutoff < 0) {
        throw Error(ErrorKind::Validation, "cutoff must be non-negative");
    }
    if (max_patterns < 1) {
        throw Error(ErrorKind::Validation, "max_patterns must be positive");
    }
    if (!(constraint.epsilon >= 0.0)) {
        throw Error(ErrorKind::Validation, "constraint epsilon must be non-negative");
    }
}

int resolve_cutoff(const SearchSpace &space, const Tolerances &tol) {
    space.validate();
    int n = space.cutoff;
    if (n == 0) {
        const double mean = space.num_coherent * space.alpha_max * space.alpha_max * space.attenuation;
        int extra = 0;
        while (coherent_tail(mean, extra) > kTailTarget) {
            ++extra;
        }
        n = space.num_sources() + extra;
    }
    const auto dim = FockBasis::count_states(space.modes(), n);
    if (!dim || *dim > static_cast<std::size_t>(tol.max_dimension)) {
        std::ostringstream os;
        os << "search basis with " << space.modes() << " modes and cutoff " << n << " has "
           << (dim ? std::to_string(*dim) : std::string("too many")) << " states, above the limit "
           << tol.max_dimension << "; lower alpha_max or the number of modes";
        throw Error(ErrorKind::Capacity, os.str());
    }
    return n;
}

MeasurementPattern counts_to_pattern(std::span<const int> counts) {
    MeasurementPattern p;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        p.detections.push_back({static_cast<int>(k) + 1, counts[k]});
    }
    return p;
}

SchemeOutcome evaluate_scheme(const SearchSpace &space, std::span<const double> params,
                              const MeasurementPattern &pattern, const Tolerances &tol) {
    space.validate();
    check_params(space, params);
    const int m = space.modes();
    pattern.validate(m);
    if (pattern.surviving_modes(m).size() != 1) {
        throw Error(ErrorKind::Validation, "scheme evaluation needs a pattern that leaves exactly one mode");
    }
    const int cutoff = resolve_cutoff(space, tol);
    std::vector<DensityMatrix> factors;
    for (double p : space.source_efficiencies) {
        factors.push_back(make_state(Isps{space.attenuation * p}, cutoff, tol));
    }
    for (const cplx &a : ancilla_amplitudes(space, params)) {
        factors.push_back(make_state(Coherent{a}, cutoff, tol));
    }
    const DensityMatrix input = tensor_all(factors, cutoff, TruncationPolicy::Refuse, tol);
    const ModeUnitary u = from_mesh(params.first(mesh_param_count(m)), m);
    const DensityMatrix output = apply_interferometer(input, u);
    const Conditioned c = condition(output, pattern, tol);
    SchemeOutcome o;
    o.herald_probability = c.probability;
    o.X = single_photon_probability(c.state);
    o.multiphoton_weight = multiphoton_weight(c.state);
    o.constraint_satisfied =
        space.constraint.kind != ConstraintKind::NoMultiphoton || o.multiphoton_weight <= space.constraint.epsilon;
    return o;
}

SchemeEvaluator::SchemeEvaluator(const SearchSpace &space, const Tolerances &tol) : space_(space), tol_(tol) {
    const int n = resolve_cutoff(space_, tol_);
    const int m = space_.modes();
    basis_ = make_basis(m, n, tol_);
    pattern_basis_ = make_basis(m - 1, n, tol_);
    pattern_of_.resize(basis_->dimension());
    survivor_of_.resize(basis_->dimension());
    for (std::size_t x = 0; x < basis_->dimension(); ++x) {
        const auto occ = basis_->occupation(x);
        pattern_of_[x] = static_cast<std::uint32_t>(pattern_basis_->index_of(occ.subspan(1)));
        survivor_of_[x] = static_cast<std::uint8_t>(std::min(occ[0], 2));
    }
}

double SchemeEvaluator::truncation_tail(std::span<const double> params) const {
    double mean = 0.0;
    for (const cplx &a : ancilla_amplitudes(space_, params)) {
        mean += std::norm(a);
    }
    const int room = basis_->cutoff() - space_.num_sources();
    return room < 0 ? 1.0 : coherent_tail(mean, room);
}

SchemeEvaluator::Tallies SchemeEvaluator::tallies(std::span<const double> params) const {
    check_params(space_, params);
    const int m = space_.modes();
    const int ms = space_.num_sources();
    const int cutoff = basis_->cutoff();
    const std::size_t dim = basis_->dimension();
    const ModeUnitary u = from_mesh(params.first(mesh_param_count(m)), m);
    const CMatrix &um = u.matrix();

    // Output coherent amplitudes beta = U alpha and their number-state coefficients.
    const auto alpha = ancilla_amplitudes(space_, params);
    std::vector<std::vector<cplx>> coeff(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        cplx beta = 0.0;
        for (std::size_t c = 0; c < alpha.size(); ++c) {
            beta += um(static_cast<std::size_t>(k), static_cast<std::size_t>(ms) + c) * alpha[c];
        }
        auto &ck = coeff[static_cast<std::size_t>(k)];
        ck.resize(static_cast<std::size_t>(cutoff) + 1);
        ck[0] = std::exp(-0.5 * std::norm(beta));
        for (int j = 1; j <= cutoff; ++j) {
            ck[static_cast<std::size_t>(j)] = ck[static_cast<std::size_t>(j) - 1] * beta / std::sqrt(double(j));
        }
    }
    std::vector<double> sqrt_table(static_cast<std::size_t>(cutoff) + 2);
    for (std::size_t j = 0; j < sqrt_table.size(); ++j) {
        sqrt_table[j] = std::sqrt(static_cast<double>(j));
    }

    const std::size_t configs = std::size_t{1} << ms;
    std::vector<std::vector<cplx>> psi(configs);
    psi[0].resize(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        cplx a = 1.0;
        for (int k = 0; k < m; ++k) {
            a *= coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(basis_->photons(x, k))];
        }
        psi[0][x] = a;
    }
    std::vector<cplx> coef(static_cast<std::size_t>(m) * sqrt_table.size());
    // psi[s] = (sum_k U_kj a_k^H) psi[s without j], j the lowest set bit of s,
    // gathered as <y|a_k^H|psi> = sqrt(y_k) <y - e_k|psi>.
    for (std::size_t s = 1; s < configs; ++s) {
        const int j = std::countr_zero(s);
        const auto &src = psi[s & (s - 1)];
        auto &dst = psi[s];
        dst.resize(dim);
        // coef[k][n] = U_kj sqrt(n); products written out to avoid the
        // NaN-recovery path of std::complex multiplication.
        const std::size_t stride = sqrt_table.size();
        for (int k = 0; k < m; ++k) {
            const cplx ukj = um(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
            for (std::size_t n = 0; n < stride; ++n) {
                coef[static_cast<std::size_t>(k) * stride + n] = ukj * sqrt_table[n];
            }
        }
        for (std::size_t y = 0; y < dim; ++y) {
            double re = 0.0;
            double im = 0.0;
            for (int k = 0; k < m; ++k) {
                const std::size_t down = basis_->lower(y, k);
                if (down != FockBasis::npos) {
                    const cplx c = coef[static_cast<std::size_t>(k) * stride +
                                        static_cast<std::size_t>(basis_->photons(y, k))];
                    const cplx v = src[down];
                    re += c.real() * v.real() - c.imag() * v.imag();
                    im += c.real() * v.imag() + c.imag() * v.real();
                }
            }
            const cplx acc(re, im);
            dst[y] = acc;
        }
    }

    Tallies t;
    const std::size_t np = pattern_basis_->dimension();
    t.herald.assign(np, 0.0);
    t.zero.assign(np, 0.0);
    t.one.assign(np, 0.0);
    for (std::size_t s = 0; s < configs; ++s) {
        double w = 1.0;
        for (int j = 0; j < ms; ++j) {
            const double p = space_.attenuation * space_.source_efficiencies[static_cast<std::size_t>(j)];
            w *= (s >> j) & 1 ? p : 1.0 - p;
        }
        if (w == 0.0) {
            continue;
        }
        const auto &v = psi[s];
        for (std::size_t x = 0; x < dim; ++x) {
            const double pr = w * std::norm(v[x]);
            const std::uint32_t pat = pattern_of_[x];
            t.herald[pat] += pr;
            if (survivor_of_[x] == 0) {
                t.zero[pat] += pr;
            } else if (survivor_of_[x] == 1) {
                t.one[pat] += pr;
            }
        }
    }
    return t;
}

std::optional<PatternScore> SchemeEvaluator::best_pattern(std::span<const double> params) const {
    return scan(params).best;
}

SchemeEvaluator::Scan SchemeEvaluator::scan(std::span<const double> params) const {
    const Tallies t = tallies(params);
    const double tail = truncation_tail(params);
    std::vector<std::uint32_t> order;
    for (std::size_t i = 0; i < t.herald.size(); ++i) {
        if (t.herald[i] >= tol_.herald_floor) {
            order.push_back(static_cast<std::uint32_t>(i));
        }
    }
    const std::size_t keep = std::min(order.size(), static_cast<std::size_t>(space_.max_patterns));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          return t.herald[a] != t.herald[b] ? t.herald[a] > t.herald[b] : a < b;
                      });
    Scan out{std::nullopt, std::numeric_limits<double>::infinity()};
    for (std::size_t r = 0; r < keep; ++r) {
        const std::uint32_t i = order[r];
        if (tail / t.herald[i] > kCertification) {
            continue;
        }
        const SchemeOutcome o = score(space_, t.herald[i], t.zero[i], t.one[i]);
        out.min_multiphoton_weight = std::min(out.min_multiphoton_weight, o.multiphoton_weight);
        if (!o.constraint_satisfied) {
            continue;
        }
        if (!out.best || o.X > out.best->outcome.X) {
            const auto occ = pattern_basis_->occupation(i);
            out.best = PatternScore{std::vector<int>(occ.begin(), occ.end()), o};
        }
    }
    return out;
}

SchemeOutcome SchemeEvaluator::evaluate(std::span<const double> params, std::span<const int> counts) const {
    if (counts.size() != static_cast<std::size_t>(space_.modes() - 1)) {
        throw Error(ErrorKind::Validation, "pattern needs one count per detected mode");
    }
    const std::size_t i = pattern_basis_->index_of(counts);
    if (i == FockBasis::npos) {
        throw Error(ErrorKind::HeraldImpossible, "pattern detects more photons than the cutoff holds");
    }
    const Tallies t = tallies(params);
    if (!(t.herald[i] >= tol_.herald_floor)) {
        std::ostringstream os;
        os << "pattern has probability " << t.herald[i] << " below the herald floor " << tol_.herald_floor;
        throw Error(ErrorKind::HeraldImpossible, os.str());
    }
    return score(space_, t.herald[i], t.zero[i], t.one[i]);
}

}  // namespace pel
