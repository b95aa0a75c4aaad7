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

#include "pel/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pel/error.hpp"
#include "pel/kernels/kernels.hpp"
#include "pel/linalg.hpp"

namespace pel {

DensityMatrix::DensityMatrix(BasisPtr basis, CMatrix elements, bool normalized, double tail_weight)
    : basis_(std::move(basis)), elements_(std::move(elements)), normalized_(normalized), tail_weight_(tail_weight) {
    if (!basis_) {
        throw Error(ErrorKind::Contract, "density matrix without a basis");
    }
    if (elements_.rows() != basis_->dimension() || elements_.cols() != basis_->dimension()) {
        std::ostringstream os;
        os << "density matrix is " << elements_.rows() << "x" << elements_.cols() << " but the basis has dimension "
           << basis_->dimension();
        throw Error(ErrorKind::Contract, os.str());
    }
}

double DensityMatrix::trace() const {
    return elements_.trace().real();
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> d(dimension());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = elements_(i, i).real();
    }
    return d;
}

std::vector<double> DensityMatrix::photon_number_distribution() const {
    std::vector<double> out(static_cast<std::size_t>(basis_->cutoff()) + 1, 0.0);
    for (std::size_t i = 0; i < dimension(); ++i) {
        out[static_cast<std::size_t>(basis_->total_photons(i))] += elements_(i, i).real();
    }
    return out;
}

void DensityMatrix::validate(const Tolerances &tol) const {
    const double herm = elements_.hermiticity_error();
    if (herm > tol.hermiticity) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (max deviation " << herm << ")";
        throw Error(ErrorKind::Contract, os.str());
    }
    const double tr = trace();
    if (normalized_ && std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "normalized density matrix has trace " << tr;
        throw Error(ErrorKind::Contract, os.str());
    }
    const double lo = min_eigenvalue(elements_, tol);
    if (lo < -tol.psd * std::max(std::abs(tr), 1e-300)) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << lo;
        throw Error(ErrorKind::Positivity, os.str());
    }
}

std::string describe(const SourceSpec &spec) {
    std::ostringstream os;
    std::visit(
        [&os](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Isps>) {
                os << "ISPS(p=" << s.p << ")";
            } else if constexpr (std::is_same_v<T, Coherent>) {
                os << "Coherent(alpha=" << s.alpha.real() << (s.alpha.imag() < 0 ? "" : "+") << s.alpha.imag()
                   << "i)";
            } else if constexpr (std::is_same_v<T, FockNumber>) {
                os << "Fock(n=" << s.n << ")";
            } else {
                os << "PartialQubit(p=" << s.p << ", q=" << s.q.real() << (s.q.imag() < 0 ? "" : "+") << s.q.imag()
                   << "i)";
            }
        },
        spec);
    return os.str();
}

double coherent_tail(double mean_photons, int cutoff) {
    if (mean_photons == 0.0) {
        return 0.0;
    }
    // Sum the Poisson tail directly past the cutoff (terms decay
    // geometrically once n > mean) rather than computing 1 - head.
    double term = std::exp(-mean_photons);
    for (int n = 1; n <= cutoff + 1; ++n) {
        term *= mean_photons / n;
    }
    double tail = 0.0;
    for (int n = cutoff + 1; n < cutoff + 2000; ++n) {
        tail += term;
        term *= mean_photons / (n + 1);
        if (n > mean_photons && term < 1e-300 + tail * 1e-17) {
            break;
        }
    }
    return tail;
}

DensityMatrix pure_state(const BasisPtr &basis, std::span<const cplx> amplitudes) {
    const std::size_t d = basis->dimension();
    if (amplitudes.size() != d) {
        throw Error(ErrorKind::Contract, "amplitude vector does not match basis dimension");
    }
    CMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
        }
    }
    return DensityMatrix(basis, std::move(m), true);
}

DensityMatrix make_state(const SourceSpec &spec, const BasisPtr &basis, const Tolerances &tol) {
    if (basis->modes() != 1) {
        throw Error(ErrorKind::Validation, "make_state needs a single-mode basis");
    }
    const int cutoff = basis->cutoff();
    const std::size_t d = basis->dimension();
    CMatrix m(d, d);
    double tail = 0.0;

    if (const auto *s = std::get_if<Isps>(&spec)) {
        if (!(s->p >= 0.0 && s->p <= 1.0)) {
            throw Error(ErrorKind::Validation, "ISPS efficiency must lie in [0, 1] (got " + std::to_string(s->p) + ")");
        }
        if (cutoff < 1 && s->p > 0.0) {
            throw Error(ErrorKind::Capacity, "ISPS needs a cutoff of at least 1");
        }
        m(0, 0) = 1.0 - s->p;
        if (cutoff >= 1) {
            m(1, 1) = s->p;
        }
    } else if (const auto *s = std::get_if<FockNumber>(&spec)) {
        if (s->n < 0) {
            throw Error(ErrorKind::Validation, "Fock photon number must be non-negative");
        }
        if (s->n > cutoff) {
            throw Error(ErrorKind::Capacity, "Fock state |" + std::to_string(s->n) + "> exceeds cutoff " +
                                                 std::to_string(cutoff));
        }
        m(static_cast<std::size_t>(s->n), static_cast<std::size_t>(s->n)) = 1.0;
    } else if (const auto *s = std::get_if<PartialQubit>(&spec)) {
        const double q2 = std::norm(s->q);
        if (!(s->p >= 0.0 && s->p <= 1.0)) {
            throw Error(ErrorKind::Validation, "partial-qubit p must lie in [0, 1]");
        }
        if (q2 > s->p * (1.0 - s->p) + 1e-15) {
            std::ostringstream os;
            os << "partial-qubit coherence |q|^2 = " << q2 << " exceeds p(1-p) = " << s->p * (1.0 - s->p)
               << "; the state would not be positive";
            throw Error(ErrorKind::Positivity, os.str());
        }
        if (cutoff < 1) {
            throw Error(ErrorKind::Capacity, "partial-qubit state needs a cutoff of at least 1");
        }
        m(0, 0) = 1.0 - s->p;
        m(0, 1) = s->q;
        m(1, 0) = std::conj(s->q);
        m(1, 1) = s->p;
    } else {
        const auto &c = std::get<Coherent>(spec);
        tail = coherent_tail(std::norm(c.alpha), cutoff);
        if (tail > tol.tail) {
            std::ostringstream os;
            os << describe(spec) << " loses tail weight " << tail << " above cutoff " << cutoff
               << ", more than the tail tolerance " << tol.tail << "; raise the cutoff";
            throw Error(ErrorKind::Truncation, os.str());
        }
        std::vector<cplx> amp(d);
        cplx a = std::exp(-0.5 * std::norm(c.alpha));
        for (int n = 0; n <= cutoff; ++n) {
            amp[static_cast<std::size_t>(n)] = a;
            a *= c.alpha / std::sqrt(static_cast<double>(n + 1));
        }
        const double norm = kernels::active().norm_sq(amp.size(), amp.data());
        const double scale = 1.0 / std::sqrt(norm);
        for (auto &v : amp) {
            v *= scale;
        }
        auto pure = pure_state(basis, amp);
        return DensityMatrix(basis, pure.elements(), true, tail);
    }
    return DensityMatrix(basis, std::move(m), true, tail);
}

DensityMatrix make_state(const SourceSpec &spec, int cutoff, const Tolerances &tol) {
    return make_state(spec, make_basis(1, cutoff, tol), tol);
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b, const BasisPtr &joint, TruncationPolicy policy,
                     const Tolerances &tol) {
    const FockBasis &ba = a.basis();
    const FockBasis &bb = b.basis();
    if (joint->modes() != ba.modes() + bb.modes()) {
        throw Error(ErrorKind::Validation, "joint basis must have a.modes + b.modes modes");
    }

    // Embedding of every (i, j) product index that survives the cutoff.
    std::vector<std::size_t> ia;
    std::vector<std::size_t> ib;
    std::vector<std::size_t> ij;
    std::vector<int> occ(static_cast<std::size_t>(joint->modes()));
    for (std::size_t i = 0; i < ba.dimension(); ++i) {
        for (std::size_t j = 0; j < bb.dimension(); ++j) {
            if (ba.total_photons(i) + bb.total_photons(j) > joint->cutoff()) {
                continue;
            }
            auto oa = ba.occupation(i);
            auto ob = bb.occupation(j);
            std::copy(oa.begin(), oa.end(), occ.begin());
            std::copy(ob.begin(), ob.end(), occ.begin() + static_cast<std::ptrdiff_t>(oa.size()));
            ia.push_back(i);
            ib.push_back(j);
            ij.push_back(joint->index_of(occ));
        }
    }

    CMatrix m(joint->dimension(), joint->dimension());
    double kept = 0.0;
    for (std::size_t r = 0; r < ij.size(); ++r) {
        for (std::size_t c = 0; c < ij.size(); ++c) {
            m(ij[r], ij[c]) = a(ia[r], ia[c]) * b(ib[r], ib[c]);
        }
        kept += m(ij[r], ij[r]).real();
    }
    const double full = a.trace() * b.trace();
    const double discarded = std::max(0.0, full - kept);
    const double tail = a.tail_weight() + b.tail_weight() + discarded;
    const bool normalized = a.normalized() && b.normalized();

    if (policy == TruncationPolicy::KeepUnnormalized) {
        return DensityMatrix(joint, std::move(m), normalized && discarded == 0.0, tail);
    }
    if (discarded > tol.tail) {
        std::ostringstream os;
        os << "tensor product truncation at cutoff " << joint->cutoff() << " discards weight " << discarded
           << ", more than the tail tolerance " << tol.tail << "; refusing to renormalize (raise the cutoff)";
        throw Error(ErrorKind::Truncation, os.str());
    }
    if (discarded > 0.0 && normalized) {
        m *= 1.0 / kept * full;
    }
    return DensityMatrix(joint, std::move(m), normalized, tail);
}

DensityMatrix tensor_all(std::span<const DensityMatrix> factors, int joint_cutoff, TruncationPolicy policy,
                         const Tolerances &tol) {
    if (factors.empty()) {
        throw Error(ErrorKind::Validation, "tensor product of an empty factor list");
    }
    DensityMatrix acc = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) {
        auto joint = make_basis(acc.modes() + factors[k].modes(), joint_cutoff, tol);
        acc = tensor(acc, factors[k], joint, policy, tol);
    }
    return acc;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    const FockBasis &basis = rho.basis();
    const int m = basis.modes();
    if (keep.empty()) {
        throw Error(ErrorKind::Validation, "partial_trace needs at least one kept mode");
    }
    std::vector<bool> kept(static_cast<std::size_t>(m), false);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || keep[k] >= m || kept[static_cast<std::size_t>(keep[k])]) {
            throw Error(ErrorKind::Validation, "partial_trace keep set must be distinct modes in [0, " +
                                                   std::to_string(m) + ")");
        }
        if (k > 0 && keep[k] < keep[k - 1]) {
            throw Error(ErrorKind::Validation, "partial_trace keep set must be ascending");
        }
        kept[static_cast<std::size_t>(keep[k])] = true;
    }
    if (static_cast<int>(keep.size()) == m) {
        return rho;
    }

    auto reduced = make_basis(static_cast<int>(keep.size()), basis.cutoff());
    // Group basis states by their traced-out occupation; only pairs within a
    // group contribute.
    std::vector<int> traced_occ;
    std::vector<int> kept_occ(keep.size());
    std::map<std::vector<int>, std::vector<std::pair<std::size_t, std::size_t>>> groups;
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        auto occ = basis.occupation(i);
        traced_occ.clear();
        for (int k = 0; k < m; ++k) {
            if (!kept[static_cast<std::size_t>(k)]) {
                traced_occ.push_back(occ[static_cast<std::size_t>(k)]);
            }
        }
        for (std::size_t k = 0; k < keep.size(); ++k) {
            kept_occ[k] = occ[static_cast<std::size_t>(keep[k])];
        }
        groups[traced_occ].emplace_back(i, reduced->index_of(kept_occ));
    }

    CMatrix out(reduced->dimension(), reduced->dimension());
    for (const auto &g : groups) {
        for (const auto &[i, ri] : g.second) {
            for (const auto &[j, rj] : g.second) {
                out(ri, rj) += rho(i, j);
            }
        }
    }
    return DensityMatrix(reduced, std::move(out), rho.normalized(), rho.tail_weight());
}

}  // namespace pel
