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
#include "pel/error.hpp"

namespace pel {
namespace {

void check_transmissivity(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "loss transmissivity must lie in (0, 1] (got " << p << ")";
        throw Error(ErrorKind::Validation, os.str());
    }
}

std::vector<int> acted_modes(const LossChannel &ch, int modes) {
    if (ch.modes.empty()) {
        std::vector<int> all(static_cast<std::size_t>(modes));
        for (int k = 0; k < modes; ++k) {
            all[static_cast<std::size_t>(k)] = k;
        }
        return all;
    }
    std::vector<int> out = ch.modes;
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end() || out.front() < 0 || out.back() >= modes) {
        throw Error(ErrorKind::Validation, "loss channel modes must be distinct and in [0, " + std::to_string(modes) + ")");
    }
    return out;
}

// w[a][b][l] = sqrt(C(a+l, l) C(b+l, l)) p^((a+b)/2) (1-p)^l for a, b, a+l, b+l <= cutoff.
class LossWeights {
   public:
    LossWeights(double p, int cutoff) : n_(cutoff + 1), w_(static_cast<std::size_t>(n_ * n_ * n_), 0.0) {
        std::vector<double> sqrt_p(static_cast<std::size_t>(2 * n_ + 1));
        std::vector<double> loss(static_cast<std::size_t>(n_ + 1));
        for (int i = 0; i <= 2 * n_; ++i) {
            sqrt_p[static_cast<std::size_t>(i)] = std::pow(p, 0.5 * i);
        }
        for (int l = 0; l <= n_; ++l) {
            loss[static_cast<std::size_t>(l)] = std::pow(1.0 - p, l);
        }
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b) {
                for (int l = 0; a + l < n_ && b + l < n_; ++l) {
                    at(a, b, l) = std::sqrt(binomial(a + l, l) * binomial(b + l, l)) *
                                  sqrt_p[static_cast<std::size_t>(a + b)] * loss[static_cast<std::size_t>(l)];
                }
            }
        }
    }
    double operator()(int a, int b, int l) const {
        return w_[static_cast<std::size_t>((a * n_ + b) * n_ + l)];
    }

   private:
    double &at(int a, int b, int l) {
        return w_[static_cast<std::size_t>((a * n_ + b) * n_ + l)];
    }
    int n_;
    std::vector<double> w_;
};

// chains[i] = indices of i + l e_mode for l = 0, 1, ... while inside the basis.
std::vector<std::vector<std::size_t>> raise_chains(const FockBasis &basis, int mode) {
    std::vector<std::vector<std::size_t>> chains(basis.dimension());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        std::size_t cur = i;
        while (cur != FockBasis::npos) {
            chains[i].push_back(cur);
            cur = basis.raise(cur, mode);
        }
    }
    return chains;
}

CMatrix loss_one_mode(const CMatrix &rho, const FockBasis &basis, int mode, const LossWeights &w) {
    const std::size_t d = basis.dimension();
    const auto chains = raise_chains(basis, mode);
    CMatrix out(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        const auto &cx = chains[x];
        const int a = basis.photons(x, mode);
        for (std::size_t y = 0; y < d; ++y) {
            const auto &cy = chains[y];
            const int b = basis.photons(y, mode);
            const std::size_t len = std::min(cx.size(), cy.size());
            cplx s = 0.0;
            for (std::size_t l = 0; l < len; ++l) {
                s += w(a, b, static_cast<int>(l)) * rho(cx[l], cy[l]);
            }
            out(x, y) = s;
        }
    }
    return out;
}

CMatrix unloss_one_mode(const CMatrix &rho, const FockBasis &basis, int mode, const LossWeights &w) {
    const std::size_t d = basis.dimension();
    const auto chains = raise_chains(basis, mode);
    // Rows in decreasing photon number on `mode`: every term on the right-hand
    // side refers to a row with more photons, which is already solved.
    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
        return basis.photons(u, mode) > basis.photons(v, mode);
    });
    CMatrix out(d, d);
    for (std::size_t x : order) {
        const auto &cx = chains[x];
        const int a = basis.photons(x, mode);
        for (std::size_t y = 0; y < d; ++y) {
            const auto &cy = chains[y];
            const int b = basis.photons(y, mode);
            const std::size_t len = std::min(cx.size(), cy.size());
            cplx s = rho(x, y);
            for (std::size_t l = 1; l < len; ++l) {
                s -= w(a, b, static_cast<int>(l)) * out(cx[l], cy[l]);
            }
            out(x, y) = s / w(a, b, 0);
        }
    }
    return out;
}

}  // namespace

std::vector<CMatrix> kraus_operators(double p, int cutoff) {
    check_transmissivity(p);
    const auto d = static_cast<std::size_t>(cutoff + 1);
    std::vector<CMatrix> out;
    for (int l = 0; l <= cutoff; ++l) {
        CMatrix k(d, d);
        for (int n = l; n <= cutoff; ++n) {
            k(static_cast<std::size_t>(n - l), static_cast<std::size_t>(n)) =
                std::sqrt(binomial(n, l)) * std::pow(p, 0.5 * (n - l)) * std::pow(1.0 - p, 0.5 * l);
        }
        out.push_back(std::move(k));
    }
    return out;
}

double kraus_completeness_error(const std::vector<CMatrix> &kraus) {
    if (kraus.empty()) {
        return INFINITY;
    }
    const std::size_t d = kraus.front().cols();
    CMatrix sum(d, d);
    for (const auto &k : kraus) {
        const CMatrix kh = k.adjoint();
        sum += kh * k;
    }
    return max_abs_diff(sum, CMatrix::identity(d));
}

std::vector<double> bernoulli_diagonal(std::span<const double> diag, double p) {
    check_transmissivity(p);
    const int top = static_cast<int>(diag.size()) - 1;
    std::vector<double> out(diag.size(), 0.0);
    for (int n = 0; n <= top; ++n) {
        double s = 0.0;
        for (int m = n; m <= top; ++m) {
            s += std::pow(p, n) * std::pow(1.0 - p, m - n) * binomial(m, n) * diag[static_cast<std::size_t>(m)];
        }
        out[static_cast<std::size_t>(n)] = s;
    }
    return out;
}

DensityMatrix apply_loss(const DensityMatrix &rho, const LossChannel &ch) {
    check_transmissivity(ch.p);
    const FockBasis &basis = rho.basis();
    const auto modes = acted_modes(ch, basis.modes());
    if (ch.p == 1.0) {
        return rho;
    }
    const LossWeights w(ch.p, basis.cutoff());
    CMatrix m = rho.elements();
    for (int k : modes) {
        m = loss_one_mode(m, basis, k, w);
    }
    return DensityMatrix(rho.basis_ptr(), std::move(m), rho.normalized(), rho.tail_weight());
}

DensityMatrix apply_loss_kraus_dense(const DensityMatrix &rho, double p) {
    if (rho.modes() != 1) {
        throw Error(ErrorKind::Validation, "dense Kraus loss is implemented for single-mode states");
    }
    const auto kraus = kraus_operators(p, rho.basis().cutoff());
    CMatrix out(rho.dimension(), rho.dimension());
    for (const auto &k : kraus) {
        out += conjugate(k, rho.elements());
    }
    return DensityMatrix(rho.basis_ptr(), std::move(out), rho.normalized(), rho.tail_weight());
}

int support_bound(const DensityMatrix &rho, double threshold) {
    int top = 0;
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        if (std::abs(rho(i, i)) > threshold) {
            top = std::max(top, rho.basis().total_photons(i));
        }
    }
    return top;
}

double conditioning_floor(int support, const Tolerances &tol) {
    if (support <= 0) {
        return 0.0;
    }
    return std::pow(tol.conditioning, -1.0 / support);
}

CMatrix invert_loss(const DensityMatrix &rho, const LossChannel &ch, const Tolerances &tol) {
    check_transmissivity(ch.p);
    const FockBasis &basis = rho.basis();
    const auto modes = acted_modes(ch, basis.modes());
    const int support = support_bound(rho);
    if (ch.p < conditioning_floor(support, tol)) {
        const double amplification = std::pow(ch.p, -static_cast<double>(support));
        std::ostringstream os;
        os << "inverting loss p = " << ch.p << " on a state with up to " << support << " photons amplifies by p^-"
           << support << " = " << amplification << " > " << tol.conditioning << "; smallest admissible p is "
           << conditioning_floor(support, tol);
        throw Error(ErrorKind::Conditioning, os.str());
    }
    CMatrix m = rho.elements();
    if (ch.p == 1.0) {
        return m;
    }
    const LossWeights w(ch.p, basis.cutoff());
    for (int k : modes) {
        m = unloss_one_mode(m, basis, k, w);
    }
    return m;
}

}  // namespace pel
