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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pel/error.hpp"
#include "pel/interferometer.hpp"
#include "pel/permanent.hpp"

namespace pel {
namespace {

void check_unitary(const CMatrix &u, const Tolerances &tol) {
    if (!u.square() || u.rows() == 0) {
        throw Error(ErrorKind::Contract, "mode unitary must be a non-empty square matrix");
    }
    const double err = unitarity_error(u);
    if (err > tol.unitarity) {
        std::ostringstream os;
        os << "matrix is not unitary: max |U^H U - I| = " << err << " > " << tol.unitarity;
        throw Error(ErrorKind::Contract, os.str());
    }
}

// Left-multiplies the rows (i, i+1) of u by R(theta, phi).
void rotate_rows(CMatrix &u, int i, const CMatrix &r) {
    const auto a = static_cast<std::size_t>(i);
    for (std::size_t c = 0; c < u.cols(); ++c) {
        const cplx x = u(a, c);
        const cplx y = u(a + 1, c);
        u(a, c) = r(0, 0) * x + r(0, 1) * y;
        u(a + 1, c) = r(1, 0) * x + r(1, 1) * y;
    }
}

// Right-multiplies the columns (i, i+1) of u by r.
void rotate_cols(CMatrix &u, int i, const CMatrix &r) {
    const auto a = static_cast<std::size_t>(i);
    for (std::size_t row = 0; row < u.rows(); ++row) {
        const cplx x = u(row, a);
        const cplx y = u(row, a + 1);
        u(row, a) = x * r(0, 0) + y * r(1, 0);
        u(row, a + 1) = x * r(0, 1) + y * r(1, 1);
    }
}

struct Rotation {
    int mode;
    double theta;
    double phi;
};

// Indices x of sector n with no photons in mode i, each followed by the
// states reached by moving photons from mode i+1 to mode i one at a time.
std::vector<std::vector<std::size_t>> pair_chains(const FockBasis &basis, int i, int n) {
    std::vector<std::vector<std::size_t>> chains;
    const std::size_t start = basis.block_start(n);
    for (std::size_t x = start; x < start + basis.block_size(n); ++x) {
        if (basis.photons(x, i) != 0) {
            continue;
        }
        std::vector<std::size_t> chain{x};
        std::size_t cur = x;
        while (basis.photons(cur, i + 1) > 0) {
            cur = basis.raise(basis.lower(cur, i + 1), i);
            chain.push_back(cur);
        }
        chains.push_back(std::move(chain));
    }
    return chains;
}

}  // namespace

ModeUnitary::ModeUnitary(CMatrix u, const Tolerances &tol) : u_(std::move(u)) {
    check_unitary(u_, tol);
}

ModeUnitary::ModeUnitary(CMatrix u, std::vector<double> mesh_params, const Tolerances &tol)
    : u_(std::move(u)), params_(std::move(mesh_params)) {
    check_unitary(u_, tol);
    if (params_->size() != mesh_param_count(modes())) {
        throw Error(ErrorKind::Validation, "mesh parameter count does not match the mode count");
    }
}

ModeUnitary ModeUnitary::identity(int modes) {
    if (modes < 1) {
        throw Error(ErrorKind::Validation, "a mode unitary needs at least one mode");
    }
    return ModeUnitary(CMatrix::identity(static_cast<std::size_t>(modes)),
                       std::vector<double>(mesh_param_count(modes), 0.0));
}

ModeUnitary ModeUnitary::operator*(const ModeUnitary &other) const {
    if (modes() != other.modes()) {
        throw Error(ErrorKind::Contract, "mode unitaries of different sizes");
    }
    return ModeUnitary(u_ * other.u_);
}

CMatrix coupler(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx e = std::polar(1.0, phi);
    CMatrix r(2, 2);
    r(0, 0) = c;
    r(0, 1) = -e * s;
    r(1, 0) = std::conj(e) * s;
    r(1, 1) = c;
    return r;
}

std::vector<int> mesh_layout(int modes) {
    std::vector<int> out;
    for (int layer = 0; layer < modes; ++layer) {
        for (int i = layer % 2; i + 1 < modes; i += 2) {
            out.push_back(i);
        }
    }
    return out;
}

std::size_t mesh_param_count(int modes) {
    return static_cast<std::size_t>(modes) * static_cast<std::size_t>(modes);
}

ModeUnitary haar_random(int modes, std::uint64_t seed) {
    if (modes < 1) {
        throw Error(ErrorKind::Validation, "a mode unitary needs at least one mode");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd z(modes, modes);
    for (int i = 0; i < modes; ++i) {
        for (int j = 0; j < modes; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    const Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    const auto n = static_cast<std::size_t>(modes);
    CMatrix u(n, n);
    for (int j = 0; j < modes; ++j) {
        const cplx d = r(j, j);
        const cplx phase = std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
        for (int i = 0; i < modes; ++i) {
            u(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = q(i, j) * phase;
        }
    }
    return ModeUnitary(std::move(u));
}

ModeUnitary from_mesh(std::span<const double> params, int modes) {
    if (modes < 1) {
        throw Error(ErrorKind::Validation, "a mode unitary needs at least one mode");
    }
    if (params.size() != mesh_param_count(modes)) {
        std::ostringstream os;
        os << "mesh on " << modes << " modes takes " << mesh_param_count(modes) << " parameters, got "
           << params.size();
        throw Error(ErrorKind::Validation, os.str());
    }
    const auto layout = mesh_layout(modes);
    const auto n = static_cast<std::size_t>(modes);
    CMatrix u = CMatrix::identity(n);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        rotate_rows(u, layout[k], coupler(params[2 * k], params[2 * k + 1]));
    }
    const std::size_t off = 2 * layout.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx d = std::polar(1.0, params[off + i]);
        for (std::size_t c = 0; c < n; ++c) {
            u(i, c) *= d;
        }
    }
    return ModeUnitary(std::move(u), std::vector<double>(params.begin(), params.end()));
}

std::vector<double> decompose_mesh(const ModeUnitary &unitary) {
    const int n = unitary.modes();
    CMatrix u = unitary.matrix();
    std::vector<Rotation> right;
    std::vector<Rotation> left;
    // Null the lower triangle in anti-diagonal sweeps, alternating between
    // column operations U <- U T^-1 and row operations U <- T U.
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            if (i % 2 == 0) {
                const auto r = static_cast<std::size_t>(n - 1 - j);
                const int m = i - j;
                const cplx x = u(r, static_cast<std::size_t>(m));
                const cplx y = u(r, static_cast<std::size_t>(m + 1));
                const double theta = std::atan2(std::abs(x), std::abs(y));
                const double phi = std::arg(y) - std::arg(x);
                rotate_cols(u, m, coupler(-theta, phi));
                right.push_back({m, theta, phi});
            } else {
                const int row = n - 1 - i + j;
                const auto c = static_cast<std::size_t>(j);
                const cplx x = u(static_cast<std::size_t>(row - 1), c);
                const cplx y = u(static_cast<std::size_t>(row), c);
                const double theta = std::atan2(std::abs(y), std::abs(x));
                const double phi = std::arg(x) - std::arg(-y);
                rotate_rows(u, row - 1, coupler(theta, phi));
                left.push_back({row - 1, theta, phi});
            }
        }
    }
    // Now L_k ... L_1 U T_1^-1 ... T_r^-1 = D, so U = L_1^-1 ... L_k^-1 D T_r ... T_1.
    // R(theta, phi)^-1 D = D R(-theta, phi + arg(d2/d1)) moves D to the left.
    std::vector<cplx> d(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        d[static_cast<std::size_t>(k)] = u(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    }
    std::vector<Rotation> order = right;
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const cplx ratio = d[static_cast<std::size_t>(it->mode + 1)] / d[static_cast<std::size_t>(it->mode)];
        order.push_back({it->mode, -it->theta, it->phi + std::arg(ratio)});
    }
    // Assign the k-th rotation on each pair to the k-th mesh slot of that pair.
    const auto layout = mesh_layout(n);
    std::vector<std::vector<std::size_t>> slots(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (std::size_t k = 0; k < layout.size(); ++k) {
        slots[static_cast<std::size_t>(layout[k])].push_back(k);
    }
    std::vector<std::size_t> used(slots.size(), 0);
    std::vector<double> params(mesh_param_count(n), 0.0);
    for (const Rotation &rot : order) {
        auto &u_slot = used[static_cast<std::size_t>(rot.mode)];
        const auto &pair_slots = slots[static_cast<std::size_t>(rot.mode)];
        if (u_slot >= pair_slots.size()) {
            throw Error(ErrorKind::Contract, "mesh decomposition produced more rotations than mesh slots");
        }
        const std::size_t k = pair_slots[u_slot++];
        params[2 * k] = rot.theta;
        params[2 * k + 1] = rot.phi;
    }
    const std::size_t off = 2 * layout.size();
    for (int k = 0; k < n; ++k) {
        params[off + static_cast<std::size_t>(k)] = std::arg(d[static_cast<std::size_t>(k)]);
    }
    return params;
}

FockLift::FockLift(BasisPtr basis, std::vector<CMatrix> blocks) : basis_(std::move(basis)), blocks_(std::move(blocks)) {
    if (blocks_.size() != static_cast<std::size_t>(basis_->cutoff() + 1)) {
        throw Error(ErrorKind::Contract, "Fock lift needs one block per photon number");
    }
}

CMatrix FockLift::dense() const {
    const std::size_t d = basis_->dimension();
    CMatrix out(d, d);
    for (int n = 0; n <= basis_->cutoff(); ++n) {
        const std::size_t s = basis_->block_start(n);
        const CMatrix &b = block(n);
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(s + i, s + j) = b(i, j);
            }
        }
    }
    return out;
}

double FockLift::unitarity_error() const {
    double worst = 0.0;
    for (const CMatrix &b : blocks_) {
        worst = std::max(worst, pel::unitarity_error(b));
    }
    return worst;
}

CMatrix two_mode_sector(const CMatrix &w, int n) {
    const auto d = static_cast<std::size_t>(n + 1);
    CMatrix out(d, d);
    std::vector<cplx> pw00(d), pw10(d), pw01(d), pw11(d);
    pw00[0] = pw10[0] = pw01[0] = pw11[0] = 1.0;
    for (std::size_t k = 1; k < d; ++k) {
        pw00[k] = pw00[k - 1] * w(0, 0);
        pw10[k] = pw10[k - 1] * w(1, 0);
        pw01[k] = pw01[k - 1] * w(0, 1);
        pw11[k] = pw11[k - 1] * w(1, 1);
    }
    // |a, b> -> (w00 x + w10 y)^a (w01 x + w11 y)^b |0> / sqrt(a! b!).
    for (int a = 0; a <= n; ++a) {
        const int b = n - a;
        for (int s = 0; s <= a; ++s) {
            const cplx first = binomial(a, s) * pw00[static_cast<std::size_t>(s)] * pw10[static_cast<std::size_t>(a - s)];
            for (int t = 0; t <= b; ++t) {
                const cplx second =
                    binomial(b, t) * pw01[static_cast<std::size_t>(t)] * pw11[static_cast<std::size_t>(b - t)];
                out(static_cast<std::size_t>(s + t), static_cast<std::size_t>(a)) += first * second;
            }
        }
    }
    for (int ap = 0; ap <= n; ++ap) {
        for (int a = 0; a <= n; ++a) {
            out(static_cast<std::size_t>(ap), static_cast<std::size_t>(a)) *=
                std::sqrt(factorial(ap) * factorial(n - ap) / (factorial(a) * factorial(n - a)));
        }
    }
    return out;
}

FockLift lift_mesh(const ModeUnitary &u, const BasisPtr &basis) {
    const int m = u.modes();
    if (basis->modes() != m) {
        throw Error(ErrorKind::Contract, "unitary and basis have different mode counts");
    }
    const std::vector<double> params = u.mesh_params() ? *u.mesh_params() : decompose_mesh(u);
    const auto layout = mesh_layout(m);
    const int cutoff = basis->cutoff();
    std::vector<CMatrix> blocks;
    for (int n = 0; n <= cutoff; ++n) {
        blocks.push_back(CMatrix::identity(basis->block_size(n)));
    }
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const CMatrix r = coupler(params[2 * k], params[2 * k + 1]);
        std::vector<CMatrix> sectors;
        for (int n = 0; n <= cutoff; ++n) {
            sectors.push_back(two_mode_sector(r, n));
        }
        for (int n = 1; n <= cutoff; ++n) {
            CMatrix &b = blocks[static_cast<std::size_t>(n)];
            const std::size_t start = basis->block_start(n);
            for (const auto &chain : pair_chains(*basis, layout[k], n)) {
                if (chain.size() == 1) {
                    continue;
                }
                CMatrix rows(chain.size(), b.cols());
                for (std::size_t a = 0; a < chain.size(); ++a) {
                    std::copy_n(b.row(chain[a] - start).data(), b.cols(), rows.row(a).data());
                }
                const CMatrix mixed = sectors[chain.size() - 1] * rows;
                for (std::size_t a = 0; a < chain.size(); ++a) {
                    std::copy_n(mixed.row(a).data(), b.cols(), b.row(chain[a] - start).data());
                }
            }
        }
    }
    const std::size_t off = 2 * layout.size();
    for (int n = 0; n <= cutoff; ++n) {
        CMatrix &b = blocks[static_cast<std::size_t>(n)];
        const std::size_t start = basis->block_start(n);
        for (std::size_t i = 0; i < b.rows(); ++i) {
            double phase = 0.0;
            for (int k = 0; k < m; ++k) {
                phase += basis->photons(start + i, k) * params[off + static_cast<std::size_t>(k)];
            }
            const cplx e = std::polar(1.0, phase);
            for (cplx &v : b.row(i)) {
                v *= e;
            }
        }
    }
    return FockLift(basis, std::move(blocks));
}

FockLift lift_permanent(const ModeUnitary &u, const BasisPtr &basis) {
    const int m = u.modes();
    if (basis->modes() != m) {
        throw Error(ErrorKind::Contract, "unitary and basis have different mode counts");
    }
    const CMatrix &mat = u.matrix();
    auto expand = [&](std::size_t index) {
        std::vector<std::size_t> out;
        for (int k = 0; k < m; ++k) {
            for (int c = 0; c < basis->photons(index, k); ++c) {
                out.push_back(static_cast<std::size_t>(k));
            }
        }
        return out;
    };
    auto norm = [&](std::size_t index) {
        double f = 1.0;
        for (int k = 0; k < m; ++k) {
            f *= factorial(basis->photons(index, k));
        }
        return f;
    };
    std::vector<CMatrix> blocks;
    for (int n = 0; n <= basis->cutoff(); ++n) {
        const std::size_t start = basis->block_start(n);
        const std::size_t size = basis->block_size(n);
        const auto un = static_cast<std::size_t>(n);
        CMatrix b(size, size);
        for (std::size_t i = 0; i < size; ++i) {
            const auto rows = expand(start + i);
            const double ni = norm(start + i);
            for (std::size_t j = 0; j < size; ++j) {
                const auto cols = expand(start + j);
                CMatrix sub(un, un);
                for (std::size_t r = 0; r < un; ++r) {
                    for (std::size_t c = 0; c < un; ++c) {
                        sub(r, c) = mat(rows[r], cols[c]);
                    }
                }
                b(i, j) = permanent(sub) / std::sqrt(ni * norm(start + j));
            }
        }
        blocks.push_back(std::move(b));
    }
    return FockLift(basis, std::move(blocks));
}

FockLift lift(const ModeUnitary &u, const BasisPtr &basis) {
    return lift_mesh(u, basis);
}

DensityMatrix apply_lift(const DensityMatrix &rho, const FockLift &v) {
    const FockBasis &basis = rho.basis();
    if (!(basis == v.basis())) {
        throw Error(ErrorKind::Contract, "state and lift live on different bases");
    }
    const std::size_t d = basis.dimension();
    CMatrix out(d, d);
    for (int n = 0; n <= basis.cutoff(); ++n) {
        const std::size_t rs = basis.block_start(n);
        const std::size_t rn = basis.block_size(n);
        for (int m = 0; m <= basis.cutoff(); ++m) {
            const std::size_t cs = basis.block_start(m);
            const std::size_t cn = basis.block_size(m);
            CMatrix sub(rn, cn);
            bool zero = true;
            for (std::size_t i = 0; i < rn; ++i) {
                for (std::size_t j = 0; j < cn; ++j) {
                    sub(i, j) = rho(rs + i, cs + j);
                    zero = zero && sub(i, j) == cplx(0.0);
                }
            }
            if (zero) {
                continue;
            }
            const CMatrix res = multiply_adjoint(v.block(n) * sub, v.block(m));
            for (std::size_t i = 0; i < rn; ++i) {
                for (std::size_t j = 0; j < cn; ++j) {
                    out(rs + i, cs + j) = res(i, j);
                }
            }
        }
    }
    return DensityMatrix(rho.basis_ptr(), std::move(out), rho.normalized(), rho.tail_weight());
}

DensityMatrix apply_interferometer(const DensityMatrix &rho, const ModeUnitary &u) {
    if (rho.modes() != u.modes()) {
        throw Error(ErrorKind::Contract, "state and interferometer have different mode counts");
    }
    return apply_lift(rho, lift(u, rho.basis_ptr()));
}

}  // namespace pel
