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

#include "pel/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pel/error.hpp"
#include "pel/kernels/kernels.hpp"

namespace pel {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double CMatrix::hermiticity_error() const {
    if (!square()) {
        return INFINITY;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return m;
}

CMatrix &CMatrix::operator+=(const CMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw Error(ErrorKind::Contract, "matrix shape mismatch in +=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw Error(ErrorKind::Contract, "matrix shape mismatch in -=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

CMatrix &CMatrix::operator*=(cplx s) {
    for (auto &v : data_) {
        v *= s;
    }
    return *this;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::Contract, "matrix shape mismatch in product");
    }
    CMatrix c(a.rows(), b.cols());
    if (c.rows() == 0 || c.cols() == 0) {
        return c;
    }
    kernels::active().gemm(a.rows(), b.cols(), a.cols(), a.data(), a.cols(), b.data(), b.cols(), c.data(),
                           c.cols());
    return c;
}

CMatrix multiply_adjoint(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.cols()) {
        throw Error(ErrorKind::Contract, "matrix shape mismatch in A*B^H");
    }
    CMatrix c(a.rows(), b.rows());
    if (c.rows() == 0 || c.cols() == 0) {
        return c;
    }
    kernels::active().gemm_adj_b(a.rows(), b.rows(), a.cols(), a.data(), a.cols(), b.data(), b.cols(),
                                 c.data(), c.cols());
    return c;
}

CMatrix conjugate(const CMatrix &a, const CMatrix &x) {
    return multiply_adjoint(a * x, a);
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::Contract, "matrix shape mismatch in max_abs_diff");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

double unitarity_error(const CMatrix &u) {
    if (!u.square()) {
        return INFINITY;
    }
    const CMatrix g = multiply_adjoint(u.adjoint(), u.adjoint());
    return max_abs_diff(g, CMatrix::identity(u.rows()));
}

}  // namespace pel
