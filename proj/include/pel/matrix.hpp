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

#ifndef PEL_MATRIX_HPP
#define PEL_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pel {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Value type; products go through the
/// active kernel table.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const cplx> diag);
    static CMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool square() const noexcept {
        return rows_ == cols_;
    }

    cplx &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const cplx &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    cplx *data() noexcept {
        return data_.data();
    }
    const cplx *data() const noexcept {
        return data_.data();
    }
    std::span<cplx> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const cplx> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    cplx trace() const;

    /// max_ij |a_ij|
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const;

    CMatrix &operator+=(const CMatrix &other);
    CMatrix &operator-=(const CMatrix &other);
    CMatrix &operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix &b) {
        return a += b;
    }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) {
        return a -= b;
    }
    friend CMatrix operator*(CMatrix a, cplx s) {
        return a *= s;
    }
    friend CMatrix operator*(cplx s, CMatrix a) {
        return a *= s;
    }
    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);

    bool operator==(const CMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// A * B^H without forming the adjoint.
CMatrix multiply_adjoint(const CMatrix &a, const CMatrix &b);

/// A * X * A^H
CMatrix conjugate(const CMatrix &a, const CMatrix &x);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// max_ij |(U^H U - I)_ij|
double unitarity_error(const CMatrix &u);

}  // namespace pel

#endif
