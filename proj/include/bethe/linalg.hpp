// Copyright 2026 The bethe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Small dense complex matrices: LU with partial pivoting, determinants and
 * linear solves. Sizes here never exceed a few dozen.
 */
#pragma once

#include "common.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace bethe {

/// Row-major square complex matrix.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}

    [[nodiscard]] std::size_t dim() const { return n_; }
    cplx &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const {
        return data_[i * n_ + j];
    }

    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (const auto &x : data_) {
            m = std::max(m, std::abs(x));
        }
        return m;
    }

    template <typename F> static Matrix generate(std::size_t n, F &&entry) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = entry(i, j);
            }
        }
        return m;
    }

  private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

/// In-place LU factorisation with partial pivoting, PA = LU.
class LuDecomposition {
  public:
    explicit LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.dim()) {
        const std::size_t n = lu_.dim();
        for (std::size_t i = 0; i < n; ++i) {
            perm_[i] = i;
        }
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                if (std::abs(lu_(i, k)) > best) {
                    best = std::abs(lu_(i, k));
                    piv = i;
                }
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(lu_(k, j), lu_(piv, j));
                }
                std::swap(perm_[k], perm_[piv]);
                sign_ = -sign_;
            }
            if (best == 0.0) {
                singular_ = true;
                continue;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const cplx l = lu_(i, k) / lu_(k, k);
                lu_(i, k) = l;
                for (std::size_t j = k + 1; j < n; ++j) {
                    lu_(i, j) -= l * lu_(k, j);
                }
            }
        }
    }

    [[nodiscard]] cplx determinant() const {
        cplx det = sign_;
        for (std::size_t i = 0; i < lu_.dim(); ++i) {
            det *= lu_(i, i);
        }
        return det;
    }

    [[nodiscard]] bool singular() const { return singular_; }

    [[nodiscard]] std::vector<cplx> solve(std::span<const cplx> rhs) const {
        const std::size_t n = lu_.dim();
        if (rhs.size() != n) {
            throw DimensionError("LuDecomposition::solve: size mismatch");
        }
        if (singular_) {
            throw DomainError("LuDecomposition::solve: singular matrix");
        }
        std::vector<cplx> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = rhs[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) {
                s -= lu_(i, j) * x[j];
            }
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            cplx s = x[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                s -= lu_(i, j) * x[j];
            }
            x[i] = s / lu_(i, i);
        }
        return x;
    }

  private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
    double sign_ = 1.0;
    bool singular_ = false;
};

inline cplx determinant(const Matrix &a) {
    if (a.dim() == 0) {
        return 1.0;
    }
    return LuDecomposition(a).determinant();
}

/// Result of a closed-form determinant evaluation.
struct DeterminantResult {
    cplx value;
    /// max|entry|^n * n / |det|; large values flag cancellation-prone draws.
    double condition_hint = 0.0;
    int matrix_dim = 0;
};

inline DeterminantResult determinant_with_hint(const Matrix &a,
                                               cplx prefactor = 1.0) {
    const cplx det = determinant(a);
    const auto n = static_cast<int>(a.dim());
    double hint = 0.0;
    if (n > 0) {
        const double scale = std::pow(a.max_abs(), n) * n;
        hint = std::abs(det) > 0.0 ? scale / std::abs(det)
                                   : std::numeric_limits<double>::infinity();
    }
    return {prefactor * det, hint, n};
}

} // namespace bethe
