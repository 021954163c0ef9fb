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
 * Scalar types, model parameters and the exception hierarchy shared by all
 * modules.
 */
#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bethe {

using cplx = std::complex<double>;

/// Ordered list of spectral parameters ({lambda}, {t}, {mu}, {nu}, ...).
using SpectralSet = std::vector<cplx>;

/// Minimum admissible |phi(x + eta)| and pairwise parameter separation.
inline constexpr double kPoleGuard = 1e-3;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter landed within the pole guard of a singular point.
class PoleError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    using Error::Error;
};

enum class Variant { rational, trigonometric };

inline const char *to_string(Variant v) {
    return v == Variant::rational ? "rational" : "trigonometric";
}

/**
 * Chain variant, anisotropy and inhomogeneities.
 *
 * Sites are numbered 1..N; `xi[k - 1]` is the inhomogeneity of site k.
 */
struct ModelParams {
    Variant variant = Variant::rational;
    cplx eta{1.0, 0.0};
    SpectralSet xi;

    [[nodiscard]] int n_sites() const { return static_cast<int>(xi.size()); }

    /// phi(x) = x (rational) or sinh(x) (trigonometric).
    [[nodiscard]] cplx phi(cplx x) const {
        return variant == Variant::rational ? x : std::sinh(x);
    }
    [[nodiscard]] cplx phi_prime(cplx x) const {
        return variant == Variant::rational ? cplx{1.0} : std::cosh(x);
    }

    [[nodiscard]] cplx site_xi(int site) const { return xi.at(site - 1); }

    void validate() const {
        if (xi.empty()) {
            throw DomainError("ModelParams: chain needs at least one site");
        }
        if (xi.size() > 30) {
            throw DomainError("ModelParams: more than 30 sites");
        }
        if (std::abs(phi(eta)) < kPoleGuard) {
            throw DomainError("ModelParams: phi(eta) vanishes");
        }
    }

    [[nodiscard]] bool xi_distinct(double tol = kPoleGuard) const {
        for (std::size_t i = 0; i < xi.size(); ++i) {
            for (std::size_t j = i + 1; j < xi.size(); ++j) {
                if (std::abs(xi[i] - xi[j]) < tol) {
                    return false;
                }
            }
        }
        return true;
    }

    void require_distinct_xi() const {
        if (!xi_distinct()) {
            throw DomainError(
                "inhomogeneities must be pairwise distinct for this operation");
        }
    }
};

inline ModelParams homogeneous_model(int n_sites, cplx eta = 1.0,
                                     cplx xi = 0.0,
                                     Variant variant = Variant::rational) {
    return ModelParams{variant, eta, SpectralSet(n_sites, xi)};
}

/// Rational-chain weight c(x) = x / (x + eta), used by the closed forms.
inline cplx rational_c(cplx x, cplx eta) {
    const cplx den = x + eta;
    if (std::abs(den) < kPoleGuard) {
        throw PoleError("c(x): x + eta within pole guard");
    }
    return x / den;
}

} // namespace bethe
