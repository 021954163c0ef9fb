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
 * Closed forms for the scalar product of the rational (XXX) chain:
 *
 *  - phi_m: the domain-wall-type matrix element between the saturated state
 *    and a B-string on an M-site lattice,
 *  - scalar_product_sum: the sum over all C(2M, M) ways of splitting
 *    {lambda} u {t} into {mu} u {nu},
 *  - scalar_product_bethe_sum: the same sum rewritten for Bethe roots with
 *    explicit sign factors,
 *  - slavnov_determinant and its diagonal limit gaudin_norm,
 *  - the residue recursion at lambda_1 -> t_1 and the first-column reduction
 *    identity used by the direct proof.
 */
#pragma once

#include "linalg.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <array>

namespace bethe {

namespace detail {

inline void require_distinct(std::span<const cplx> x, const char *what,
                             double guard = kPoleGuard) {
    require_separated(x, x, what, guard);
}

inline void require_not_pole(cplx den, const char *what) {
    if (std::abs(den) < kPoleGuard) {
        throw PoleError(std::string(what) + ": denominator within pole guard");
    }
}

/// Deterministic pairwise (tree) reduction.
inline cplx pairwise_sum(std::span<const cplx> v) {
    if (v.empty()) {
        return 0.0;
    }
    if (v.size() == 1) {
        return v[0];
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Sign of the permutation listed in `p` (values need not be 0..n-1).
inline int permutation_sign(std::span<const int> p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) {
                sign = -sign;
            }
        }
    }
    return sign;
}

template <typename T>
std::vector<T> pick(std::span<const T> from, std::span<const int> idx) {
    std::vector<T> out;
    out.reserve(idx.size());
    for (int i : idx) {
        out.push_back(from[i]);
    }
    return out;
}

} // namespace detail

/// prod_{i<j} (x_i - x_j)
inline cplx vandermonde_upper(std::span<const cplx> x) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            v *= x[i] - x[j];
        }
    }
    return v;
}

/// prod_{j<i} (x_i - x_j)
inline cplx vandermonde_lower(std::span<const cplx> x) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            v *= x[i] - x[j];
        }
    }
    return v;
}

/// Matrix eta / ((x_i - y_j)(x_i - y_j + eta)).
inline Matrix kernel_matrix(std::span<const cplx> x, std::span<const cplx> y,
                            cplx eta) {
    if (x.size() != y.size()) {
        throw DimensionError("kernel_matrix: size mismatch");
    }
    return Matrix::generate(x.size(), [&](std::size_t i, std::size_t j) {
        const cplx u = x[i] - y[j];
        detail::require_not_pole(u, "kernel_matrix");
        detail::require_not_pole(u + eta, "kernel_matrix");
        return eta / (u * (u + eta));
    });
}

/// det_{ij} eta / ((x_i - y_j)(x_i - y_j + eta)); 1 for empty sets.
inline cplx kernel_determinant(std::span<const cplx> x, std::span<const cplx> y,
                               cplx eta) {
    return determinant(kernel_matrix(x, y, eta));
}

/**
 * Phi_M(xi, t) = prod_{i,j}(t_i - xi_j) / (prod_{i<j}(t_i - t_j)
 *                prod_{j<i}(xi_i - xi_j)) det[eta / ((t_i - xi_j)(t_i - xi_j + eta))].
 *
 * Row i of the determinant is multiplied by prod_j (t_i - xi_j) before the
 * LU step, so coincidences t_i = xi_j (removable) are evaluated exactly.
 */
inline cplx phi_m(std::span<const cplx> xi_set, std::span<const cplx> t_set,
                  cplx eta) {
    if (xi_set.size() != t_set.size()) {
        throw DimensionError("phi_m: |xi| != |t|");
    }
    const std::size_t m = t_set.size();
    if (m == 0) {
        return 1.0;
    }
    detail::require_distinct(xi_set, "phi_m (xi)");
    detail::require_distinct(t_set, "phi_m (t)");
    const Matrix scaled = Matrix::generate(m, [&](std::size_t i, std::size_t j) {
        const cplx den = t_set[i] - xi_set[j] + eta;
        detail::require_not_pole(den, "phi_m");
        cplx num = eta;
        for (std::size_t k = 0; k < m; ++k) {
            if (k != j) {
                num *= t_set[i] - xi_set[k];
            }
        }
        return num / den;
    });
    return determinant(scaled) /
           (vandermonde_upper(t_set) * vandermonde_lower(xi_set));
}

/**
 * One way of splitting {lambda} u {t} into M "mu" and M "nu" parameters.
 *
 * Index sets are 0-based positions inside {lambda} and {t}, increasing:
 * mu = {t_alpha} u {lambda_beta}, nu = {t_k} u {lambda_n}.
 */
struct SubsetPartition {
    std::vector<int> chosen; ///< positions in (lambda_1..M, t_1..M) forming mu
    SpectralSet mu;
    SpectralSet nu;
    std::vector<int> k_set;     ///< t's in nu
    std::vector<int> n_set;     ///< lambda's in nu
    std::vector<int> alpha_set; ///< t's in mu
    std::vector<int> beta_set;  ///< lambda's in mu
    int sign_k = 1;             ///< parity of (k..., alpha...)
    int sign_n = 1;             ///< parity of (n..., beta...)

    [[nodiscard]] int m() const { return static_cast<int>(k_set.size()); }
};

/// All C(2M, M) partitions in lexicographic order of `chosen`.
inline std::vector<SubsetPartition>
enumerate_partitions(std::span<const cplx> lambdas, std::span<const cplx> ts) {
    if (lambdas.size() != ts.size()) {
        throw DimensionError("enumerate_partitions: |lambda| != |t|");
    }
    const int m = static_cast<int>(ts.size());
    std::vector<SubsetPartition> out;
    std::vector<bool> mask(2 * m, false);
    std::fill(mask.begin(), mask.begin() + m, true);
    do {
        SubsetPartition p;
        for (int i = 0; i < 2 * m; ++i) {
            const bool is_t = i >= m;
            const int local = is_t ? i - m : i;
            const cplx value = is_t ? ts[local] : lambdas[local];
            if (mask[i]) {
                p.chosen.push_back(i);
                p.mu.push_back(value);
                (is_t ? p.alpha_set : p.beta_set).push_back(local);
            } else {
                p.nu.push_back(value);
                (is_t ? p.k_set : p.n_set).push_back(local);
            }
        }
        std::vector<int> perm = p.k_set;
        perm.insert(perm.end(), p.alpha_set.begin(), p.alpha_set.end());
        p.sign_k = detail::permutation_sign(perm);
        perm = p.n_set;
        perm.insert(perm.end(), p.beta_set.begin(), p.beta_set.end());
        p.sign_n = detail::permutation_sign(perm);
        out.push_back(std::move(p));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

inline constexpr int kDefaultMaxSubsetM = 6;

inline void require_subset_cap(std::size_t m, int max_m) {
    if (static_cast<int>(m) > max_m) {
        throw DomainError("subset sum: M=" + std::to_string(m) +
                          " exceeds cap " + std::to_string(max_m));
    }
}

/// The C(2M, M) terms of the subset-sum formula, in partition order.
inline std::vector<cplx> scalar_product_sum_terms(const ScalarProductSpec &spec,
                                                  cplx eta,
                                                  int max_m = kDefaultMaxSubsetM) {
    spec.validate();
    require_subset_cap(spec.size(), max_m);
    const auto parts = enumerate_partitions(spec.lambdas, spec.ts);
    std::vector<cplx> a_l(spec.size());
    std::vector<cplx> a_t(spec.size());
    for (std::size_t j = 0; j < spec.size(); ++j) {
        a_l[j] = spec.a_lambda(j);
        a_t[j] = spec.a_t(j);
    }
    std::vector<cplx> terms;
    terms.reserve(parts.size());
    for (const auto &p : parts) {
        cplx term = 1.0;
        for (int n : p.n_set) {
            term *= a_l[n];
        }
        for (int k : p.k_set) {
            term *= a_t[k];
        }
        term *= phi_m(spec.ts, p.mu, eta) * phi_m(spec.lambdas, p.mu, eta);
        for (const cplx mu : p.mu) {
            for (const cplx nu : p.nu) {
                term /= rational_c(mu - nu, eta);
            }
        }
        terms.push_back(term);
    }
    return terms;
}

/**
 * S_M = sum_{mu, nu} prod_j a(nu_j) Phi_M(t, mu) Phi_M(lambda, mu)
 *       prod_{i,j} c(mu_i - nu_j)^{-1}.
 */
inline cplx scalar_product_sum(const ScalarProductSpec &spec, cplx eta,
                               int max_m = kDefaultMaxSubsetM) {
    if (spec.size() == 0) {
        spec.validate();
        return 1.0;
    }
    const auto terms = scalar_product_sum_terms(spec, eta, max_m);
    return detail::pairwise_sum(terms);
}

/**
 * Signed terms of the Bethe-root form of the subset sum, one per
 * SubsetPartition, each including the overall Vandermonde prefactor.
 * `ts` are taken to satisfy the Bethe equations: a(t_k) enters through
 * f(t_k) only, absorbed into the polynomial products.
 */
inline std::vector<cplx> scalar_product_bethe_sum_terms(
    std::span<const cplx> lambdas, std::span<const cplx> ts, cplx eta,
    const AFunction &a_function, int max_m = kDefaultMaxSubsetM) {
    if (lambdas.size() != ts.size()) {
        throw DimensionError("scalar_product_bethe_sum: |lambda| != |t|");
    }
    require_subset_cap(ts.size(), max_m);
    SpectralSet all(lambdas.begin(), lambdas.end());
    all.insert(all.end(), ts.begin(), ts.end());
    detail::require_distinct(all, "scalar_product_bethe_sum");
    const int big_m = static_cast<int>(ts.size());
    const cplx prefactor =
        1.0 / (vandermonde_upper(ts) * vandermonde_lower(lambdas));
    std::vector<cplx> a_l(lambdas.size());
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        a_l[j] = a_function(lambdas[j]);
    }

    std::vector<cplx> terms;
    for (const auto &p : enumerate_partitions(lambdas, ts)) {
        const int m = p.m();
        cplx term = prefactor * static_cast<double>(p.sign_k * p.sign_n) *
                    ((big_m * m) % 2 == 0 ? 1.0 : -1.0);
        for (int n : p.n_set) {
            term *= a_l[n];
        }
        for (const cplx t : ts) {
            for (int n : p.n_set) {
                term *= t - lambdas[n] + eta;
            }
            for (int b : p.beta_set) {
                term *= t - lambdas[b] - eta;
            }
        }
        const auto t_k = detail::pick<cplx>(ts, p.k_set);
        const auto t_a = detail::pick<cplx>(ts, p.alpha_set);
        const auto l_n = detail::pick<cplx>(lambdas, p.n_set);
        const auto l_b = detail::pick<cplx>(lambdas, p.beta_set);
        term *= kernel_determinant(l_b, t_k, eta) *
                kernel_determinant(t_a, l_n, eta);
        for (const cplx tk : t_k) {
            for (const cplx ta : t_a) {
                term *= tk - ta + eta;
            }
            for (const cplx ln : l_n) {
                detail::require_not_pole(tk - ln + eta, "bethe sum");
                term /= tk - ln + eta;
            }
        }
        for (const cplx lb : l_b) {
            for (const cplx ln : l_n) {
                term *= lb - ln + eta;
            }
            for (const cplx ta : t_a) {
                detail::require_not_pole(lb - ta + eta, "bethe sum");
                term /= lb - ta + eta;
            }
        }
        terms.push_back(term);
    }
    return terms;
}

inline cplx scalar_product_bethe_sum(std::span<const cplx> lambdas,
                                     std::span<const cplx> roots, cplx eta,
                                     const AFunction &a_function,
                                     int max_m = kDefaultMaxSubsetM) {
    const auto terms =
        scalar_product_bethe_sum_terms(lambdas, roots, eta, a_function, max_m);
    return detail::pairwise_sum(terms);
}

/// Slavnov matrix M_ij(t, lambda).
inline Matrix slavnov_matrix(std::span<const cplx> lambdas,
                             std::span<const cplx> roots, cplx eta,
                             const AFunction &a_function) {
    const std::size_t m = roots.size();
    std::vector<cplx> a_l(m);
    for (std::size_t j = 0; j < m; ++j) {
        a_l[j] = a_function(lambdas[j]);
    }
    return Matrix::generate(m, [&](std::size_t i, std::size_t j) {
        cplx plus = 1.0;
        cplx minus = 1.0;
        for (std::size_t a = 0; a < m; ++a) {
            if (a != i) {
                plus *= roots[a] - lambdas[j] + eta;
                minus *= roots[a] - lambdas[j] - eta;
            }
        }
        return eta / (roots[i] - lambdas[j]) * (a_l[j] * plus - minus);
    });
}

/// Roots are accepted down to this separation (collision threshold).
inline constexpr double kRootSeparation = 1e-6;
/// lambda-t distance accepted by the Slavnov formula; limit checks go lower.
inline constexpr double kLimitGuard = 1e-9;

/**
 * Magnitude S_M would have without cancellations: (max_ij m_ij)^M times the
 * Vandermonde prefactor, where m_ij adds the two terms of M_ij in absolute
 * value. Between two Bethe states both terms of every entry nearly cancel,
 * so this is the reference size for orthogonality.
 */
inline double slavnov_entry_scale(std::span<const cplx> lambdas,
                                  std::span<const cplx> roots, cplx eta,
                                  const AFunction &a_function) {
    const std::size_t m = roots.size();
    double biggest = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double a = std::abs(a_function(lambdas[j]));
        for (std::size_t i = 0; i < m; ++i) {
            double plus = 1.0;
            double minus = 1.0;
            for (std::size_t k = 0; k < m; ++k) {
                if (k != i) {
                    plus *= std::abs(roots[k] - lambdas[j] + eta);
                    minus *= std::abs(roots[k] - lambdas[j] - eta);
                }
            }
            biggest = std::max(biggest, std::abs(eta / (roots[i] - lambdas[j])) *
                                            (a * plus + minus));
        }
    }
    return std::pow(biggest, static_cast<double>(m)) /
           std::abs(vandermonde_upper(roots) * vandermonde_lower(lambdas));
}

/**
 * S_M = det M / (prod_{i<j}(t_i - t_j) prod_{j<i}(lambda_i - lambda_j)),
 * M_ij = eta/(t_i - lambda_j) (a(lambda_j) prod_{a!=i}(t_a - lambda_j + eta)
 *                              - prod_{a!=i}(t_a - lambda_j - eta)).
 */
inline DeterminantResult slavnov_determinant(std::span<const cplx> lambdas,
                                             std::span<const cplx> roots,
                                             cplx eta,
                                             const AFunction &a_function,
                                             double guard = kLimitGuard) {
    if (lambdas.size() != roots.size()) {
        throw DimensionError("slavnov_determinant: |lambda| != |t|");
    }
    detail::require_distinct(lambdas, "slavnov_determinant (lambda)", guard);
    detail::require_distinct(roots, "slavnov_determinant (t)", kRootSeparation);
    require_separated(lambdas, roots, "slavnov_determinant", guard);
    const Matrix mat = slavnov_matrix(lambdas, roots, eta, a_function);
    return determinant_with_hint(
        mat, 1.0 / (vandermonde_upper(roots) * vandermonde_lower(lambdas)));
}

inline DeterminantResult slavnov_determinant(std::span<const cplx> lambdas,
                                             const BetheRoots &roots,
                                             double guard = kLimitGuard) {
    if (roots.params.variant != Variant::rational) {
        throw DomainError("slavnov_determinant: rational chain only");
    }
    return slavnov_determinant(lambdas, roots.roots, roots.params.eta,
                               model_a_function(roots.params), guard);
}

/**
 * lambda -> t limit of the Slavnov determinant for the model's own a(t):
 *
 *   ||psi||^2 = prod_j Q_j det G / (prod_{i<j}(t_i - t_j) prod_{j<i}(t_i - t_j)),
 *   Q_j   = prod_{a!=j}(t_a - t_j - eta),
 *   G_ij  = 2 eta^2 / ((t_i - t_j)^2 - eta^2),                       i != j,
 *   G_ii  = -eta [ (log a)'(t_i) + sum_{a!=i} 2 eta / ((t_a - t_i)^2 - eta^2) ],
 *   (log a)'(t) = -sum_alpha eta / ((xi_alpha - t)(xi_alpha - t + eta)).
 *
 * Off-diagonal entries follow from substituting the Bethe equations into
 * M_ij at lambda_j = t_j; diagonal ones from l'Hopital on M_ii.
 */
inline DeterminantResult gaudin_norm(std::span<const cplx> roots,
                                     std::span<const cplx> xi, cplx eta) {
    const std::size_t m = roots.size();
    if (m == 0) {
        return {1.0, 0.0, 0};
    }
    detail::require_distinct(roots, "gaudin_norm", kRootSeparation);
    cplx q_prod = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t a = 0; a < m; ++a) {
            if (a != j) {
                q_prod *= roots[a] - roots[j] - eta;
            }
        }
    }
    const Matrix g = Matrix::generate(m, [&](std::size_t i, std::size_t j) {
        if (i != j) {
            const cplx u = roots[i] - roots[j];
            detail::require_not_pole(u * u - eta * eta, "gaudin_norm");
            return 2.0 * eta * eta / (u * u - eta * eta);
        }
        cplx dlog_a = 0.0;
        for (const cplx x : xi) {
            const cplx u = x - roots[i];
            detail::require_not_pole(u, "gaudin_norm");
            detail::require_not_pole(u + eta, "gaudin_norm");
            dlog_a -= eta / (u * (u + eta));
        }
        cplx s = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            if (a != i) {
                const cplx u = roots[a] - roots[i];
                s += 2.0 * eta / (u * u - eta * eta);
            }
        }
        return -eta * (dlog_a + s);
    });
    return determinant_with_hint(
        g, q_prod / (vandermonde_upper(roots) * vandermonde_lower(roots)));
}

inline DeterminantResult gaudin_norm(const BetheRoots &roots) {
    if (roots.params.variant != Variant::rational) {
        throw DomainError("gaudin_norm: rational chain only");
    }
    return gaudin_norm(roots.roots, roots.params.xi, roots.params.eta);
}

inline constexpr double kDefaultResidueDistance = 1e-4;

/**
 * Right side of the recursion at lambda_1 -> t_1:
 *
 *   eta (a(lambda_1) - f(t_1)) / (t_1 - lambda_1)
 *     prod_{a!=1} c(t_a - t_1)^{-1} c(lambda_a - t_1)^{-1}
 *     S_{M-1}({lambda}', {t}', a'),   a'(nu) = a(nu) c(nu - t_1) / c(t_1 - nu),
 *
 * with f(t_k) for the reduced set computed without t_1. S_{M-1} is evaluated
 * with the subset sum. `spec.ts` is ignored in favour of `roots`.
 */
inline cplx residue_recursion_rhs(const ScalarProductSpec &spec,
                                  std::span<const cplx> roots, cplx eta,
                                  double max_distance = kDefaultResidueDistance) {
    const std::size_t m = roots.size();
    if (m == 0 || spec.lambdas.size() != m) {
        throw DimensionError("residue_recursion_rhs: need |lambda| = |t| >= 1");
    }
    const cplx l1 = spec.lambdas[0];
    const cplx t1 = roots[0];
    if (std::abs(l1 - t1) > max_distance) {
        throw DomainError("residue_recursion_rhs: lambda_1 not near t_1");
    }
    const ModelParams rational{Variant::rational, eta, {}};
    const cplx f1 = bethe_f(rational, roots, 0);
    cplx rhs = eta * (spec.a_function(l1) - f1) / (t1 - l1);
    for (std::size_t a = 1; a < m; ++a) {
        rhs /= rational_c(roots[a] - t1, eta) *
               rational_c(spec.lambdas[a] - t1, eta);
    }
    if (m == 1) {
        return rhs;
    }
    ScalarProductSpec reduced;
    reduced.lambdas.assign(spec.lambdas.begin() + 1, spec.lambdas.end());
    reduced.ts.assign(roots.begin() + 1, roots.end());
    const AFunction a = spec.a_function;
    reduced.a_function = [a, t1, eta](cplx nu) {
        return a(nu) * rational_c(nu - t1, eta) / rational_c(t1 - nu, eta);
    };
    reduced.t_values = bethe_f_values(rational, reduced.ts);
    return rhs * scalar_product_sum(reduced, eta);
}

/// Laurent coefficients of g(d) ~ c_{-1}/d + c_0 + c_1 d.
struct SimplePoleFit {
    cplx residue;
    cplx constant;
    cplx slope;
};

/// Richardson-style fit of a simple pole from samples at three offsets.
template <typename F>
SimplePoleFit fit_simple_pole(F &&g,
                              std::array<double, 3> deltas = {1e-3, 1e-4, 1e-5}) {
    Matrix a(3);
    std::vector<cplx> rhs(3);
    for (std::size_t r = 0; r < 3; ++r) {
        const double d = deltas[r];
        // scaled by d so the system stays well conditioned
        a(r, 0) = 1.0;
        a(r, 1) = d;
        a(r, 2) = d * d;
        rhs[r] = d * g(d);
    }
    const auto x = LuDecomposition(a).solve(rhs);
    return {x[0], x[1], x[2]};
}

/// Column-reduction coefficients C_x (x = 1..M-1; entry 0 unused, zero).
inline std::vector<cplx>
column_reduction_coefficients(std::span<const cplx> lambdas,
                              std::span<const cplx> ts, cplx eta) {
    const std::size_t m = lambdas.size();
    std::vector<cplx> c(m, 0.0);
    for (std::size_t x = 1; x < m; ++x) {
        cplx v = -1.0;
        for (std::size_t b = 1; b < m; ++b) {
            if (b != x) {
                v *= (lambdas[0] - lambdas[b]) / (lambdas[x] - lambdas[b]);
            }
        }
        for (const cplx t : ts) {
            detail::require_not_pole(lambdas[0] - t - eta, "column reduction");
            v *= (lambdas[x] - t - eta) / (lambdas[0] - t - eta);
        }
        c[x] = v;
    }
    return c;
}

/// M_ij = 1 / ((t_i - lambda_j)(t_i - lambda_j + eta)).
inline Matrix column_reduction_matrix(std::span<const cplx> lambdas,
                                      std::span<const cplx> ts, cplx eta) {
    return Matrix::generate(ts.size(), [&](std::size_t i, std::size_t j) {
        const cplx u = ts[i] - lambdas[j];
        detail::require_not_pole(u, "column_reduction_matrix");
        detail::require_not_pole(u + eta, "column_reduction_matrix");
        return 1.0 / (u * (u + eta));
    });
}

/// M_{i1} + sum_{x != 1} C_x M_{ix}, summed directly.
inline cplx column_reduction_direct(std::size_t row,
                                    std::span<const cplx> lambdas,
                                    std::span<const cplx> ts, cplx eta) {
    const Matrix mat = column_reduction_matrix(lambdas, ts, eta);
    const auto c = column_reduction_coefficients(lambdas, ts, eta);
    cplx v = mat(row, 0);
    for (std::size_t x = 1; x < lambdas.size(); ++x) {
        v += c[x] * mat(row, x);
    }
    return v;
}

/**
 * Closed form of the reduced first-column entry (0-based `row`):
 *
 *   M'_{i1} = 1/((t_i - l_1)(t_i - l_1 + eta)) prod_{b!=1} (l_1 - l_b)/(t_i - l_b)
 *             prod_{a!=i} (t_a - t_i + eta)/(t_a - l_1 + eta).
 */
inline cplx column_reduction_entry(std::size_t row,
                                   std::span<const cplx> lambdas,
                                   std::span<const cplx> ts, cplx eta) {
    if (lambdas.size() != ts.size() || row >= ts.size()) {
        throw DimensionError("column_reduction_entry: bad sizes");
    }
    const cplx ti = ts[row];
    const cplx u = ti - lambdas[0];
    detail::require_not_pole(u, "column_reduction_entry");
    detail::require_not_pole(u + eta, "column_reduction_entry");
    cplx v = 1.0 / (u * (u + eta));
    for (std::size_t b = 1; b < lambdas.size(); ++b) {
        detail::require_not_pole(ti - lambdas[b], "column_reduction_entry");
        v *= (lambdas[0] - lambdas[b]) / (ti - lambdas[b]);
    }
    for (std::size_t a = 0; a < ts.size(); ++a) {
        if (a != row) {
            detail::require_not_pole(ts[a] - lambdas[0] + eta,
                                     "column_reduction_entry");
            v *= (ts[a] - ti + eta) / (ts[a] - lambdas[0] + eta);
        }
    }
    return v;
}

/**
 * Sum of all residues of
 *   g(z) = f(z) / ((z - l_1)(z - t_i) prod_{b!=1}(z - l_b)),
 *   f(z) = prod_{a!=i} (t_a - z + eta)/(t_a - l_1 + eta),
 * which vanishes because g(z) = O(1/z^2) at infinity.
 */
inline cplx column_reduction_residue_sum(std::size_t row,
                                         std::span<const cplx> lambdas,
                                         std::span<const cplx> ts, cplx eta) {
    const cplx l1 = lambdas[0];
    auto f = [&](cplx z) {
        cplx v = 1.0;
        for (std::size_t a = 0; a < ts.size(); ++a) {
            if (a != row) {
                v *= (ts[a] - z + eta) / (ts[a] - l1 + eta);
            }
        }
        return v;
    };
    // simple poles at l_1, t_i, and l_b (b != 1)
    std::vector<cplx> poles{l1, ts[row]};
    poles.insert(poles.end(), lambdas.begin() + 1, lambdas.end());
    cplx total = 0.0;
    for (std::size_t p = 0; p < poles.size(); ++p) {
        cplx den = 1.0;
        for (std::size_t q = 0; q < poles.size(); ++q) {
            if (q != p) {
                den *= poles[p] - poles[q];
            }
        }
        total += f(poles[p]) / den;
    }
    return total;
}

} // namespace bethe
