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
 * Ground truth by direct operator application: B/C strings, brute-force
 * scalar products, and a Newton solver for the Bethe equations.
 */
#pragma once

#include "lattice.hpp"
#include "linalg.hpp"

#include <functional>
#include <optional>
#include <random>

namespace bethe {

/// Vacuum-eigenvalue-like function a(lambda) used by the closed forms.
using AFunction = std::function<cplx(cplx)>;

inline AFunction model_a_function(const ModelParams &params) {
    return [params](cplx t) { return vacuum_eigenvalue(params, t); };
}

/// B(t_1) B(t_2) ... B(t_M) state; B(t_M) acts first.
inline StateVector apply_b_string(const ModelParams &params,
                                  std::span<const cplx> ts, StateVector state) {
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        state = apply_B(params, *it, state);
    }
    return state;
}

inline StateVector apply_c_string(const ModelParams &params,
                                  std::span<const cplx> ls, StateVector state) {
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        state = apply_C(params, *it, state);
    }
    return state;
}

/// Bethe-type state B(t_1)...B(t_M)|0>.
inline StateVector bethe_vector(const ModelParams &params,
                                std::span<const cplx> ts) {
    return apply_b_string(params, ts, StateVector::vacuum(params.n_sites()));
}

/// The dual <0| C(l_1) ... C(l_M) as a ket (bilinear pairing convention).
inline StateVector dual_bethe_vector(const ModelParams &params,
                                     std::span<const cplx> ls) {
    StateVector v = StateVector::vacuum(params.n_sites());
    for (const cplx l : ls) {
        v = monodromy_apply_transpose(params, {EntryLabel::C, l}, v);
    }
    return v;
}

inline void require_separated(std::span<const cplx> a, std::span<const cplx> b,
                              const char *what, double guard = kPoleGuard) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (a.data() == b.data() && j <= i) {
                continue;
            }
            if (std::abs(a[i] - b[j]) < guard) {
                throw PoleError(std::string(what) +
                                ": parameters closer than the separation guard");
            }
        }
    }
}

/**
 * Inputs of S_M({lambda}, {t}) = <0| C(lambda_1..M) B(t_1..M) |0>.
 *
 * `a_function` feeds the closed forms only; the brute force always uses the
 * model's own a(t). When `t_values` is set it replaces a(t_k) for the t-side
 * parameters (f-substitution at Bethe roots).
 */
struct ScalarProductSpec {
    SpectralSet lambdas;
    SpectralSet ts;
    AFunction a_function;
    std::optional<SpectralSet> t_values;

    [[nodiscard]] std::size_t size() const { return ts.size(); }

    void validate() const {
        if (lambdas.size() != ts.size()) {
            throw DimensionError("ScalarProductSpec: |lambda| != |t|");
        }
        if (t_values && t_values->size() != ts.size()) {
            throw DimensionError("ScalarProductSpec: |t_values| != |t|");
        }
        SpectralSet all = lambdas;
        all.insert(all.end(), ts.begin(), ts.end());
        require_separated(all, all, "ScalarProductSpec");
    }

    [[nodiscard]] cplx a_lambda(std::size_t j) const {
        return a_function(lambdas[j]);
    }
    [[nodiscard]] cplx a_t(std::size_t k) const {
        return t_values ? (*t_values)[k] : a_function(ts[k]);
    }
};

/// Default chain-length limit for the dense oracle.
inline constexpr int kBruteForceSiteCap = 14;

/// Brute-force <0| C(l_1)...C(l_M) B(t_1)...B(t_K) |0>.
inline cplx brute_force_scalar_product(const ModelParams &params,
                                       std::span<const cplx> lambdas,
                                       std::span<const cplx> ts,
                                       int max_sites = kBruteForceSiteCap) {
    if (params.n_sites() > max_sites) {
        throw DomainError("brute force: N = " + std::to_string(params.n_sites()) +
                          " exceeds the site cap " + std::to_string(max_sites));
    }
    StateVector v = bethe_vector(params, ts);
    v = apply_c_string(params, lambdas, std::move(v));
    return v[0];
}

inline cplx brute_force_scalar_product(const ModelParams &params,
                                       const ScalarProductSpec &spec) {
    spec.validate();
    return brute_force_scalar_product(params, spec.lambdas, spec.ts);
}

/// f(t_i) = prod_{a != i} c(t_a - t_i) / c(t_i - t_a).
inline cplx bethe_f(const ModelParams &params, std::span<const cplx> ts,
                    std::size_t i) {
    cplx f = 1.0;
    for (std::size_t a = 0; a < ts.size(); ++a) {
        if (a == i) {
            continue;
        }
        f *= weight(params, WeightKind::c, ts[a] - ts[i]) /
             weight(params, WeightKind::c, ts[i] - ts[a]);
    }
    return f;
}

inline SpectralSet bethe_f_values(const ModelParams &params,
                                  std::span<const cplx> ts) {
    SpectralSet out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out[i] = bethe_f(params, ts, i);
    }
    return out;
}

/// max_i |a(t_i) - f(t_i)|, the product-form Bethe-equation defect.
inline double bae_residual(const ModelParams &params,
                           std::span<const cplx> ts) {
    double r = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        r = std::max(r, std::abs(vacuum_eigenvalue(params, ts[i]) -
                                 bethe_f(params, ts, i)));
    }
    return r;
}

/// Solution of the Bethe equations for a given model.
struct BetheRoots {
    SpectralSet roots;
    double residual = 0.0;
    ModelParams params;

    [[nodiscard]] std::size_t size() const { return roots.size(); }
    [[nodiscard]] SpectralSet f_values() const {
        return bethe_f_values(params, roots);
    }
};

/// ||(A+D)(t) psi - Lambda(t) psi|| / ||psi|| with psi the Bethe vector.
inline double check_eigenstate(const ModelParams &params,
                               std::span<const cplx> roots, cplx t_probe) {
    const StateVector psi = bethe_vector(params, roots);
    const double nrm = psi.norm();
    if (!(nrm > 1e-300)) {
        throw DomainError("check_eigenstate: Bethe vector vanishes");
    }
    const cplx lambda = transfer_eigenvalue(params, t_probe, roots);
    StateVector diff = apply_transfer(params, t_probe, psi);
    diff -= lambda * psi;
    return diff.norm() / nrm;
}

inline double check_eigenstate(const BetheRoots &roots, cplx t_probe) {
    return check_eigenstate(roots.params, roots.roots, t_probe);
}

struct BaeOptions {
    int max_iter = 100;
    double tol = 1e-10;
    /// Newton starts before giving up.
    int starts = 200;
    std::uint64_t seed = 0;
    /// Roots closer than this are rejected as collided.
    double collision = 1e-6;
    /// Reject solutions whose Bethe vector vanishes or is not an eigenvector.
    bool require_bethe_vector = true;
    double eigen_defect_tol = 1e-7;
    /// Explicit first-start seeds (length M); otherwise the default strategy.
    std::optional<SpectralSet> seeds;
    /// Abandon a start whose iterate leaves this radius.
    double escape_radius = 50.0;
};

namespace detail {

/// d/dx prod_k v_k(x) given values and derivatives of the factors.
inline cplx product_derivative(std::span<const cplx> values,
                               std::span<const cplx> derivs) {
    cplx total = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (derivs[k] == cplx{}) {
            continue;
        }
        cplx term = derivs[k];
        for (std::size_t l = 0; l < values.size(); ++l) {
            if (l != k) {
                term *= values[l];
            }
        }
        total += term;
    }
    return total;
}

inline cplx product(std::span<const cplx> values) {
    cplx p = 1.0;
    for (const cplx v : values) {
        p *= v;
    }
    return p;
}

/**
 * Denominator-free Bethe equations
 *   P_i = prod phi(xi - t_i) prod_{b!=i} phi(t_b - t_i + eta)
 *       - prod phi(xi - t_i + eta) prod_{b!=i} phi(t_b - t_i - eta)
 * and their analytic Jacobian.
 */
inline void cleared_bae(const ModelParams &p, std::span<const cplx> ts,
                        std::vector<cplx> &value, Matrix &jac) {
    const std::size_t m = ts.size();
    const std::size_t n = p.xi.size();
    value.assign(m, 0.0);
    jac = Matrix(m);
    std::vector<cplx> uv(n + m - 1);
    std::vector<cplx> ud(n + m - 1);
    std::vector<cplx> vv(n + m - 1);
    std::vector<cplx> vd(n + m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a < n; ++a) {
            uv[a] = p.phi(p.xi[a] - ts[i]);
            vv[a] = p.phi(p.xi[a] - ts[i] + p.eta);
        }
        std::vector<std::size_t> others;
        for (std::size_t b = 0; b < m; ++b) {
            if (b != i) {
                others.push_back(b);
            }
        }
        for (std::size_t k = 0; k < others.size(); ++k) {
            uv[n + k] = p.phi(ts[others[k]] - ts[i] + p.eta);
            vv[n + k] = p.phi(ts[others[k]] - ts[i] - p.eta);
        }
        value[i] = product(uv) - product(vv);

        // d/dt_i: every factor depends on t_i with inner derivative -1.
        for (std::size_t a = 0; a < n; ++a) {
            ud[a] = -p.phi_prime(p.xi[a] - ts[i]);
            vd[a] = -p.phi_prime(p.xi[a] - ts[i] + p.eta);
        }
        for (std::size_t k = 0; k < others.size(); ++k) {
            ud[n + k] = -p.phi_prime(ts[others[k]] - ts[i] + p.eta);
            vd[n + k] = -p.phi_prime(ts[others[k]] - ts[i] - p.eta);
        }
        jac(i, i) = product_derivative(uv, ud) - product_derivative(vv, vd);

        // d/dt_j, j != i: only the factor carrying t_j.
        for (std::size_t k = 0; k < others.size(); ++k) {
            std::fill(ud.begin(), ud.end(), cplx{});
            std::fill(vd.begin(), vd.end(), cplx{});
            ud[n + k] = p.phi_prime(ts[others[k]] - ts[i] + p.eta);
            vd[n + k] = p.phi_prime(ts[others[k]] - ts[i] - p.eta);
            jac(i, others[k]) =
                product_derivative(uv, ud) - product_derivative(vv, vd);
        }
    }
}

inline bool all_finite(std::span<const cplx> v) {
    for (const cplx x : v) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            return false;
        }
    }
    return true;
}

inline double min_separation(std::span<const cplx> ts) {
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            s = std::min(s, std::abs(ts[i] - ts[j]));
        }
    }
    return s;
}

/// Newton from one start; returns the product-form residual reached.
inline double newton_polish(const ModelParams &p, SpectralSet &ts,
                            const BaeOptions &opt) {
    std::vector<cplx> value;
    Matrix jac;
    double residual = std::numeric_limits<double>::infinity();
    int converged_steps = 0;
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        cleared_bae(p, ts, value, jac);
        if (!all_finite(value)) {
            return residual;
        }
        const LuDecomposition lu(jac);
        if (lu.singular()) {
            return residual;
        }
        std::vector<cplx> rhs(value.size());
        for (std::size_t i = 0; i < value.size(); ++i) {
            rhs[i] = -value[i];
        }
        std::vector<cplx> step = lu.solve(rhs);
        double step_max = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            step_max = std::max(step_max, std::abs(step[i]));
            scale = std::max(scale, std::abs(ts[i]));
        }
        if (!std::isfinite(step_max)) {
            return residual;
        }
        // damped step: never move a root by more than 1 per iteration
        const double damp = step_max > 1.0 ? 1.0 / step_max : 1.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            ts[i] += damp * step[i];
            if (std::abs(ts[i]) > opt.escape_radius) {
                return residual;
            }
        }
        try {
            residual = bae_residual(p, ts);
        } catch (const PoleError &) {
            residual = std::numeric_limits<double>::infinity();
        }
        if (!std::isfinite(residual)) {
            residual = std::numeric_limits<double>::infinity();
        }
        if (step_max < 1e-14 * scale || residual < 1e-3 * opt.tol) {
            // two extra polishing steps past the stopping point
            if (++converged_steps > 2) {
                break;
            }
        }
    }
    return residual;
}

} // namespace detail

/// Default seeds: xi-centroid + eta (k - (M+1)/2), k = 1..M.
inline SpectralSet default_bae_seeds(const ModelParams &params, int m) {
    cplx centroid = 0.0;
    for (const cplx x : params.xi) {
        centroid += x;
    }
    centroid /= static_cast<double>(params.n_sites());
    SpectralSet seeds(m);
    for (int k = 1; k <= m; ++k) {
        seeds[k - 1] = centroid + params.eta * (k - (m + 1) / 2.0);
    }
    return seeds;
}

/**
 * Multi-start Newton on the Bethe equations for M magnons.
 *
 * The first start uses `opt.seeds` (or the default seeds with a small jitter);
 * later starts widen the jitter. All randomness comes from `opt.seed`.
 */
inline BetheRoots solve_bae(const ModelParams &params, int m,
                            const BaeOptions &opt = {}) {
    params.validate();
    if (m < 0 || m > params.n_sites()) {
        throw DomainError("solve_bae: need 0 <= M <= N");
    }
    if (opt.seeds && static_cast<int>(opt.seeds->size()) != m) {
        throw DimensionError("solve_bae: seed count != M");
    }
    if (m == 0) {
        return BetheRoots{{}, 0.0, params};
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const SpectralSet base =
        opt.seeds ? *opt.seeds : default_bae_seeds(params, m);

    std::string last_failure = "no start converged";
    for (int start = 0; start < opt.starts; ++start) {
        SpectralSet ts = base;
        if (!(start == 0 && opt.seeds)) {
            const double radius = start < 8 ? 0.05 : 2.0;
            for (auto &t : ts) {
                double x = 0.0;
                double y = 0.0;
                do {
                    x = unit(rng);
                    y = unit(rng);
                } while (x * x + y * y > 1.0);
                t += radius * cplx{x, y};
            }
        }
        const double residual = detail::newton_polish(params, ts, opt);
        if (!(residual <= opt.tol)) {
            last_failure = "residual above tolerance";
            continue;
        }
        if (detail::min_separation(ts) < opt.collision) {
            last_failure = "root collision";
            continue;
        }
        if (opt.require_bethe_vector) {
            try {
                const StateVector psi = bethe_vector(params, ts);
                if (psi.norm() < 1e-8 || !psi.is_finite()) {
                    last_failure = "vanishing Bethe vector";
                    continue;
                }
                // probes well away from the roots and from a(t)'s poles
                bool ok = true;
                int probes = 0;
                for (int k = 0; k < 16 && probes < 2; ++k) {
                    const cplx probe = default_bae_seeds(params, 1)[0] +
                                       cplx{0.731 + 0.37 * k, -0.419 + 0.23 * k};
                    try {
                        if (check_eigenstate(params, ts, probe) >
                            opt.eigen_defect_tol) {
                            ok = false;
                        }
                        ++probes;
                    } catch (const PoleError &) {
                    }
                    if (!ok) {
                        break;
                    }
                }
                if (!ok || probes == 0) {
                    last_failure = "Bethe vector is not a transfer eigenvector";
                    continue;
                }
            } catch (const PoleError &) {
                last_failure = "pole crossing";
                continue;
            }
        }
        return BetheRoots{std::move(ts), residual, params};
    }
    throw ConvergenceError("solve_bae: N=" + std::to_string(params.n_sites()) +
                           " M=" + std::to_string(m) + ": " + last_failure);
}

} // namespace bethe
