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
 * Six-vertex weights and the inhomogeneous monodromy matrix
 *
 *     T_0(t) = S_{10}(xi_1, t) S_{20}(xi_2, t) ... S_{N0}(xi_N, t),
 *
 * whose auxiliary-space entries <beta|T_0|alpha> are A, B (alpha = up,
 * beta = up/down) and C, D (alpha = down). Entries are applied matrix-free by
 * threading a two-component auxiliary spin through the chain, O(N 2^N).
 */
#pragma once

#include "state.hpp"

#include <numeric>

namespace bethe {

enum class WeightKind { b, c };

/// b(t) = phi(eta)/phi(t+eta), c(t) = phi(t)/phi(t+eta).
inline cplx weight(const ModelParams &params, WeightKind kind, cplx t) {
    const SWeights w = s_weights(params, t);
    return kind == WeightKind::b ? w.b : w.c;
}

enum class AuxSpin { up, down };

enum class EntryLabel { A, B, C, D };

struct MonodromyEntry {
    EntryLabel label;
    cplx spectral_parameter;
};

inline AuxSpin entry_aux_in(EntryLabel l) {
    return (l == EntryLabel::A || l == EntryLabel::B) ? AuxSpin::up
                                                      : AuxSpin::down;
}
inline AuxSpin entry_aux_out(EntryLabel l) {
    return (l == EntryLabel::A || l == EntryLabel::C) ? AuxSpin::up
                                                      : AuxSpin::down;
}

/**
 * <aux_out| S_{s_m 0} ... S_{s_1 0} |aux_in> applied to `state`, where
 * `sites = {s_1, ..., s_m}` lists the factors in order of application and
 * S_{k0} carries the parameter xi_k - t.
 */
inline StateVector thread_auxiliary(const ModelParams &params,
                                    const StateVector &state, cplx t,
                                    AuxSpin aux_in, AuxSpin aux_out,
                                    std::span<const int> sites) {
    const int n = params.n_sites();
    if (state.n_sites() != n) {
        throw DimensionError("monodromy: state dimension does not match N");
    }
    StateVector up(n);
    StateVector down(n);
    (aux_in == AuxSpin::up ? up : down) = state;
    auto u = up.amplitudes();
    auto d = down.amplitudes();
    const std::uint64_t size = state.size();
    for (int k : sites) {
        require_site(n, k);
        const SWeights w = s_weights(params, params.site_xi(k) - t);
        const std::uint64_t bk = SpinBasisIndex::site_mask(k);
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            if ((idx & bk) != 0) {
                continue;
            }
            // (site down, aux up) <-> (site up, aux down)
            const cplx x = u[idx];
            const cplx y = d[idx | bk];
            u[idx] = w.c * x + w.b * y;
            d[idx | bk] = w.b * x + w.c * y;
        }
    }
    return aux_out == AuxSpin::up ? up : down;
}

inline std::vector<int> site_range(int first, int last) {
    std::vector<int> s;
    if (first <= last) {
        s.resize(last - first + 1);
        std::iota(s.begin(), s.end(), first);
    } else {
        for (int k = first; k >= last; --k) {
            s.push_back(k);
        }
    }
    return s;
}

/// entry(t) * state, factors as printed (S_{N0} acts first).
inline StateVector monodromy_apply(const ModelParams &params,
                                   MonodromyEntry entry,
                                   const StateVector &state) {
    const auto sites = site_range(params.n_sites(), 1);
    return thread_auxiliary(params, state, entry.spectral_parameter,
                            entry_aux_in(entry.label),
                            entry_aux_out(entry.label), sites);
}

/// entry(t)^T * state. Each S is a symmetric matrix, so T^T reverses order.
inline StateVector monodromy_apply_transpose(const ModelParams &params,
                                             MonodromyEntry entry,
                                             const StateVector &state) {
    const auto sites = site_range(1, params.n_sites());
    return thread_auxiliary(params, state, entry.spectral_parameter,
                            entry_aux_out(entry.label),
                            entry_aux_in(entry.label), sites);
}

inline StateVector apply_A(const ModelParams &p, cplx t, const StateVector &v) {
    return monodromy_apply(p, {EntryLabel::A, t}, v);
}
inline StateVector apply_B(const ModelParams &p, cplx t, const StateVector &v) {
    return monodromy_apply(p, {EntryLabel::B, t}, v);
}
inline StateVector apply_C(const ModelParams &p, cplx t, const StateVector &v) {
    return monodromy_apply(p, {EntryLabel::C, t}, v);
}
inline StateVector apply_D(const ModelParams &p, cplx t, const StateVector &v) {
    return monodromy_apply(p, {EntryLabel::D, t}, v);
}

/// Z(t) = A(t) + D(t).
inline StateVector apply_transfer(const ModelParams &p, cplx t,
                                  const StateVector &v) {
    return apply_A(p, t, v) + apply_D(p, t, v);
}

/// a(t) = prod_alpha c(xi_alpha - t).
inline cplx vacuum_eigenvalue(const ModelParams &params, cplx t) {
    // Same multiplication order as the auxiliary sweep (site N first).
    cplx a = 1.0;
    for (auto it = params.xi.rbegin(); it != params.xi.rend(); ++it) {
        a *= weight(params, WeightKind::c, *it - t);
    }
    return a;
}

/// Lambda(t) = a(t) prod c^{-1}(t_a - t) + prod c^{-1}(t - t_a).
inline cplx transfer_eigenvalue(const ModelParams &params, cplx t,
                                std::span<const cplx> roots,
                                double guard = kPoleGuard) {
    cplx first = vacuum_eigenvalue(params, t);
    cplx second = 1.0;
    for (const cplx r : roots) {
        const cplx c1 = weight(params, WeightKind::c, r - t);
        const cplx c2 = weight(params, WeightKind::c, t - r);
        if (std::abs(c1) < guard || std::abs(c2) < guard) {
            throw PoleError("transfer_eigenvalue: t too close to a root");
        }
        first /= c1;
        second /= c2;
    }
    return first + second;
}

/**
 * T_0(t) on a chain extended by auxiliary sites: `state` lives on
 * N + extra sites, the quantum sites are 1..N and `aux` is one of the extra
 * sites. Factors S_{k,aux}(xi_k, t) are applied k = N first.
 */
inline void apply_monodromy_extended(const ModelParams &params,
                                     StateVector &state, int aux, cplx t) {
    for (int k = params.n_sites(); k >= 1; --k) {
        apply_two_site_S_inplace(state, k, aux, params.site_xi(k), t, params);
    }
}

/**
 * ||S_{00'}(q, t) T_0(t) T_0'(q) v - T_0'(q) T_0(t) S_{00'}(q, t) v|| / ||v||
 * for v on the quantum chain times two auxiliary spins (sites N+1 = 0,
 * N+2 = 0'). The intertwiner is the S-matrix itself at q - t (S is symmetric
 * in its two sites, so the site order of the intertwiner is immaterial).
 */
inline double rtt_defect(const ModelParams &params, cplx t, cplx q,
                         const StateVector &v) {
    const int n = params.n_sites();
    const int a0 = n + 1;
    const int a1 = n + 2;
    if (v.n_sites() != n + 2) {
        throw DimensionError("rtt_defect: state must carry two auxiliary sites");
    }
    StateVector lhs = v;
    apply_monodromy_extended(params, lhs, a1, q);
    apply_monodromy_extended(params, lhs, a0, t);
    apply_two_site_S_inplace(lhs, a0, a1, q, t, params);
    StateVector rhs = v;
    apply_two_site_S_inplace(rhs, a0, a1, q, t, params);
    apply_monodromy_extended(params, rhs, a0, t);
    apply_monodromy_extended(params, rhs, a1, q);
    return (lhs - rhs).norm() / v.norm();
}

/// Defect of A(t)B(q) = c(q-t)^{-1} B(q)A(t) - b(q-t)/c(q-t) B(t)A(q).
inline double ab_commutation_defect(const ModelParams &p, cplx t, cplx q,
                                    const StateVector &v) {
    const cplx c = weight(p, WeightKind::c, q - t);
    const cplx b = weight(p, WeightKind::b, q - t);
    if (std::abs(c) < kPoleGuard) {
        throw PoleError("ab_commutation_defect: c(q - t) too small");
    }
    const StateVector lhs = apply_A(p, t, apply_B(p, q, v));
    const StateVector rhs = (1.0 / c) * apply_B(p, q, apply_A(p, t, v)) -
                            (b / c) * apply_B(p, t, apply_A(p, q, v));
    return (lhs - rhs).norm() / std::max(lhs.norm(), v.norm());
}

/// ||[X(t), X(q)] v|| / ||v|| for X = B or C.
inline double same_entry_commutator_defect(const ModelParams &p,
                                           EntryLabel label, cplx t, cplx q,
                                           const StateVector &v) {
    const MonodromyEntry et{label, t};
    const MonodromyEntry eq{label, q};
    const StateVector tq = monodromy_apply(p, et, monodromy_apply(p, eq, v));
    const StateVector qt = monodromy_apply(p, eq, monodromy_apply(p, et, v));
    return (tq - qt).norm() / v.norm();
}

} // namespace bethe
