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
 * The factorizing operator O = F_1 F_2 ... F_N with F_i = (1 - n_i) + T_i n_i,
 * T_n = S_{n+1,n} S_{n+2,n} ... S_{N,n}, its dual O~ built from C-strings
 * at the inhomogeneities, the inverse O^{-1} = f^{-1} O~, and the
 * quasilocal B and C operators of the F-basis.
 *
 * O is never materialised: each F_i is applied as a projector split followed
 * by a chain of two-site S-matrices.
 */
#pragma once

#include "oracle.hpp"
#include "sampling.hpp"

#include <algorithm>

namespace bethe {

/// Componentwise dominance of sorted occupied positions (m >= n).
inline bool dominates(SpinBasisIndex m, SpinBasisIndex n) {
    if (m.particle_count() != n.particle_count()) {
        return false;
    }
    const auto pm = m.positions();
    const auto pn = n.positions();
    for (std::size_t k = 0; k < pm.size(); ++k) {
        if (pm[k] < pn[k]) {
            return false;
        }
    }
    return true;
}

inline std::vector<int> identity_order(int n_sites) {
    return site_range(1, n_sites);
}

/// T_n: S-matrices of site n with every site after it in `order`.
class SiteOperatorChain {
  public:
    SiteOperatorChain(const ModelParams &params, int site,
                      std::span<const int> order)
        : site_(site) {
        require_site(params.n_sites(), site);
        const auto pos = std::find(order.begin(), order.end(), site);
        if (pos == order.end()) {
            throw DomainError("SiteOperatorChain: site missing from order");
        }
        for (auto it = pos + 1; it != order.end(); ++it) {
            partners_.push_back(*it);
            weights_.push_back(
                s_weights(params, params.site_xi(*it) - params.site_xi(site)));
        }
    }

    [[nodiscard]] int site() const { return site_; }
    [[nodiscard]] std::span<const int> partners() const { return partners_; }
    [[nodiscard]] bool is_identity() const { return partners_.empty(); }

    /// Rightmost factor S_{last,n} acts first.
    void apply_inplace(StateVector &v) const {
        for (std::size_t k = partners_.size(); k-- > 0;) {
            apply_s_weights(v.amplitudes(), partners_[k], site_, weights_[k]);
        }
    }
    [[nodiscard]] StateVector apply(StateVector v) const {
        apply_inplace(v);
        return v;
    }

  private:
    int site_;
    std::vector<int> partners_;
    std::vector<SWeights> weights_;
};

inline SiteOperatorChain build_t_chain(const ModelParams &params, int n) {
    const auto order = identity_order(params.n_sites());
    return SiteOperatorChain(params, n, order);
}

/// <0_aux| S_{10} ... S_{n-1,0} P_{n0} |1_aux> at t = xi_n.
inline StateVector projected_creation(const ModelParams &params, int n,
                                      const StateVector &v) {
    require_site(params.n_sites(), n);
    const auto sites = site_range(n, 1);
    return thread_auxiliary(params, v, params.site_xi(n), AuxSpin::up,
                            AuxSpin::down, sites);
}

/// f(n_1..n_M) = prod_k prod_{alpha unoccupied} c(xi_alpha - xi_{n_k}).
inline cplx diagonal_f(const ModelParams &params, SpinBasisIndex occupation) {
    params.require_distinct_xi();
    cplx f = 1.0;
    for (int k = 1; k <= params.n_sites(); ++k) {
        if (!occupation.occupied(k)) {
            continue;
        }
        for (int a = 1; a <= params.n_sites(); ++a) {
            if (!occupation.occupied(a)) {
                f *= weight(params, WeightKind::c,
                            params.site_xi(a) - params.site_xi(k));
            }
        }
    }
    return f;
}

enum class FactorizingKind { O, O_tilde, O_inverse };

class FactorizingOperator {
  public:
    explicit FactorizingOperator(ModelParams params)
        : FactorizingOperator(params, identity_order(params.n_sites())) {}

    /// O built on the site sequence `order`; sites keep their own xi.
    FactorizingOperator(ModelParams params, std::vector<int> order)
        : params_(std::move(params)), order_(std::move(order)) {
        params_.validate();
        auto sorted = order_;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity_order(params_.n_sites())) {
            throw DomainError("FactorizingOperator: order is not a permutation");
        }
        chains_.reserve(order_.size());
        for (int site : order_) {
            chains_.emplace_back(params_, site, order_);
        }
        if (params_.xi_distinct()) {
            const std::uint64_t dim = std::uint64_t{1} << params_.n_sites();
            f_.resize(dim);
            for (std::uint64_t s = 0; s < dim; ++s) {
                f_[s] = diagonal_f(params_, SpinBasisIndex{s});
            }
        }
    }

    [[nodiscard]] const ModelParams &params() const { return params_; }
    [[nodiscard]] std::span<const int> site_order() const { return order_; }
    [[nodiscard]] const SiteOperatorChain &chain(int position) const {
        return chains_.at(position);
    }

    /// O v = F_{o_1} ... F_{o_N} v, F_{o_N} first.
    [[nodiscard]] StateVector apply(const StateVector &v) const {
        v.require_same(StateVector(params_.n_sites()));
        StateVector out = v;
        for (std::size_t k = chains_.size(); k-- > 0;) {
            const int site = order_[k];
            StateVector occupied = project_occupation(out, site, true);
            out -= occupied;
            chains_[k].apply_inplace(occupied);
            out += occupied;
        }
        return out;
    }

    /// (O~ v)_m = <0| C(xi_{m_1}) ... C(xi_{m_M}) |v>.
    [[nodiscard]] StateVector apply_tilde(const StateVector &v) const {
        require_identity_order();
        v.require_same(StateVector(params_.n_sites()));
        StateVector out(params_.n_sites());
        // A C-string of length |m| only sees components with |m| particles.
        std::vector<bool> sector(params_.n_sites() + 1, false);
        for (std::uint64_t k = 0; k < v.size(); ++k) {
            if (v[k] != cplx{}) {
                sector[SpinBasisIndex{k}.particle_count()] = true;
            }
        }
        SpectralSet ls;
        for (std::uint64_t m = 0; m < out.size(); ++m) {
            if (!sector[SpinBasisIndex{m}.particle_count()]) {
                continue;
            }
            ls.clear();
            for (int site : SpinBasisIndex{m}.positions()) {
                ls.push_back(params_.site_xi(site));
            }
            out[m] = inner_product(dual_bethe_vector(params_, ls), v);
        }
        return out;
    }

    [[nodiscard]] StateVector apply_inverse(const StateVector &v) const {
        StateVector out = apply_tilde(v);
        for (std::uint64_t m = 0; m < out.size(); ++m) {
            out[m] /= f_[m];
        }
        return out;
    }

    [[nodiscard]] StateVector apply(FactorizingKind which,
                                    const StateVector &v) const {
        switch (which) {
        case FactorizingKind::O:
            return apply(v);
        case FactorizingKind::O_tilde:
            return apply_tilde(v);
        case FactorizingKind::O_inverse:
            return apply_inverse(v);
        }
        throw DomainError("FactorizingOperator: unknown kind");
    }

    [[nodiscard]] cplx diagonal(SpinBasisIndex s) const {
        if (f_.empty()) {
            params_.require_distinct_xi();
        }
        return f_.at(s.bits);
    }

  private:
    void require_identity_order() const {
        if (order_ != identity_order(params_.n_sites())) {
            throw DomainError("O~ and O^{-1} are defined for the natural order");
        }
        if (f_.empty()) {
            params_.require_distinct_xi();
        }
    }

    ModelParams params_;
    std::vector<int> order_;
    std::vector<SiteOperatorChain> chains_;
    std::vector<cplx> f_;
};

inline StateVector apply_factorizing(const ModelParams &params,
                                     const StateVector &state,
                                     FactorizingKind which) {
    return FactorizingOperator(params).apply(which, state);
}

/// B^F(t) or C^F(t): single spin flips with occupation-dependent amplitudes.
class QuasilocalOperator {
  public:
    QuasilocalOperator(const ModelParams &params, EntryLabel kind, cplx t)
        : kind_(kind), n_(params.n_sites()) {
        if (kind != EntryLabel::B && kind != EntryLabel::C) {
            throw DomainError("QuasilocalOperator: only B and C are quasilocal");
        }
        params.require_distinct_xi();
        b_.resize(n_);
        c_t_.resize(n_);
        c_xi_.resize(static_cast<std::size_t>(n_) * n_);
        for (int a = 1; a <= n_; ++a) {
            b_[a - 1] = weight(params, WeightKind::b, params.site_xi(a) - t);
            c_t_[a - 1] = weight(params, WeightKind::c, params.site_xi(a) - t);
            for (int x = 1; x <= n_; ++x) {
                c_xi_[(a - 1) * n_ + (x - 1)] =
                    weight(params, WeightKind::c,
                           params.site_xi(a) - params.site_xi(x));
            }
        }
    }

    [[nodiscard]] StateVector apply(const StateVector &v) const {
        if (v.n_sites() != n_) {
            throw DimensionError("QuasilocalOperator: dimension mismatch");
        }
        StateVector out(n_);
        for (std::uint64_t idx = 0; idx < v.size(); ++idx) {
            if (v[idx] == cplx{}) {
                continue;
            }
            const SpinBasisIndex s{idx};
            for (int x = 1; x <= n_; ++x) {
                const bool up = s.occupied(x);
                if ((kind_ == EntryLabel::B) == up) {
                    continue;
                }
                cplx w = b_[x - 1];
                for (int a = 1; a <= n_; ++a) {
                    if (a == x) {
                        continue;
                    }
                    if (kind_ == EntryLabel::B) {
                        if (!s.occupied(a)) {
                            w *= c_t_[a - 1] / c_xi(a, x);
                        }
                    } else {
                        w *= s.occupied(a) ? 1.0 / c_xi(x, a) : c_t_[a - 1];
                    }
                }
                out[idx ^ SpinBasisIndex::site_mask(x)] += w * v[idx];
            }
        }
        return out;
    }

  private:
    /// c(xi_a - xi_x)
    [[nodiscard]] cplx c_xi(int a, int x) const {
        return c_xi_[(a - 1) * n_ + (x - 1)];
    }

    EntryLabel kind_;
    int n_;
    std::vector<cplx> b_;
    std::vector<cplx> c_t_;
    std::vector<cplx> c_xi_;
};

inline QuasilocalOperator f_basis_operator(const ModelParams &params,
                                           EntryLabel kind, cplx t) {
    return QuasilocalOperator(params, kind, t);
}

/**
 * R^sigma for a sequence of adjacent transpositions applied to the natural
 * order: O = R^sigma O_sigma. `positions` are 1-based slots k swapping
 * order[k-1] and order[k]. Returns the final order; `factors` receives the
 * S_{a,b}(xi_a, xi_b) site pairs left to right.
 */
inline std::vector<int>
transposition_factors(const ModelParams &params, std::span<const int> positions,
                      std::vector<std::pair<int, int>> &factors) {
    auto order = identity_order(params.n_sites());
    factors.clear();
    for (int k : positions) {
        if (k < 1 || k >= params.n_sites()) {
            throw DimensionError("transposition slot out of range");
        }
        factors.emplace_back(order[k], order[k - 1]);
        std::swap(order[k - 1], order[k]);
    }
    return order;
}

/// max over random states of ||O v - R^sigma O_sigma v|| / ||v||.
inline double check_factorization_sequence(const ModelParams &params,
                                           std::span<const int> positions,
                                           int n_states = 3,
                                           std::uint64_t seed = 0) {
    std::vector<std::pair<int, int>> factors;
    const auto order = transposition_factors(params, positions, factors);
    const FactorizingOperator o(params);
    const FactorizingOperator o_sigma(params, order);
    Rng rng(seed);
    double defect = 0.0;
    for (int s = 0; s < n_states; ++s) {
        const StateVector v = random_state(rng, params.n_sites());
        StateVector rhs = o_sigma.apply(v);
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            apply_two_site_S_inplace(rhs, it->first, it->second,
                                     params.site_xi(it->first),
                                     params.site_xi(it->second), params);
        }
        defect = std::max(defect, (o.apply(v) - rhs).norm() / v.norm());
    }
    return defect;
}

/// O = S_{i+1,i}(xi_{i+1}, xi_i) O^{(i,i+1)}.
inline double check_factorization(const ModelParams &params, int i,
                                  int n_states = 3, std::uint64_t seed = 0) {
    if (i < 1 || i >= params.n_sites()) {
        throw DimensionError("check_factorization: need 1 <= i < N");
    }
    const int slot[] = {i};
    return check_factorization_sequence(params, slot, n_states, seed);
}

} // namespace bethe
