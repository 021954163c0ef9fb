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
 * Dense state vectors over the 2^N spin-1/2 basis and matrix-free two-site
 * S-matrix application.
 *
 * Basis convention: site k (1-based) is bit k-1 of the basis index, and a set
 * bit means spin up ("1"). The pseudovacuum |0...0> is index 0.
 */
#pragma once

#include "common.hpp"

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace bethe {

/// Basis state label; bit k-1 set <=> site k carries spin up.
struct SpinBasisIndex {
    std::uint64_t bits = 0;

    static constexpr std::uint64_t site_mask(int site) {
        return std::uint64_t{1} << (site - 1);
    }

    [[nodiscard]] constexpr bool occupied(int site) const {
        return (bits & site_mask(site)) != 0;
    }
    [[nodiscard]] constexpr int particle_count() const {
        return std::popcount(bits);
    }

    /// Occupied sites in increasing order.
    [[nodiscard]] std::vector<int> positions() const {
        std::vector<int> out;
        for (std::uint64_t b = bits; b != 0; b &= b - 1) {
            out.push_back(std::countr_zero(b) + 1);
        }
        return out;
    }

    static SpinBasisIndex from_sites(std::span<const int> sites) {
        SpinBasisIndex s;
        for (int k : sites) {
            s.bits |= site_mask(k);
        }
        return s;
    }

    /// |{0..0}_{N-n}{1..1}_n>: the last n sites occupied.
    static SpinBasisIndex packed_right(int n_sites, int n) {
        SpinBasisIndex s;
        for (int k = n_sites - n + 1; k <= n_sites; ++k) {
            s.bits |= site_mask(k);
        }
        return s;
    }

    friend constexpr bool operator==(SpinBasisIndex, SpinBasisIndex) = default;
};

class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(int n_sites)
        : n_sites_(checked_sites(n_sites)), amp_(std::size_t{1} << n_sites) {}

    static StateVector basis(int n_sites, SpinBasisIndex s) {
        StateVector v(n_sites);
        v.amp_.at(s.bits) = 1.0;
        return v;
    }
    static StateVector vacuum(int n_sites) { return basis(n_sites, {}); }

    [[nodiscard]] int n_sites() const { return n_sites_; }
    [[nodiscard]] std::size_t size() const { return amp_.size(); }

    cplx &operator[](std::size_t i) { return amp_[i]; }
    const cplx &operator[](std::size_t i) const { return amp_[i]; }
    cplx &operator[](SpinBasisIndex s) { return amp_[s.bits]; }
    const cplx &operator[](SpinBasisIndex s) const { return amp_[s.bits]; }

    [[nodiscard]] std::span<cplx> amplitudes() { return amp_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amp_; }

    StateVector &operator+=(const StateVector &o) {
        require_same(o);
        for (std::size_t i = 0; i < amp_.size(); ++i) {
            amp_[i] += o.amp_[i];
        }
        return *this;
    }
    StateVector &operator-=(const StateVector &o) {
        require_same(o);
        for (std::size_t i = 0; i < amp_.size(); ++i) {
            amp_[i] -= o.amp_[i];
        }
        return *this;
    }
    StateVector &operator*=(cplx s) {
        for (auto &a : amp_) {
            a *= s;
        }
        return *this;
    }
    friend StateVector operator+(StateVector a, const StateVector &b) {
        return a += b;
    }
    friend StateVector operator-(StateVector a, const StateVector &b) {
        return a -= b;
    }
    friend StateVector operator*(cplx s, StateVector a) { return a *= s; }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amp_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }
    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (const auto &a : amp_) {
            m = std::max(m, std::abs(a));
        }
        return m;
    }
    [[nodiscard]] bool is_finite() const {
        for (const auto &a : amp_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                return false;
            }
        }
        return true;
    }

    void require_same(const StateVector &o) const {
        if (o.n_sites_ != n_sites_) {
            throw DimensionError("StateVector: dimension mismatch");
        }
    }

  private:
    static int checked_sites(int n) {
        if (n < 0 || n > 30) {
            throw DimensionError("StateVector: site count out of range");
        }
        return n;
    }

    int n_sites_ = 0;
    std::vector<cplx> amp_{cplx{}};
};

inline void require_site(int n_sites, int site) {
    if (site < 1 || site > n_sites) {
        throw DimensionError("site " + std::to_string(site) +
                             " outside 1.." + std::to_string(n_sites));
    }
}

/// Normalised S-matrix weights (a = 1).
struct SWeights {
    cplx b;
    cplx c;
};

/// b(u) = phi(eta)/phi(u+eta), c(u) = phi(u)/phi(u+eta).
inline SWeights s_weights(const ModelParams &params, cplx u) {
    const cplx den = params.phi(u + params.eta);
    if (std::abs(den) < kPoleGuard) {
        throw PoleError("S-matrix weight: |phi(u + eta)| below pole guard");
    }
    return {params.phi(params.eta) / den, params.phi(u) / den};
}

/// Two-site S with precomputed weights, in place; sites i != j.
inline void apply_s_weights(std::span<cplx> amp, int i, int j, SWeights w) {
    const std::uint64_t bi = SpinBasisIndex::site_mask(i);
    const std::uint64_t bj = SpinBasisIndex::site_mask(j);
    const std::uint64_t size = amp.size();
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        if ((idx & bi) != 0 && (idx & bj) == 0) {
            const std::uint64_t other = idx ^ bi ^ bj;
            const cplx x = amp[idx];
            const cplx y = amp[other];
            amp[idx] = w.c * x + w.b * y;
            amp[other] = w.b * x + w.c * y;
        }
    }
}

/// S_{ij}(t1, t2) applied in place: the 4x4 block with u = t1 - t2.
inline void apply_two_site_S_inplace(StateVector &state, int i, int j, cplx t1,
                                     cplx t2, const ModelParams &params) {
    require_site(state.n_sites(), i);
    require_site(state.n_sites(), j);
    if (i == j) {
        throw DimensionError("apply_two_site_S: sites must differ");
    }
    apply_s_weights(state.amplitudes(), i, j, s_weights(params, t1 - t2));
}

inline StateVector apply_two_site_S(StateVector state, int i, int j, cplx t1,
                                    cplx t2, const ModelParams &params) {
    apply_two_site_S_inplace(state, i, j, t1, t2, params);
    return state;
}

/// Bilinear pairing sum_k bra_k * ket_k, no conjugation.
inline cplx inner_product(const StateVector &bra, const StateVector &ket) {
    bra.require_same(ket);
    cplx s = 0.0;
    for (std::size_t k = 0; k < bra.size(); ++k) {
        s += bra[k] * ket[k];
    }
    return s;
}

enum class Flip { raise, lower };

/// sigma_x^+ (raise) or sigma_x^- (lower) at a single site.
inline StateVector apply_spin_flip(const StateVector &state, int x,
                                   Flip direction) {
    require_site(state.n_sites(), x);
    const std::uint64_t b = SpinBasisIndex::site_mask(x);
    StateVector out(state.n_sites());
    for (std::uint64_t idx = 0; idx < state.size(); ++idx) {
        const bool up = (idx & b) != 0;
        if (direction == Flip::raise && !up) {
            out[idx | b] = state[idx];
        } else if (direction == Flip::lower && up) {
            out[idx & ~b] = state[idx];
        }
    }
    return out;
}

/// n_x (occupied = true) or 1 - n_x (occupied = false).
inline StateVector project_occupation(const StateVector &state, int x,
                                      bool occupied = true) {
    require_site(state.n_sites(), x);
    const std::uint64_t b = SpinBasisIndex::site_mask(x);
    StateVector out(state.n_sites());
    for (std::uint64_t idx = 0; idx < state.size(); ++idx) {
        if (((idx & b) != 0) == occupied) {
            out[idx] = state[idx];
        }
    }
    return out;
}

/// Dense matrix of a linear map on the 2^N space (column k = image of |k>).
template <typename Op>
std::vector<StateVector> materialize_columns(int n_sites, Op &&op) {
    if (n_sites > 8) {
        throw DimensionError("dense materialization limited to N <= 8");
    }
    std::vector<StateVector> cols;
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    cols.reserve(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
        cols.push_back(op(StateVector::basis(n_sites, SpinBasisIndex{k})));
    }
    return cols;
}

} // namespace bethe
