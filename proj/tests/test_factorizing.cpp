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
#include "support.hpp"

namespace bethe {
namespace {

using test::dist;
using test::rel_err;

SpectralSet xi_at(const ModelParams &p, SpinBasisIndex s) {
    SpectralSet x;
    for (int site : s.positions()) {
        x.push_back(p.site_xi(site));
    }
    return x;
}

TEST(TChain, LastSiteIsIdentity) {
    Rng rng(51);
    const ModelParams p = random_model(rng, 5, 1.0);
    EXPECT_TRUE(build_t_chain(p, 5).is_identity());
    EXPECT_EQ(build_t_chain(p, 2).partners().size(), 3u);
    const StateVector v = random_state(rng, 5);
    EXPECT_EQ(dist(build_t_chain(p, 5).apply(v), v), 0.0);
    EXPECT_THROW(build_t_chain(p, 6), DimensionError);
}

TEST(TChain, StringStateIsAEigenstate) {
    Rng rng(52);
    const ModelParams p = random_model(rng, 5, {0.9, 0.2});
    const int sites[] = {2, 3, 5};
    const SpinBasisIndex occ = SpinBasisIndex::from_sites(sites);
    StateVector phi = StateVector::basis(5, occ);
    for (auto it = std::rbegin(sites); it != std::rend(sites); ++it) {
        phi = build_t_chain(p, *it).apply(phi);
    }
    // T-chain state coincides with the B-string at the inhomogeneities
    EXPECT_LT(test::rel_dist(phi, bethe_vector(p, xi_at(p, occ))), 1e-11);
    for (int k = 0; k < 3; ++k) {
        const cplx t = sample_separated(rng, 1, p.eta, p.xi)[0];
        cplx eig = 1.0;
        for (int a : {1, 4}) {
            eig *= weight(p, WeightKind::c, p.site_xi(a) - t);
        }
        EXPECT_LT(test::rel_dist(apply_A(p, t, phi), eig * phi), 1e-11);
    }
}

TEST(TChain, CreationAtInhomogeneityFactorizes) {
    Rng rng(53);
    const ModelParams p = random_model(rng, 6, {0.5, -0.4});
    for (int n = 1; n <= 6; ++n) {
        const StateVector v = random_state(rng, 6);
        const StateVector lhs = apply_B(p, p.site_xi(n), v);
        const StateVector rhs = build_t_chain(p, n).apply(projected_creation(p, n, v));
        EXPECT_LT(dist(lhs, rhs) / v.norm(), 1e-11);
    }
}

TEST(TChain, InterchangeLeavesStateUnchanged) {
    // T_{n_i} T_{n_j} |..> with n_i, n_j swapped and dressed by S_{n_j n_i}
    Rng rng(54);
    const ModelParams p = random_model(rng, 5, 1.0);
    const int sites[] = {1, 3, 4};
    const SpinBasisIndex occ = SpinBasisIndex::from_sites(sites);
    const StateVector phi = bethe_vector(p, xi_at(p, occ));
    const std::vector<int> swapped{1, 2, 4, 3, 5};
    const FactorizingOperator o_sigma(p, swapped);
    StateVector alt = o_sigma.apply(StateVector::basis(5, occ));
    apply_two_site_S_inplace(alt, 4, 3, p.site_xi(4), p.site_xi(3), p);
    EXPECT_LT(test::rel_dist(alt, phi), 1e-11);
}

TEST(FactorizingOperator, FixesVacuumAndPackedRight) {
    Rng rng(55);
    const ModelParams p = random_model(rng, 5, 1.0);
    const FactorizingOperator o(p);
    for (int n = 0; n <= 5; ++n) {
        const StateVector s = StateVector::basis(5, SpinBasisIndex::packed_right(5, n));
        EXPECT_LT(dist(o.apply(s), s), 1e-14);
    }
}

TEST(FactorizingOperator, MatrixElementsAreBStrings) {
    Rng rng(56);
    const ModelParams p = random_model(rng, 4, {0.3, 0.8});
    const FactorizingOperator o(p);
    for (std::uint64_t n = 0; n < 16; ++n) {
        const SpinBasisIndex occ{n};
        const StateVector col = o.apply(StateVector::basis(4, occ));
        const StateVector b = bethe_vector(p, xi_at(p, occ));
        for (std::uint64_t m = 0; m < 16; ++m) {
            EXPECT_LT(std::abs(col[m] - b[m]), 1e-11 * std::max(1.0, std::abs(b[m])));
        }
    }
}

TEST(FactorizingOperator, Triangular) {
    Rng rng(57);
    const ModelParams p = random_model(rng, 6, 1.0);
    const FactorizingOperator o(p);
    const auto cols = materialize_columns(6, [&](const StateVector &v) { return o.apply(v); });
    for (std::uint64_t n = 0; n < cols.size(); ++n) {
        for (std::uint64_t m = 0; m < cols.size(); ++m) {
            if (!dominates(SpinBasisIndex{m}, SpinBasisIndex{n})) {
                EXPECT_EQ(cols[n][m], cplx{}) << m << " <- " << n;
            }
        }
        EXPECT_GT(std::abs(cols[n][n]), 1e-12);
    }
}

TEST(FactorizingOperator, DualTimesOIsDiagonalF) {
    Rng rng(58);
    const ModelParams p = random_model(rng, 4, 1.0);
    const FactorizingOperator o(p);
    for (std::uint64_t n = 0; n < 16; ++n) {
        const StateVector basis = StateVector::basis(4, SpinBasisIndex{n});
        const StateVector oo = o.apply_tilde(o.apply(basis));
        const cplx f = diagonal_f(p, SpinBasisIndex{n});
        EXPECT_LT(dist(oo, f * basis), 1e-11 * std::max(1.0, std::abs(f)));
    }
}

TEST(FactorizingOperator, DualRowsAreCStrings) {
    Rng rng(59);
    const ModelParams p = random_model(rng, 4, 1.0);
    const FactorizingOperator o(p);
    const StateVector v = random_state(rng, 4);
    const StateVector ov = o.apply_tilde(v);
    for (std::uint64_t m = 0; m < 16; ++m) {
        const auto x = xi_at(p, SpinBasisIndex{m});
        const cplx direct = apply_c_string(p, x, v)[0];
        EXPECT_LT(std::abs(ov[m] - direct), 1e-13 * std::max(1.0, std::abs(direct)));
    }
}

TEST(FactorizingOperator, InverseComposes) {
    Rng rng(60);
    const ModelParams p = random_model(rng, 6, {0.7, 0.1});
    const FactorizingOperator o(p);
    const StateVector v = random_state(rng, 6);
    EXPECT_LT(dist(o.apply_inverse(o.apply(v)), v) / v.norm(), 1e-10);
    EXPECT_LT(dist(apply_factorizing(p, apply_factorizing(p, v, FactorizingKind::O),
                                     FactorizingKind::O_inverse),
                   v) / v.norm(),
              1e-10);
}

TEST(FactorizingOperator, ConjugatedAIsDiagonal) {
    Rng rng(61);
    const ModelParams p = random_model(rng, 5, 1.0);
    const FactorizingOperator o(p);
    const cplx t = sample_separated(rng, 1, p.eta, p.xi)[0];
    for (std::uint64_t n = 0; n < 32; ++n) {
        const SpinBasisIndex occ{n};
        const StateVector basis = StateVector::basis(5, occ);
        cplx eig = 1.0;
        for (int a = 1; a <= 5; ++a) {
            if (!occ.occupied(a)) {
                eig *= weight(p, WeightKind::c, p.site_xi(a) - t);
            }
        }
        const StateVector af = o.apply_inverse(apply_A(p, t, o.apply(basis)));
        EXPECT_LT(dist(af, eig * basis), 1e-10 * std::max(1.0, std::abs(eig)));
    }
}

TEST(DiagonalF, EmptyAndFull) {
    Rng rng(62);
    const ModelParams p = random_model(rng, 4, 1.0);
    EXPECT_EQ(diagonal_f(p, SpinBasisIndex{0}), cplx{1.0});
    EXPECT_EQ(diagonal_f(p, SpinBasisIndex{0b1111}), cplx{1.0});
}

TEST(DiagonalF, RequiresDistinctXi) {
    const ModelParams p = homogeneous_model(3, 1.0);
    EXPECT_THROW(diagonal_f(p, SpinBasisIndex{1}), DomainError);
    const FactorizingOperator o(p); // O itself is fine
    EXPECT_THROW(o.apply_inverse(StateVector::vacuum(3)), DomainError);
    EXPECT_THROW(f_basis_operator(p, EntryLabel::B, 0.3), DomainError);
}

TEST(FBasis, ConjugatedCreationAndAnnihilation) {
    Rng rng(63);
    const ModelParams p = random_model(rng, 5, {0.8, -0.3});
    const FactorizingOperator o(p);
    for (int k = 0; k < 20; ++k) {
        const cplx t = sample_separated(rng, 1, p.eta, p.xi)[0];
        const StateVector v = random_state(rng, 5);
        const StateVector ov = o.apply(v);
        const StateVector b = o.apply_inverse(apply_B(p, t, ov));
        const StateVector c = o.apply_inverse(apply_C(p, t, ov));
        EXPECT_LT(test::rel_dist(b, f_basis_operator(p, EntryLabel::B, t).apply(v)),
                  1e-10);
        EXPECT_LT(test::rel_dist(c, f_basis_operator(p, EntryLabel::C, t).apply(v)),
                  1e-10);
    }
}

TEST(FBasis, TrigonometricChain) {
    Rng rng(64);
    const ModelParams p = random_model(rng, 4, {0.1, 0.6}, Variant::trigonometric, 1.0);
    const FactorizingOperator o(p);
    const cplx t = sample_separated(rng, 1, p.eta, p.xi)[0];
    const StateVector v = random_state(rng, 4);
    const StateVector b = o.apply_inverse(apply_B(p, t, o.apply(v)));
    EXPECT_LT(test::rel_dist(b, f_basis_operator(p, EntryLabel::B, t).apply(v)), 1e-10);
}

TEST(FBasis, CreationStringIsBasisVector) {
    Rng rng(65);
    const ModelParams p = random_model(rng, 4, 1.0);
    for (std::uint64_t n = 0; n < 16; ++n) {
        StateVector v = StateVector::vacuum(4);
        for (int site : SpinBasisIndex{n}.positions()) {
            v = f_basis_operator(p, EntryLabel::B, p.site_xi(site)).apply(v);
        }
        EXPECT_LT(dist(v, StateVector::basis(4, SpinBasisIndex{n})), 1e-11);
    }
}

TEST(FBasis, CreationOnFullStateVanishes) {
    Rng rng(66);
    const ModelParams p = random_model(rng, 4, 1.0);
    const StateVector full = StateVector::basis(4, SpinBasisIndex{0b1111});
    EXPECT_EQ(f_basis_operator(p, EntryLabel::B, {0.2, 0.1}).apply(full).norm(), 0.0);
    EXPECT_THROW(f_basis_operator(p, EntryLabel::A, 0.2), DomainError);
}

TEST(Factorization, EveryAdjacentTransposition) {
    Rng rng(67);
    for (int n : {4, 5, 6}) {
        const ModelParams p = random_model(rng, n, {0.6, 0.4});
        for (int i = 1; i < n; ++i) {
            EXPECT_LT(check_factorization(p, i, 3, rng()), 1e-11) << n << ":" << i;
        }
    }
}

TEST(Factorization, EqualNeighbouringInhomogeneities) {
    ModelParams p{Variant::rational, 1.0, {0.3, -0.2, -0.2, 0.9}};
    EXPECT_LT(check_factorization(p, 2), 1e-11);
}

TEST(Factorization, ThreeCycle) {
    Rng rng(68);
    const ModelParams p = random_model(rng, 4, 1.0);
    const int cycle[] = {1, 2};
    EXPECT_LT(check_factorization_sequence(p, cycle, 3, 7), 1e-11);
    const int longer[] = {3, 1, 2, 3};
    EXPECT_LT(check_factorization_sequence(p, longer, 3, 8), 1e-11);
}

TEST(Factorization, Errors) {
    Rng rng(69);
    const ModelParams p = random_model(rng, 4, 1.0);
    EXPECT_THROW(check_factorization(p, 0), DimensionError);
    EXPECT_THROW(check_factorization(p, 4), DimensionError);
    EXPECT_THROW(FactorizingOperator(p, {1, 2, 2, 4}), DomainError);
}

TEST(Dominance, Examples) {
    EXPECT_TRUE(dominates(SpinBasisIndex{0b1100}, SpinBasisIndex{0b0011}));
    EXPECT_TRUE(dominates(SpinBasisIndex{0b1010}, SpinBasisIndex{0b0101}));
    EXPECT_FALSE(dominates(SpinBasisIndex{0b0011}, SpinBasisIndex{0b0100}));
    EXPECT_FALSE(dominates(SpinBasisIndex{0b1001}, SpinBasisIndex{0b0110}));
}

} // namespace
} // namespace bethe
