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

const ModelParams kXxx = homogeneous_model(2, 1.0);

StateVector ket(int n, std::initializer_list<int> occupied_sites) {
    return StateVector::basis(
        n, SpinBasisIndex::from_sites(std::vector<int>(occupied_sites)));
}

TEST(SpinBasisIndex, SiteKIsBitKMinusOne) {
    const int sites[] = {1, 3};
    const auto s = SpinBasisIndex::from_sites(sites);
    EXPECT_EQ(s.bits, 0b101u);
    EXPECT_TRUE(s.occupied(1));
    EXPECT_FALSE(s.occupied(2));
    EXPECT_EQ(s.particle_count(), 2);
    EXPECT_EQ(s.positions(), (std::vector<int>{1, 3}));
    EXPECT_EQ(SpinBasisIndex::packed_right(4, 2).bits, 0b1100u);
}

TEST(StateVector, LengthIsTwoToTheN) {
    EXPECT_EQ(StateVector(5).size(), 32u);
    EXPECT_EQ(StateVector::vacuum(3)[0], cplx{1.0});
    EXPECT_THROW(StateVector(31), DimensionError);
    EXPECT_THROW(StateVector(3) + StateVector(4), DimensionError);
}

TEST(TwoSiteS, VacuumUnchanged) {
    Rng rng(1);
    for (int k = 0; k < 10; ++k) {
        const auto t = sample_separated(rng, 2, 1.0);
        const StateVector v = StateVector::vacuum(2);
        EXPECT_EQ(apply_two_site_S(v, 1, 2, t[0], t[1], kXxx).amplitudes()[0],
                  cplx{1.0});
        EXPECT_LT(dist(apply_two_site_S(v, 1, 2, t[0], t[1], kXxx), v), 1e-15);
    }
}

TEST(TwoSiteS, EqualParametersPermute) {
    // site i down, site j up -> site i up, site j down
    const StateVector in = ket(2, {2});
    const StateVector out = apply_two_site_S(in, 1, 2, 0.7, 0.7, kXxx);
    EXPECT_LT(dist(out, ket(2, {1})), 1e-15);
}

TEST(TwoSiteS, RationalUnitDifference) {
    const StateVector out = apply_two_site_S(ket(2, {2}), 1, 2, 1.0, 0.0, kXxx);
    EXPECT_NEAR(std::abs(out[SpinBasisIndex{0b01}] - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[SpinBasisIndex{0b10}] - 0.5), 0.0, 1e-15);
}

TEST(TwoSiteS, RationalWeightsSumToOne) {
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const cplx t = sample_disk(rng);
        const auto w = s_weights(homogeneous_model(1, {0.3, 0.8}), t);
        EXPECT_LT(std::abs(w.b + w.c - 1.0), 1e-13);
    }
}

TEST(TwoSiteS, TensorOrderOfSites) {
    // S_{13} on three sites leaves site 2 alone and matches S_{12} relabelled
    const ModelParams p = homogeneous_model(3, 1.0);
    const StateVector v = apply_two_site_S(ket(3, {3}), 1, 3, 0.4, -0.2, p);
    const auto w = s_weights(p, 0.6);
    EXPECT_LT(std::abs(v[SpinBasisIndex{0b100}] - w.c), 1e-15);
    EXPECT_LT(std::abs(v[SpinBasisIndex{0b001}] - w.b), 1e-15);
    EXPECT_EQ(v[SpinBasisIndex{0b010}], cplx{});
}

TEST(TwoSiteS, Errors) {
    const StateVector v(3);
    const ModelParams p = homogeneous_model(3, 1.0);
    EXPECT_THROW(apply_two_site_S(v, 0, 1, 0.1, 0.2, p), DimensionError);
    EXPECT_THROW(apply_two_site_S(v, 1, 4, 0.1, 0.2, p), DimensionError);
    EXPECT_THROW(apply_two_site_S(v, 2, 2, 0.1, 0.2, p), DimensionError);
    // u + eta = 0
    EXPECT_THROW(apply_two_site_S(v, 1, 2, -1.0, 0.0, p), PoleError);
}

struct VariantCase {
    Variant variant;
    cplx eta;
};

class TwoSiteSProperties : public ::testing::TestWithParam<VariantCase> {};

TEST_P(TwoSiteSProperties, Unitarity) {
    const auto [variant, eta] = GetParam();
    const ModelParams p{variant, eta, SpectralSet(2, 0.0)};
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const auto t = sample_separated(rng, 2, eta, {}, 1.0, 1e-2);
        const StateVector v = random_state(rng, 2);
        StateVector w = apply_two_site_S(v, 1, 2, t[0], t[1], p);
        apply_two_site_S_inplace(w, 2, 1, t[1], t[0], p);
        EXPECT_LT(dist(w, v) / v.norm(), 1e-12);
    }
}

TEST_P(TwoSiteSProperties, YangBaxter) {
    const auto [variant, eta] = GetParam();
    const ModelParams p{variant, eta, SpectralSet(3, 0.0)};
    Rng rng(4);
    for (int k = 0; k < 100; ++k) {
        const auto t = sample_separated(rng, 3, eta, {}, 1.0, 1e-2);
        const StateVector v = random_state(rng, 3);
        StateVector lhs = v;
        apply_two_site_S_inplace(lhs, 2, 3, t[1], t[2], p);
        apply_two_site_S_inplace(lhs, 1, 3, t[0], t[2], p);
        apply_two_site_S_inplace(lhs, 1, 2, t[0], t[1], p);
        StateVector rhs = v;
        apply_two_site_S_inplace(rhs, 1, 2, t[0], t[1], p);
        apply_two_site_S_inplace(rhs, 1, 3, t[0], t[2], p);
        apply_two_site_S_inplace(rhs, 2, 3, t[1], t[2], p);
        EXPECT_LT(dist(lhs, rhs) / v.norm(), 1e-12);
    }
}

TEST_P(TwoSiteSProperties, ConservesParticleNumber) {
    const auto [variant, eta] = GetParam();
    const ModelParams p{variant, eta, SpectralSet(4, 0.0)};
    Rng rng(5);
    for (std::uint64_t s = 0; s < 16; ++s) {
        const int i = 1 + static_cast<int>(rng() % 4);
        const int j = 1 + static_cast<int>((i + rng() % 3) % 4);
        const auto out = apply_two_site_S(StateVector::basis(4, SpinBasisIndex{s}),
                                          i, j, sample_disk(rng), 0.0, p);
        for (std::uint64_t k = 0; k < out.size(); ++k) {
            if (out[k] != cplx{}) {
                EXPECT_EQ(std::popcount(k), std::popcount(s));
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(
    Variants, TwoSiteSProperties,
    ::testing::Values(VariantCase{Variant::rational, {1.0, 0.0}},
                      VariantCase{Variant::rational, {0.4, -0.7}},
                      VariantCase{Variant::trigonometric, {0.0, 0.5}},
                      VariantCase{Variant::trigonometric, {0.3, 0.9}}));

TEST(InnerProduct, Examples) {
    const StateVector vac = StateVector::vacuum(3);
    EXPECT_EQ(inner_product(vac, vac), cplx{1.0});
    EXPECT_EQ(inner_product(vac, ket(3, {1})), cplx{});
    const StateVector s = ket(3, {2});
    EXPECT_EQ(inner_product(2.0 * s, 3.0 * s), cplx{6.0});
    EXPECT_THROW(inner_product(vac, StateVector(2)), DimensionError);
}

TEST(InnerProduct, IsBilinearNotSesquilinear) {
    const StateVector s = ket(1, {});
    const cplx i{0.0, 1.0};
    EXPECT_EQ(inner_product(i * s, i * s), cplx{-1.0});
}

TEST(SpinFlip, RaiseAndLower) {
    EXPECT_LT(dist(apply_spin_flip(ket(2, {}), 1, Flip::raise), ket(2, {1})),
              1e-15);
    EXPECT_EQ(apply_spin_flip(ket(2, {1}), 1, Flip::raise).norm(), 0.0);
    EXPECT_LT(dist(apply_spin_flip(ket(2, {1}), 1, Flip::lower), ket(2, {})),
              1e-15);
    EXPECT_EQ(apply_spin_flip(ket(2, {}), 2, Flip::lower).norm(), 0.0);
    EXPECT_THROW(apply_spin_flip(ket(2, {}), 3, Flip::raise), DimensionError);
}

TEST(SpinFlip, NumberProjector) {
    const cplx alpha{0.3, 0.1};
    const cplx beta{-1.2, 0.5};
    const StateVector v = alpha * ket(2, {2}) + beta * ket(2, {1});
    EXPECT_LT(dist(project_occupation(v, 2, true), alpha * ket(2, {2})), 1e-15);
    EXPECT_LT(dist(project_occupation(v, 2, false), beta * ket(2, {1})), 1e-15);
}

TEST(Materialize, OnlySmallChains) {
    const auto cols = materialize_columns(3, [](const StateVector &v) { return v; });
    ASSERT_EQ(cols.size(), 8u);
    EXPECT_EQ(cols[5][5], cplx{1.0});
    EXPECT_THROW(materialize_columns(9, [](const StateVector &v) { return v; }),
                 DimensionError);
}

} // namespace
} // namespace bethe
