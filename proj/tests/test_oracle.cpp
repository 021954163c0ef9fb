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

#include <algorithm>

namespace bethe {
namespace {

using test::dist;
using test::rel_err;

TEST(BString, EmptyStringIsIdentity) {
    Rng rng(31);
    const ModelParams p = random_model(rng, 4, 1.0);
    const StateVector v = random_state(rng, 4);
    EXPECT_EQ(dist(apply_b_string(p, {}, v), v), 0.0);
}

TEST(BString, OrderIndependent) {
    Rng rng(32);
    const ModelParams p = random_model(rng, 6, {0.7, 0.2});
    for (int k = 0; k < 5; ++k) {
        SpectralSet ts = sample_separated(rng, 3, p.eta, p.xi);
        const StateVector a = bethe_vector(p, ts);
        std::reverse(ts.begin(), ts.end());
        std::swap(ts[0], ts[1]);
        EXPECT_LT(test::rel_dist(bethe_vector(p, ts), a), 1e-11);
    }
}

TEST(BruteForce, NoMagnons) {
    Rng rng(33);
    const ModelParams p = random_model(rng, 3, 1.0);
    EXPECT_EQ(brute_force_scalar_product(p, {}, {}), cplx{1.0});
}

TEST(BruteForce, SiteCap) {
    const ModelParams p = homogeneous_model(kBruteForceSiteCap + 1);
    const SpectralSet none;
    EXPECT_THROW(brute_force_scalar_product(p, none, none), DomainError);
    EXPECT_EQ(brute_force_scalar_product(p, none, none, kBruteForceSiteCap + 1),
              cplx{1.0});
}

TEST(BruteForce, SingleSite) {
    Rng rng(34);
    const ModelParams p = random_model(rng, 1, {0.6, -0.3});
    const auto lt = sample_separated(rng, 2, p.eta, p.xi);
    const cplx expect = weight(p, WeightKind::b, p.xi[0] - lt[0]) *
                        weight(p, WeightKind::b, p.xi[0] - lt[1]);
    EXPECT_LT(rel_err(brute_force_scalar_product(p, {&lt[0], 1}, {&lt[1], 1}),
                      expect),
              1e-14);
}

TEST(BruteForce, AtInhomogeneitiesGivesDiagonalF) {
    Rng rng(35);
    const ModelParams p = random_model(rng, 5, 1.0);
    for (std::uint64_t s = 0; s < 32; ++s) {
        const SpinBasisIndex occ{s};
        SpectralSet x;
        for (int site : occ.positions()) {
            x.push_back(p.site_xi(site));
        }
        EXPECT_LT(rel_err(brute_force_scalar_product(p, x, x), diagonal_f(p, occ)),
                  1e-11);
    }
}

TEST(BruteForce, SymmetricWithinEachSet) {
    Rng rng(36);
    const ModelParams p = random_model(rng, 6, 1.0);
    SpectralSet l = sample_separated(rng, 3, p.eta, p.xi);
    SpectralSet t = sample_separated(rng, 3, p.eta, l);
    const cplx base = brute_force_scalar_product(p, l, t);
    std::rotate(l.begin(), l.begin() + 1, l.end());
    std::swap(t[0], t[2]);
    EXPECT_LT(rel_err(brute_force_scalar_product(p, l, t), base), 1e-11);
}

TEST(BruteForce, DifferentLengthsVanishExactly) {
    Rng rng(37);
    const ModelParams p = random_model(rng, 5, 1.0);
    const auto l = sample_separated(rng, 2, p.eta, p.xi);
    const auto t = sample_separated(rng, 3, p.eta, l);
    EXPECT_EQ(brute_force_scalar_product(p, l, t), cplx{});
    EXPECT_EQ(brute_force_scalar_product(p, t, l), cplx{});
}

TEST(ScalarProductSpec, Validation) {
    ScalarProductSpec spec{{0.1, 0.2}, {0.5}, [](cplx) { return cplx{1.0}; }, {}};
    EXPECT_THROW(spec.validate(), DimensionError);
    spec.ts = {0.5, 0.1 + 1e-5};
    EXPECT_THROW(spec.validate(), PoleError);
    spec.ts = {0.5, 0.9};
    spec.t_values = SpectralSet{1.0};
    EXPECT_THROW(spec.validate(), DimensionError);
}

TEST(SolveBae, HomogeneousTwoSites) {
    // ((-t)/(1-t))^2 = 1  =>  t = 1/2
    const ModelParams p = homogeneous_model(2, 1.0);
    const BetheRoots r = solve_bae(p, 1);
    ASSERT_EQ(r.roots.size(), 1u);
    EXPECT_LT(std::abs(r.roots[0] - 0.5), 1e-10);
    EXPECT_LT(check_eigenstate(r, {0.3, 0.7}), 1e-8);
}

TEST(SolveBae, NoMagnons) {
    const BetheRoots r = solve_bae(homogeneous_model(3, 1.0), 0);
    EXPECT_TRUE(r.roots.empty());
    EXPECT_EQ(r.residual, 0.0);
}

TEST(SolveBae, RootsAreEigenstates) {
    Rng rng(38);
    for (const auto &[n, m] : {std::pair{4, 1}, {4, 2}, {6, 2}, {6, 3}, {7, 2}}) {
        const BetheRoots r = test::physical_roots(rng, n, m);
        EXPECT_LT(r.residual, 1e-10);
        EXPECT_LT(bae_residual(r.params, r.roots), 1e-10);
        for (int k = 0; k < 5; ++k) {
            SpectralSet avoid = r.roots;
            avoid.insert(avoid.end(), r.params.xi.begin(), r.params.xi.end());
            const cplx probe = sample_separated(rng, 1, r.params.eta, avoid)[0];
            EXPECT_LT(check_eigenstate(r, probe), 1e-7) << n << "," << m;
        }
    }
}

TEST(SolveBae, TrigonometricChain) {
    Rng rng(39);
    const ModelParams p = random_model(rng, 5, {0.1, 0.7}, Variant::trigonometric, 0.5);
    BaeOptions opt;
    opt.seed = 5;
    const BetheRoots r = solve_bae(p, 2, opt);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_LT(check_eigenstate(r, {0.21, -0.13}), 1e-7);
}

TEST(SolveBae, ExplicitSeedsAreUsed) {
    const ModelParams p = homogeneous_model(2, 1.0);
    BaeOptions opt;
    opt.seeds = SpectralSet{0.45};
    EXPECT_LT(std::abs(solve_bae(p, 1, opt).roots[0] - 0.5), 1e-10);
    opt.seeds = SpectralSet{0.1, 0.2};
    EXPECT_THROW(solve_bae(p, 1, opt), DimensionError);
}

TEST(SolveBae, Deterministic) {
    Rng rng(40);
    const ModelParams p = random_model(rng, 6, 1.0, Variant::rational, 1.0);
    BaeOptions opt;
    opt.seed = 99;
    const auto a = solve_bae(p, 2, opt).roots;
    const auto b = solve_bae(p, 2, opt).roots;
    EXPECT_EQ(a, b);
}

TEST(SolveBae, BeyondTheEquatorHasNoBetheVector) {
    // M > N/2: every finite solution of the equations gives a null vector.
    const ModelParams p = homogeneous_model(2, 1.0);
    BaeOptions opt;
    opt.starts = 30;
    EXPECT_THROW(solve_bae(p, 2, opt), ConvergenceError);
}

TEST(SolveBae, RejectsBadSectors) {
    const ModelParams p = homogeneous_model(3, 1.0);
    EXPECT_THROW(solve_bae(p, 4), DomainError);
    EXPECT_THROW(solve_bae(p, -1), DomainError);
}

TEST(CheckEigenstate, PerturbedRootsFail) {
    Rng rng(41);
    const BetheRoots r = test::physical_roots(rng, 6, 2);
    SpectralSet off = r.roots;
    off[0] += 0.1;
    const cplx probe{0.37, -0.21};
    EXPECT_GT(check_eigenstate(r.params, off, probe), 1e-3);
}

TEST(CheckEigenstate, VacuumIsExact) {
    Rng rng(42);
    const ModelParams p = random_model(rng, 5, 1.0);
    EXPECT_EQ(check_eigenstate(p, {}, {0.3, 0.4}), 0.0);
}

TEST(DiagonalLimit, BruteForceNormMatchesGaudin) {
    Rng rng(43);
    const BetheRoots r = test::physical_roots(rng, 6, 2);
    const cplx brute = brute_force_scalar_product(r.params, r.roots, r.roots);
    EXPECT_LT(rel_err(brute, gaudin_norm(r).value), 1e-7);
}

} // namespace
} // namespace bethe
