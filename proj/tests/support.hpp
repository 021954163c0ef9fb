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
// Helpers shared by the test suites.
#pragma once

#include "bethe/bethe.hpp"

#include <gtest/gtest.h>

namespace bethe::test {

inline double rel_err(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double dist(const StateVector &a, const StateVector &b) {
    return (a - b).norm();
}

inline double rel_dist(const StateVector &a, const StateVector &b) {
    const double scale = std::max({a.norm(), b.norm(), 1e-300});
    return (a - b).norm() / scale;
}

/// Complex a(t) for the "arbitrary a" checks; constant at infinity.
inline cplx test_a(cplx x) { return (x * x + 2.0) / (x * x + 3.0); }

/// Physical Bethe roots for a random chain; retries a few models.
inline BetheRoots physical_roots(Rng &rng, int n, int m, cplx eta = 1.0,
                                 double radius = 1.0) {
    for (int attempt = 0; attempt < 10; ++attempt) {
        const ModelParams p = random_model(rng, n, eta, Variant::rational, radius);
        BaeOptions opt;
        opt.seed = rng();
        try {
            return solve_bae(p, m, opt);
        } catch (const ConvergenceError &) {
        }
    }
    throw ConvergenceError("physical_roots: no model converged");
}

} // namespace bethe::test
