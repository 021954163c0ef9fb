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
 * Seeded samplers for spectral parameters and states.
 */
#pragma once

#include "common.hpp"
#include "state.hpp"

#include <random>

namespace bethe {

using Rng = std::mt19937_64;

/// Uniform point in the disk |z - center| <= radius.
inline cplx sample_disk(Rng &rng, double radius = 2.0, cplx center = 0.0) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double x = 0.0;
    double y = 0.0;
    do {
        x = unit(rng);
        y = unit(rng);
    } while (x * x + y * y > 1.0);
    return center + radius * cplx{x, y};
}

/**
 * `count` disk samples, rejection-sampled so that every pair (including
 * pairs with `avoid`) is at least `min_sep` apart and |u + eta| >= min_sep,
 * |u - eta| >= min_sep for every pairwise difference u.
 */
inline SpectralSet sample_separated(Rng &rng, std::size_t count, cplx eta,
                                    std::span<const cplx> avoid = {},
                                    double radius = 2.0,
                                    double min_sep = kPoleGuard) {
    SpectralSet out;
    out.reserve(count);
    auto ok = [&](cplx z, cplx w) {
        const cplx u = z - w;
        return std::abs(u) >= min_sep && std::abs(u + eta) >= min_sep &&
               std::abs(u - eta) >= min_sep;
    };
    for (int attempt = 0; out.size() < count; ++attempt) {
        if (attempt > 100000) {
            throw DomainError("sample_separated: cannot satisfy guards");
        }
        const cplx z = sample_disk(rng, radius);
        bool good = true;
        for (const cplx w : out) {
            good = good && ok(z, w);
        }
        for (const cplx w : avoid) {
            good = good && ok(z, w);
        }
        if (good) {
            out.push_back(z);
        }
    }
    return out;
}

inline StateVector random_state(Rng &rng, int n_sites) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    StateVector v(n_sites);
    for (auto &a : v.amplitudes()) {
        a = {unit(rng), unit(rng)};
    }
    return v;
}

/// Random amplitudes on the M-particle sector only.
inline StateVector random_sector_state(Rng &rng, int n_sites, int particles) {
    StateVector v(n_sites);
    for (std::uint64_t k = 0; k < v.size(); ++k) {
        if (SpinBasisIndex{k}.particle_count() == particles) {
            v[k] = sample_disk(rng, 1.0);
        }
    }
    return v;
}

inline ModelParams random_model(Rng &rng, int n_sites, cplx eta = 1.0,
                                Variant variant = Variant::rational,
                                double radius = 2.0) {
    ModelParams p{variant, eta, sample_separated(rng, n_sites, eta, {}, radius)};
    p.validate();
    return p;
}

} // namespace bethe
