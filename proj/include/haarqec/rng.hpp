// Copyright 2026 The haarqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAARQEC_RNG_HPP
#define HAARQEC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "haarqec/linalg.hpp"

namespace haarqec {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based stream derivation: the seed of task (a, b) under `master`
/// depends only on the triple, never on execution order.
///   derive(master, a, b) = mix(mix(master ^ mix(a + 1)) ^ mix(~(b + 1)))
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    const std::uint64_t h = splitmix64(master ^ splitmix64(a + 1));
    return splitmix64(h ^ splitmix64(~(b + 1)));
}

/// rows x cols matrix of independent complex Gaussians with mean 0 and
/// E|z|^2 = variance (real and imaginary parts each variance / 2). Filled in
/// column-major order, real part before imaginary part.
inline ComplexMatrix complex_gaussian(Index rows, Index cols, double variance, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    ComplexMatrix out(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(r, c) = Complex(re, im);
        }
    }
    return out;
}

}  // namespace haarqec

#endif
