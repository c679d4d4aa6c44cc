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

#ifndef HAARQEC_METRICS_HPP
#define HAARQEC_METRICS_HPP

#include <cstdint>
#include <vector>

#include "haarqec/decoder.hpp"
#include "haarqec/noise.hpp"
#include "haarqec/rng.hpp"

namespace haarqec {

// A state |phi> in C^K (x) B is held as a K x dim(B) matrix Phi with
// |phi> = sum_{j,b} Phi(j, b) |j>|b>.

/// A_r = D K_r V for every Kraus operator; (Km) x K each. Everything the
/// residual needs from the code, decoder and channel.
struct DecodedKraus {
    std::vector<ComplexMatrix> blocks;
    /// c_{r,.} per Kraus operator, copied from the channel.
    ComplexMatrix coeffs;
    Index K = 0;
    Index m = 0;
};

DecodedKraus decoded_kraus(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch);

/// || (D (x) I)(E_N (x) I)(V (x) I)|phi> - |phi>|c> ||.
double lemma_residual(const DecodedKraus& dk, const ComplexMatrix& phi);
double lemma_residual(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch,
                      const ComplexMatrix& phi);

struct EntangledDisturbance {
    /// (1/2) || (Dec o N o Enc (x) I)(Phi+) - Phi+ ||_1, clamped to [0, 1].
    double value = 0.0;
    /// The unclamped value fell outside [0, 1].
    bool clamped = false;
    /// Weight routed to the maximally mixed fallback.
    double rejected_weight = 0.0;
};

/// Maximally entangled input across the message and a K-dim reference.
/// Throws BudgetError if K^4 exceeds element_cap.
EntangledDisturbance entangled_disturbance(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch,
                                           std::size_t element_cap = kDefaultElementCap);

/// Gaussian K x ref_dim matrix normalized in Frobenius norm: a Haar random
/// pure state of the message and reference.
ComplexMatrix random_state_with_reference(Index K, Index ref_dim, Rng& rng);

struct DisturbanceReport {
    double lemma_residual_max = 0.0;
    double entangled_trace_dist = 0.0;
    double upper_bound = 0.0;
    Index num_states = 0;
    bool clamped = false;
};

/// Lemma residual over num_random_states random states plus the maximally
/// entangled one; brackets the disturbance as [entangled_trace_dist, upper_bound].
DisturbanceReport disturbance_report(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch,
                                     Index num_random_states, std::uint64_t seed);

/// || |u><u| - |v><v| ||_1 by eigendecomposition.
double pure_state_trace_norm(const ComplexVector& u, const ComplexVector& v);

}  // namespace haarqec

#endif
