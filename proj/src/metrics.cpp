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

#include "haarqec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "haarqec/errors.hpp"

namespace haarqec {

namespace {

void require_compatible(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch) {
    if (V.rows() != dec.N || V.cols() != dec.K) {
        throw DimensionError("metrics: code is " + std::to_string(V.rows()) + " x " + std::to_string(V.cols()) +
                             " but the decoder expects " + std::to_string(dec.N) + " x " + std::to_string(dec.K));
    }
    if (ch.dim() != dec.N || static_cast<Index>(ch.set->size()) != dec.m) {
        throw DimensionError("metrics: channel error set does not match the decoder");
    }
}

}  // namespace

DecodedKraus decoded_kraus(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch) {
    require_compatible(V, dec, ch);
    DecodedKraus out;
    out.K = dec.K;
    out.m = dec.m;
    out.coeffs = ch.coeffs;
    out.blocks.reserve(ch.kraus.size());
    for (const auto& k : ch.kraus) {
        out.blocks.push_back(dec.D * k.apply(V));
    }
    return out;
}

double lemma_residual(const DecodedKraus& dk, const ComplexMatrix& phi) {
    if (phi.rows() != dk.K) {
        throw DimensionError("lemma_residual: state has " + std::to_string(phi.rows()) +
                             " message rows, expected K = " + std::to_string(dk.K));
    }
    if (std::abs(phi.norm() - 1.0) > 1e-8) {
        throw InvalidInputError("lemma_residual: state is not normalized");
    }
    const Index m = dk.m;
    double sq = 0.0;
    for (std::size_t r = 0; r < dk.blocks.size(); ++r) {
        ComplexMatrix diff = dk.blocks[r] * phi;
        for (Index j = 0; j < dk.K; ++j) {
            for (Index i = 0; i < m; ++i) {
                diff.row(j * m + i) -= dk.coeffs(static_cast<Index>(r), i) * phi.row(j);
            }
        }
        sq += diff.squaredNorm();
    }
    return std::sqrt(sq);
}

double lemma_residual(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch,
                      const ComplexMatrix& phi) {
    return lemma_residual(decoded_kraus(V, dec, ch), phi);
}

EntangledDisturbance entangled_disturbance(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch,
                                           std::size_t element_cap) {
    require_compatible(V, dec, ch);
    const Index K = dec.K;
    const Index m = dec.m;
    const Index K2 = K * K;
    if (static_cast<std::size_t>(K2) * static_cast<std::size_t>(K2) > element_cap) {
        throw BudgetError("entangled_disturbance: K^4 = " + std::to_string(K2 * K2) + " exceeds the element cap");
    }
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(K));

    // Psi_r = K_r V Phi with Phi = I/sqrt(K); Omega_r = D Psi_r.
    ComplexMatrix sigma = ComplexMatrix::Zero(K2, K2);
    ComplexMatrix beta = ComplexMatrix::Zero(K, K);
    ComplexMatrix z(K2, m);
    for (const auto& k : ch.kraus) {
        const ComplexMatrix psi = k.apply(V) * inv_sqrt_k;
        const ComplexMatrix omega = dec.D * psi;
        for (Index j = 0; j < K; ++j) {
            for (Index b = 0; b < K; ++b) {
                for (Index i = 0; i < m; ++i) {
                    z(j * K + b, i) = omega(j * m + i, b);
                }
            }
        }
        sigma.noalias() += z * z.adjoint();
        beta.noalias() += (psi.adjoint() * psi - omega.adjoint() * omega).transpose();
    }
    beta = hermitize(beta);

    EntangledDisturbance out;
    out.rejected_weight = beta.trace().real();
    for (Index j = 0; j < K; ++j) {
        sigma.block(j * K, j * K, K, K) += beta / static_cast<double>(K);
    }
    for (Index j = 0; j < K; ++j) {
        for (Index l = 0; l < K; ++l) {
            sigma(j * K + j, l * K + l) -= 1.0 / static_cast<double>(K);
        }
    }
    const double half = 0.5 * hermitian_trace_norm(hermitize(sigma));
    out.clamped = half > 1.0 || half < 0.0;
    out.value = std::clamp(half, 0.0, 1.0);
    return out;
}

ComplexMatrix random_state_with_reference(Index K, Index ref_dim, Rng& rng) {
    if (K < 1 || ref_dim < 1) {
        throw DimensionError("random_state_with_reference: dimensions must be positive");
    }
    ComplexMatrix phi = complex_gaussian(K, ref_dim, 1.0, rng);
    const double norm = phi.norm();
    if (norm == 0.0) {
        throw RankDeficiencyError("random_state_with_reference: zero Gaussian draw");
    }
    return phi / norm;
}

DisturbanceReport disturbance_report(const ComplexMatrix& V, const Decoder& dec, const NoiseChannel& ch,
                                     Index num_random_states, std::uint64_t seed) {
    if (num_random_states < 0) {
        throw InvalidInputError("disturbance_report: negative state count");
    }
    const DecodedKraus dk = decoded_kraus(V, dec, ch);
    DisturbanceReport out;
    out.upper_bound = dec.delta_cert;

    const ComplexMatrix bell = ComplexMatrix::Identity(dec.K, dec.K) / std::sqrt(static_cast<double>(dec.K));
    out.lemma_residual_max = lemma_residual(dk, bell);

    Rng rng(seed);
    for (Index s = 0; s < num_random_states; ++s) {
        const ComplexMatrix phi = random_state_with_reference(dec.K, dec.K, rng);
        out.lemma_residual_max = std::max(out.lemma_residual_max, lemma_residual(dk, phi));
    }
    out.num_states = num_random_states + 1;

    const EntangledDisturbance ent = entangled_disturbance(V, dec, ch);
    out.entangled_trace_dist = ent.value;
    out.clamped = ent.clamped;
    return out;
}

double pure_state_trace_norm(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) {
        throw DimensionError("pure_state_trace_norm: vectors differ in length");
    }
    const ComplexMatrix diff = u * u.adjoint() - v * v.adjoint();
    return hermitian_trace_norm(hermitize(diff));
}

}  // namespace haarqec
