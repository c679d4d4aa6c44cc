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

#ifndef HAARQEC_CODES_HPP
#define HAARQEC_CODES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "haarqec/error_sets.hpp"
#include "haarqec/linalg.hpp"

namespace haarqec {

enum class SamplingMethod { GaussianIsometrize, QrHaar, External };

std::string_view to_string(SamplingMethod method);
/// Accepts "gaussian-isometrize", "qr-haar" and "external".
SamplingMethod parse_sampling_method(std::string_view text);

/// Encoding isometry V : C^K -> C^N with its provenance.
struct CodeSample {
    Index big_dim = 0;
    Index code_dim = 0;
    ComplexMatrix V;
    std::uint64_t seed = 0;
    SamplingMethod method = SamplingMethod::GaussianIsometrize;
};

/// N x K matrix of i.i.d. complex Gaussians with mean 0 and variance 1/N.
ComplexMatrix sample_gaussian(Index N, Index K, std::uint64_t seed);

/// isometrize(sample_gaussian(N, K, seed)): a Haar random isometry.
CodeSample sample_haar_isometry(Index N, Index K, std::uint64_t seed);

/// First K columns of the QR factor of an N x K Ginibre matrix, with the
/// R-diagonal phases divided out. Cross-check sampler.
CodeSample sample_haar_isometry_qr(Index N, Index K, std::uint64_t seed);

/// Wraps a caller-supplied isometry. Throws InvalidInputError unless
/// V^dagger V = I within `tol`.
CodeSample code_from_isometry(ComplexMatrix V, std::uint64_t seed = 0,
                              SamplingMethod method = SamplingMethod::External, double tol = 1e-10);

/// Y = sum_i E_i B (x) <i|, an N x (K m) matrix. Column j*m + i holds E_i |b_j>,
/// i.e. the column index is the Kronecker index of |j>|i>.
ComplexMatrix shifted_basis_matrix(const ComplexMatrix& basis, const UnitaryErrorSet& set);

/// Y^dagger Y accumulated one operator pair at a time, never holding Y.
ComplexMatrix shifted_basis_gram(const ComplexMatrix& basis, const UnitaryErrorSet& set);

struct NondegeneracyOptions {
    std::size_t element_cap = kDefaultElementCap;
    bool full_spectrum = false;
};

struct NondegeneracyReport {
    IsometryReport report;
    double delta_emp = 0.0;
    /// sqrt(K m / N)
    double delta_pred_leading = 0.0;
    Index N = 0;
    Index K = 0;
    Index m = 0;
    Index Km = 0;
    /// K m > N: the shifted basis cannot be independent, s_min is 0.
    bool hamming_violated = false;
    /// Y was held densely rather than Gram-accumulated.
    bool materialized = true;
    /// Ascending singular values of Y, on request.
    std::optional<RealVector> spectrum;
};

/// Certifies the delta for which {E_i |v_j>} is a delta-approximately
/// orthonormal basis.
NondegeneracyReport nondegeneracy_report(const ComplexMatrix& V, const UnitaryErrorSet& set,
                                         const NondegeneracyOptions& options = {});

}  // namespace haarqec

#endif
