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

#ifndef HAARQEC_DECODER_HPP
#define HAARQEC_DECODER_HPP

#include "haarqec/codes.hpp"
#include "haarqec/error_sets.hpp"
#include "haarqec/linalg.hpp"

namespace haarqec {

/// SVD-rounded decoding partial isometry D : C^N -> C^K (x) C^m.
///
/// Rows are indexed by j*m + i (message |j>, syndrome |i>). D maps the
/// span of {E_i |v_j>} isometrically onto C^{Km} and kills its complement.
struct Decoder {
    ComplexMatrix D;
    /// delta of the code the decoder was built from.
    double delta_cert = 0.0;
    Index N = 0;
    Index K = 0;
    Index m = 0;
    Index rank = 0;

    /// D^dagger D, the projector onto the decodable subspace. N x N, formed on
    /// demand because the decode paths never need it explicitly.
    ComplexMatrix domain_projector() const { return D.adjoint() * D; }
};

/// D-hat = sum_i V^dagger E_i^dagger (x) |i>, a (Km) x N matrix; equals Y^dagger.
ComplexMatrix decoder_hat(const ComplexMatrix& V, const UnitaryErrorSet& set);

/// D = partial_isometry_round(D-hat).
/// Throws NondegenerateRankError if the code's delta is >= 1 or D-hat has a
/// singular value below the rank tolerance (rank < Km).
Decoder build_decoder(const ComplexMatrix& V, const UnitaryErrorSet& set);
inline Decoder build_decoder(const CodeSample& code, const UnitaryErrorSet& set) {
    return build_decoder(code.V, set);
}

/// Full decoding channel on an N x N density operator: measure {P, I - P}
/// with P = D^dagger D; on P apply D and trace out the syndrome; otherwise
/// output I/K. Throws InvalidInputError if rho is not a density operator
/// within 1e-8.
ComplexMatrix decode_density(const Decoder& dec, const ComplexMatrix& rho);

/// (D (x) I_anc) psi, no measurement. psi is N x d_anc (column b is the
/// system vector paired with ancilla basis state |b>); the result is
/// (Km) x d_anc. Throws InvalidInputError if ||psi|| deviates from 1 by > 1e-8.
ComplexMatrix decode_pure_with_syndrome(const Decoder& dec, const ComplexMatrix& psi);

/// Traces the syndrome register out of a (Km) x (Km) operator.
ComplexMatrix trace_out_syndrome(const ComplexMatrix& op, Index K, Index m);

}  // namespace haarqec

#endif
