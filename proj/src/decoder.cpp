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

#include "haarqec/decoder.hpp"

#include <cmath>
#include <string>

#include "haarqec/errors.hpp"

namespace haarqec {

ComplexMatrix decoder_hat(const ComplexMatrix& V, const UnitaryErrorSet& set) {
    return shifted_basis_matrix(V, set).adjoint();
}

Decoder build_decoder(const ComplexMatrix& V, const UnitaryErrorSet& set) {
    Decoder dec;
    dec.N = V.rows();
    dec.K = V.cols();
    dec.m = static_cast<Index>(set.size());
    const Index km = dec.K * dec.m;
    if (km > dec.N) {
        throw NondegenerateRankError("build_decoder: K*m = " + std::to_string(km) +
                                     " exceeds N = " + std::to_string(dec.N) +
                                     "; the shifted basis cannot be independent");
    }
    const ComplexMatrix y = shifted_basis_matrix(V, set);
    const IsometryReport report = approx_isometry_report(y);
    dec.delta_cert = report.delta;
    if (report.delta >= 1.0) {
        throw NondegenerateRankError("build_decoder: code is only a delta = " +
                                     std::to_string(report.delta) +
                                     " approximate nondegenerate code; rounding needs delta < 1");
    }
    RoundedPartialIsometry rounded = partial_isometry_round(y.adjoint());
    if (rounded.rank != km) {
        throw NondegenerateRankError("build_decoder: D-hat has rank " + std::to_string(rounded.rank) +
                                     " < K*m = " + std::to_string(km));
    }
    dec.D = std::move(rounded.matrix);
    dec.rank = rounded.rank;
    return dec;
}

ComplexMatrix trace_out_syndrome(const ComplexMatrix& op, Index K, Index m) {
    if (op.rows() != K * m || op.cols() != K * m) {
        throw DimensionError("trace_out_syndrome: operator is not (Km) x (Km)");
    }
    ComplexMatrix out = ComplexMatrix::Zero(K, K);
    for (Index a = 0; a < K; ++a) {
        for (Index b = 0; b < K; ++b) {
            Complex acc(0.0, 0.0);
            for (Index i = 0; i < m; ++i) {
                acc += op(a * m + i, b * m + i);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix decode_density(const Decoder& dec, const ComplexMatrix& rho) {
    if (rho.rows() != dec.N || rho.cols() != dec.N) {
        throw DimensionError("decode_density: rho must be N x N");
    }
    require_finite(rho, "decode_density");
    constexpr double tol = 1e-8;
    const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const Complex tr = rho.trace();
    if (asym > tol || std::abs(tr - 1.0) > tol) {
        throw InvalidInputError("decode_density: rho is not Hermitian with unit trace");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) {
        throw InvalidInputError("decode_density: rho has a negative eigenvalue " +
                                std::to_string(es.eigenvalues()(0)));
    }
    // D P rho P D^dagger = D rho D^dagger because D P = D.
    const ComplexMatrix inner = dec.D * rho * dec.D.adjoint();
    ComplexMatrix out = trace_out_syndrome(inner, dec.K, dec.m);
    const double rejected = tr.real() - inner.trace().real();
    out += ComplexMatrix::Identity(dec.K, dec.K) * (rejected / static_cast<double>(dec.K));
    return out;
}

ComplexMatrix decode_pure_with_syndrome(const Decoder& dec, const ComplexMatrix& psi) {
    if (psi.rows() != dec.N) {
        throw DimensionError("decode_pure_with_syndrome: psi has " + std::to_string(psi.rows()) +
                             " rows, expected N = " + std::to_string(dec.N));
    }
    if (std::abs(psi.norm() - 1.0) > 1e-8) {
        throw InvalidInputError("decode_pure_with_syndrome: psi is not normalized");
    }
    return dec.D * psi;
}

}  // namespace haarqec
