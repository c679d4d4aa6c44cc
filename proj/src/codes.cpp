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

#include "haarqec/codes.hpp"

#include <cmath>
#include <string>

#include "haarqec/errors.hpp"
#include "haarqec/rng.hpp"

namespace haarqec {

namespace {

void require_code_dims(Index N, Index K, std::string_view what) {
    if (K < 1 || N < K) {
        throw DimensionError(std::string(what) + ": need 1 <= K <= N, got N=" + std::to_string(N) +
                             " K=" + std::to_string(K));
    }
}

void require_basis(const ComplexMatrix& basis, const UnitaryErrorSet& set, std::string_view what) {
    if (basis.rows() != set.dim()) {
        throw DimensionError(std::string(what) + ": basis has " + std::to_string(basis.rows()) +
                             " rows but the error set acts on dimension " + std::to_string(set.dim()));
    }
    if (basis.cols() < 1) {
        throw DimensionError(std::string(what) + ": empty basis");
    }
}

}  // namespace

std::string_view to_string(SamplingMethod method) {
    switch (method) {
        case SamplingMethod::GaussianIsometrize: return "gaussian-isometrize";
        case SamplingMethod::QrHaar: return "qr-haar";
        case SamplingMethod::External: return "external";
    }
    return "external";
}

SamplingMethod parse_sampling_method(std::string_view text) {
    if (text == "gaussian-isometrize") return SamplingMethod::GaussianIsometrize;
    if (text == "qr-haar") return SamplingMethod::QrHaar;
    if (text == "external") return SamplingMethod::External;
    throw FormatError("unknown sampling method '" + std::string(text) + "'");
}

ComplexMatrix sample_gaussian(Index N, Index K, std::uint64_t seed) {
    require_code_dims(N, K, "sample_gaussian");
    Rng rng(seed);
    return complex_gaussian(N, K, 1.0 / static_cast<double>(N), rng);
}

CodeSample sample_haar_isometry(Index N, Index K, std::uint64_t seed) {
    CodeSample s;
    s.big_dim = N;
    s.code_dim = K;
    s.seed = seed;
    s.method = SamplingMethod::GaussianIsometrize;
    try {
        s.V = isometrize(sample_gaussian(N, K, seed));
    } catch (const RankDeficiencyError& e) {
        throw RankDeficiencyError(std::string(e.what()) + " (Gaussian draw for seed " +
                                  std::to_string(seed) + " is singular; resample with another seed)");
    }
    return s;
}

CodeSample sample_haar_isometry_qr(Index N, Index K, std::uint64_t seed) {
    const ComplexMatrix g = sample_gaussian(N, K, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(N, K);
    const ComplexMatrix& r = qr.matrixQR();
    for (Index k = 0; k < K; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) == 0.0) {
            throw RankDeficiencyError("sample_haar_isometry_qr: singular Gaussian draw");
        }
        q.col(k) *= d / std::abs(d);
    }
    CodeSample s;
    s.big_dim = N;
    s.code_dim = K;
    s.seed = seed;
    s.method = SamplingMethod::QrHaar;
    s.V = std::move(q);
    return s;
}

CodeSample code_from_isometry(ComplexMatrix V, std::uint64_t seed, SamplingMethod method, double tol) {
    require_code_dims(V.rows(), V.cols(), "code_from_isometry");
    require_finite(V, "code_from_isometry");
    const Index K = V.cols();
    const double defect = hermitian_norm(V.adjoint() * V - ComplexMatrix::Identity(K, K));
    if (defect > tol) {
        throw InvalidInputError("code_from_isometry: V^dagger V deviates from identity by " +
                                std::to_string(defect));
    }
    CodeSample s;
    s.big_dim = V.rows();
    s.code_dim = K;
    s.seed = seed;
    s.method = method;
    s.V = std::move(V);
    return s;
}

ComplexMatrix shifted_basis_matrix(const ComplexMatrix& basis, const UnitaryErrorSet& set) {
    require_basis(basis, set, "shifted_basis_matrix");
    const Index K = basis.cols();
    const auto m = static_cast<Index>(set.size());
    ComplexMatrix y(basis.rows(), K * m);
    for (Index i = 0; i < m; ++i) {
        const ComplexMatrix shifted = apply(set.op(i), basis);
        for (Index j = 0; j < K; ++j) {
            y.col(j * m + i) = shifted.col(j);
        }
    }
    return y;
}

ComplexMatrix shifted_basis_gram(const ComplexMatrix& basis, const UnitaryErrorSet& set) {
    require_basis(basis, set, "shifted_basis_gram");
    const Index K = basis.cols();
    const auto m = static_cast<Index>(set.size());
    ComplexMatrix g(K * m, K * m);
    for (Index i = 0; i < m; ++i) {
        const ComplexMatrix left = apply(set.op(i), basis);
        for (Index k = i; k < m; ++k) {
            const ComplexMatrix right = k == i ? left : apply(set.op(k), basis);
            const ComplexMatrix block = left.adjoint() * right;
            for (Index a = 0; a < K; ++a) {
                for (Index b = 0; b < K; ++b) {
                    g(a * m + i, b * m + k) = block(a, b);
                    g(b * m + k, a * m + i) = std::conj(block(a, b));
                }
            }
        }
    }
    return hermitize(g);
}

NondegeneracyReport nondegeneracy_report(const ComplexMatrix& V, const UnitaryErrorSet& set,
                                         const NondegeneracyOptions& options) {
    require_basis(V, set, "nondegeneracy_report");
    require_finite(V, "nondegeneracy_report");
    NondegeneracyReport out;
    out.N = V.rows();
    out.K = V.cols();
    out.m = static_cast<Index>(set.size());
    out.Km = out.K * out.m;
    out.delta_pred_leading = std::sqrt(static_cast<double>(out.Km) / static_cast<double>(out.N));
    out.hamming_violated = out.Km > out.N;

    const auto elements = static_cast<std::size_t>(out.N) * static_cast<std::size_t>(out.Km);
    out.materialized = elements <= options.element_cap;
    const ComplexMatrix g =
        out.materialized ? gram(shifted_basis_matrix(V, set)) : shifted_basis_gram(V, set);

    out.report.rows = out.N;
    out.report.cols = out.Km;
    out.report.extrema = extrema_from_gram(g);
    if (out.hamming_violated) {
        // rank(Y) <= N < Km
        out.report.extrema.s_min = 0.0;
    }
    out.report.delta = isometry_delta(out.report.extrema);
    out.delta_emp = out.report.delta;

    if (options.full_spectrum) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
        RealVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        if (out.hamming_violated) {
            s.head(out.Km - out.N).setZero();
        }
        out.spectrum = std::move(s);
    }
    return out;
}

}  // namespace haarqec
