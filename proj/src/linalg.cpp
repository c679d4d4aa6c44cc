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

#include "haarqec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "haarqec/errors.hpp"

namespace haarqec {

namespace {

// Eigenvalue ratio above which (A^dagger A)^{-1/2} is formed from the Gram
// eigendecomposition; below it the thin SVD takes over. At 1e-6 the Gram route
// loses at most ~1e-10 relative accuracy.
constexpr double kGramConditionFloor = 1e-6;

void require_tall(const ComplexMatrix& m, std::string_view what) {
    if (m.rows() < m.cols()) {
        throw DimensionError(std::string(what) + ": expected rows >= cols, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.cols() == 0) {
        throw DimensionError(std::string(what) + ": empty matrix");
    }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(const ComplexMatrix& h, bool vectors) {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(
        h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

// Q diag(lambda^{-1/2}) Q^dagger for a positive definite Hermitian matrix.
ComplexMatrix inverse_sqrt(const Eigen::SelfAdjointEigenSolver<ComplexMatrix>& es) {
    const RealVector scale = es.eigenvalues().cwiseSqrt().cwiseInverse();
    const ComplexMatrix& q = es.eigenvectors();
    return q * scale.asDiagonal() * q.adjoint();
}

}  // namespace

void require_finite(const ComplexMatrix& m, std::string_view what) {
    if (!m.allFinite()) {
        throw NonFiniteError(std::string(what) + ": matrix has non-finite entries");
    }
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("hermitize: matrix is not square");
    }
    return (a + a.adjoint()) * 0.5;
}

ComplexMatrix gram(const ComplexMatrix& m) {
    ComplexMatrix g = ComplexMatrix::Zero(m.cols(), m.cols());
    g.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
    ComplexMatrix full = g.selfadjointView<Eigen::Lower>();
    return hermitize(full);
}

SingularExtrema extrema_from_gram(const ComplexMatrix& g) {
    const auto es = eig(hermitize(g), false);
    const RealVector& lambda = es.eigenvalues();
    SingularExtrema out;
    out.s_min = std::sqrt(std::max(lambda(0), 0.0));
    out.s_max = std::sqrt(std::max(lambda(lambda.size() - 1), 0.0));
    return out;
}

SingularExtrema singular_extrema(const ComplexMatrix& m) {
    require_tall(m, "singular_extrema");
    require_finite(m, "singular_extrema");
    return extrema_from_gram(gram(m));
}

RealVector singular_values(const ComplexMatrix& m) {
    require_tall(m, "singular_values");
    require_finite(m, "singular_values");
    const auto es = eig(gram(m), false);
    return es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
}

double isometry_delta(const SingularExtrema& e) {
    return std::max({e.s_max - 1.0, 1.0 - e.s_min, 0.0});
}

IsometryReport isometry_report_from_gram(const ComplexMatrix& g, Index rows) {
    if (rows < g.cols()) {
        throw DimensionError("isometry_report: rows < cols");
    }
    IsometryReport r;
    r.extrema = extrema_from_gram(g);
    r.delta = isometry_delta(r.extrema);
    r.rows = rows;
    r.cols = g.cols();
    return r;
}

IsometryReport approx_isometry_report(const ComplexMatrix& m) {
    require_tall(m, "approx_isometry_report");
    require_finite(m, "approx_isometry_report");
    return isometry_report_from_gram(gram(m), m.rows());
}

ComplexMatrix isometrize(const ComplexMatrix& m) {
    require_tall(m, "isometrize");
    require_finite(m, "isometrize");
    const auto es = eig(gram(m), true);
    const RealVector& lambda = es.eigenvalues();
    const double top = lambda(lambda.size() - 1);
    if (top <= 0.0) {
        throw RankDeficiencyError("isometrize: zero matrix");
    }
    if (lambda(0) >= kGramConditionFloor * top) {
        return m * inverse_sqrt(es);
    }
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    if (s(s.size() - 1) < kRankTolerance * s(0)) {
        throw RankDeficiencyError("isometrize: smallest singular value " +
                                  std::to_string(s(s.size() - 1)) +
                                  " is below the rank tolerance");
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

RoundedPartialIsometry partial_isometry_round(const ComplexMatrix& m) {
    require_finite(m, "partial_isometry_round");
    RoundedPartialIsometry out;
    out.matrix = ComplexMatrix::Zero(m.rows(), m.cols());
    if (m.size() == 0) {
        return out;
    }
    const bool tall = m.rows() >= m.cols();
    const auto es = eig(tall ? gram(m) : gram(m.adjoint()), true);
    const RealVector& lambda = es.eigenvalues();
    const double top = lambda(lambda.size() - 1);
    if (top <= 0.0) {
        return out;
    }
    if (lambda(0) >= kGramConditionFloor * top) {
        out.matrix = tall ? ComplexMatrix(m * inverse_sqrt(es))
                          : ComplexMatrix(inverse_sqrt(es) * m);
        out.rank = lambda.size();
        return out;
    }
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    const double cutoff = kRankTolerance * s(0);
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff) {
        ++rank;
    }
    out.matrix = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
    out.rank = rank;
    return out;
}

double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    const ComplexMatrix g = m.rows() >= m.cols() ? gram(m) : gram(m.adjoint());
    return extrema_from_gram(g).s_max;
}

double hermitian_norm(const ComplexMatrix& a) {
    const auto es = eig(hermitize(a), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double hermitian_trace_norm(const ComplexMatrix& a) {
    const auto es = eig(hermitize(a), false);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace haarqec
