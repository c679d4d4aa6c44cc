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

#ifndef HAARQEC_LINALG_HPP
#define HAARQEC_LINALG_HPP

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace haarqec {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix, column-major. Isometries, Kraus operators, density
/// operators and the shifted-basis matrix all live in this type.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative threshold (times s_max) below which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-8;

struct SingularExtrema {
    double s_min = 0.0;
    double s_max = 0.0;
};

/// Singular extrema of a tall matrix together with the smallest delta for
/// which it is a delta-approximate isometry: all singular values in
/// [1 - delta, 1 + delta].
struct IsometryReport {
    SingularExtrema extrema;
    double delta = 0.0;
    Index rows = 0;
    Index cols = 0;
};

/// Throws NonFiniteError if any entry is NaN or Inf.
void require_finite(const ComplexMatrix& m, std::string_view what);

/// Returns (A + A^dagger) / 2.
ComplexMatrix hermitize(const ComplexMatrix& a);

/// Gram matrix M^dagger M (cols x cols), re-Hermitized.
ComplexMatrix gram(const ComplexMatrix& m);

/// Smallest and largest singular values of a tall matrix (rows >= cols),
/// obtained from the extreme eigenvalues of its Gram matrix.
SingularExtrema singular_extrema(const ComplexMatrix& m);

/// Same as singular_extrema, starting from an already accumulated Gram matrix.
SingularExtrema extrema_from_gram(const ComplexMatrix& gram);

/// All singular values of a tall matrix in ascending order (Gram route).
RealVector singular_values(const ComplexMatrix& m);

IsometryReport approx_isometry_report(const ComplexMatrix& m);
IsometryReport isometry_report_from_gram(const ComplexMatrix& gram, Index rows);
double isometry_delta(const SingularExtrema& e);

/// Nearest isometry W U to M = W Sigma U, i.e. M (M^dagger M)^{-1/2}.
/// Throws RankDeficiencyError when s_min < kRankTolerance * s_max.
ComplexMatrix isometrize(const ComplexMatrix& m);

struct RoundedPartialIsometry {
    ComplexMatrix matrix;
    Index rank = 0;
};

/// Replaces every singular value of M above the rank tolerance by 1 and the
/// rest by 0. Works for any shape.
RoundedPartialIsometry partial_isometry_round(const ComplexMatrix& m);

/// Largest singular value, any shape.
double operator_norm(const ComplexMatrix& m);

/// Largest |eigenvalue| of a Hermitian matrix (after re-Hermitizing).
double hermitian_norm(const ComplexMatrix& a);

/// Sum of |eigenvalues| of a Hermitian matrix (after re-Hermitizing).
double hermitian_trace_norm(const ComplexMatrix& a);

}  // namespace haarqec

#endif
