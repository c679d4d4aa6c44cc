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

#include <algorithm>
#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "haarqec/errors.hpp"
#include "haarqec/rng.hpp"

using namespace haarqec;

namespace {

ComplexMatrix ket(Index dim, std::initializer_list<Complex> amps) {
    ComplexMatrix v(dim, 1);
    Index k = 0;
    for (Complex a : amps) {
        v(k++, 0) = a;
    }
    return v;
}

UnitaryErrorSet identity_and_x() { return gen_weight_set(1, 1, 2); }

UnitaryErrorSet only_i_and_x() {
    const UnitaryErrorSet full = gen_weight_set(1, 1, 2);
    return UnitaryErrorSet(2, {full.op(0), full.op(2)}, {"I", "X"});
}

}  // namespace

TEST(SampleGaussian, ZeroMeanAndVariance) {
    const Index N = 64, K = 16;
    const int draws = 100;  // 1e5 entries in total
    Complex sum = 0.0;
    double sum_abs2 = 0.0;
    double sum_abs4 = 0.0;
    for (int d = 0; d < draws; ++d) {
        const ComplexMatrix g = sample_gaussian(N, K, 1000 + d);
        sum += g.sum();
        sum_abs2 += g.cwiseAbs2().sum();
        sum_abs4 += g.cwiseAbs2().cwiseAbs2().sum();
    }
    const double count = static_cast<double>(N * K * draws);
    const double var = 1.0 / N;
    const Complex mean = sum / count;
    // Real and imaginary parts each have variance var / 2.
    const double se_mean = std::sqrt(var / 2.0 / count);
    EXPECT_LT(std::abs(mean.real()), 5 * se_mean);
    EXPECT_LT(std::abs(mean.imag()), 5 * se_mean);
    const double mean_abs2 = sum_abs2 / count;
    const double se_abs2 = std::sqrt((sum_abs4 / count - mean_abs2 * mean_abs2) / count);
    EXPECT_LT(std::abs(mean_abs2 - var), 5 * se_abs2);
}

TEST(SampleGaussian, Deterministic) {
    const ComplexMatrix a = sample_gaussian(50, 3, 99);
    const ComplexMatrix b = sample_gaussian(50, 3, 99);
    EXPECT_EQ(std::memcmp(a.data(), b.data(), sizeof(Complex) * a.size()), 0);
    EXPECT_NE((a - sample_gaussian(50, 3, 100)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SampleGaussian, InvalidDims) {
    EXPECT_THROW(sample_gaussian(3, 4, 0), DimensionError);
    EXPECT_THROW(sample_gaussian(3, 0, 0), DimensionError);
}

TEST(SampleHaar, SquareIsUnitary) {
    const CodeSample s = sample_haar_isometry(2, 2, 3);
    EXPECT_LT((s.V.adjoint() * s.V - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(s.method, SamplingMethod::GaussianIsometrize);
}

TEST(SampleHaar, IsometryAndDeterminism) {
    const CodeSample a = sample_haar_isometry(300, 7, 11);
    EXPECT_LT((a.V.adjoint() * a.V - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-10);
    const CodeSample b = sample_haar_isometry(300, 7, 11);
    EXPECT_EQ((a.V - b.V).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SampleHaar, EntryMomentsMatchHaarUnitVector) {
    // A Haar unit vector in C^N has E|v_a|^2 = 1/N and E|v_a|^4 = 2/(N(N+1)).
    const Index N = 8;
    const int seeds = 10000;
    for (bool qr : {false, true}) {
        double s2 = 0.0, s4 = 0.0, s8 = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const CodeSample c = qr ? sample_haar_isometry_qr(N, 2, s) : sample_haar_isometry(N, 2, s);
            const double p = std::norm(c.V(3, 0));
            s2 += p;
            s4 += p * p;
            s8 += p * p * p * p;
        }
        const double m2 = s2 / seeds;
        const double m4 = s4 / seeds;
        const double se2 = std::sqrt((m4 - m2 * m2) / seeds);
        EXPECT_LT(std::abs(m2 - 1.0 / N), 5 * se2) << (qr ? "qr" : "gaussian");
        const double se4 = std::sqrt((s8 / seeds - m4 * m4) / seeds);
        EXPECT_LT(std::abs(m4 - 2.0 / (N * (N + 1.0))), 5 * se4) << (qr ? "qr" : "gaussian");
    }
}

TEST(CodeFromIsometry, RejectsNonIsometry) {
    EXPECT_THROW(code_from_isometry(2.0 * ComplexMatrix::Identity(3, 2)), InvalidInputError);
    EXPECT_NO_THROW(code_from_isometry(ComplexMatrix::Identity(3, 2)));
}

TEST(ShiftedBasis, IdentitySetGivesV) {
    const CodeSample s = sample_haar_isometry(16, 3, 1);
    const UnitaryErrorSet id(16, {MonomialOperator::identity(16)});
    EXPECT_EQ((shifted_basis_matrix(s.V, id) - s.V).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LT(nondegeneracy_report(s.V, id).delta_emp, 1e-12);
}

TEST(ShiftedBasis, ExactToyCode) {
    const UnitaryErrorSet set = only_i_and_x();
    const ComplexMatrix v = ket(2, {1.0, 0.0});
    const ComplexMatrix y = shifted_basis_matrix(v, set);
    EXPECT_EQ((y - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(nondegeneracy_report(v, set).delta_emp, 0.0);
}

TEST(ShiftedBasis, PlusStateIsDegenerate) {
    const UnitaryErrorSet set = only_i_and_x();
    const double r = 1.0 / std::sqrt(2.0);
    const NondegeneracyReport rep = nondegeneracy_report(ket(2, {r, r}), set);
    EXPECT_NEAR(rep.report.extrema.s_min, 0.0, 1e-7);
    EXPECT_NEAR(rep.report.extrema.s_max, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(rep.delta_emp, 1.0, 1e-7);
}

TEST(ShiftedBasis, ColumnsAreShiftedCodewords) {
    const UnitaryErrorSet set = gen_weight_set(4, 1, 2);
    const CodeSample s = sample_haar_isometry(16, 3, 2);
    const ComplexMatrix y = shifted_basis_matrix(s.V, set);
    const auto m = static_cast<Index>(set.size());
    ASSERT_EQ(y.cols(), 3 * m);
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Index j = std::uniform_int_distribution<Index>(0, 2)(rng);
        const Index i = std::uniform_int_distribution<Index>(0, m - 1)(rng);
        const ComplexMatrix expect = as_monomial(set.op(i))->apply(s.V.col(j));
        EXPECT_LT((y.col(j * m + i) - expect).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ShiftedBasis, DimensionMismatch) {
    EXPECT_THROW(shifted_basis_matrix(ComplexMatrix::Identity(4, 1), identity_and_x()), DimensionError);
}

TEST(Nondegeneracy, GramPathMatchesMaterialized) {
    const UnitaryErrorSet set = gen_erasure_set(8, {0, 5}, 2);
    const CodeSample s = sample_haar_isometry(256, 3, 5);
    const NondegeneracyReport dense = nondegeneracy_report(s.V, set);
    NondegeneracyOptions small;
    small.element_cap = 1000;
    const NondegeneracyReport blocked = nondegeneracy_report(s.V, set, small);
    EXPECT_TRUE(dense.materialized);
    EXPECT_FALSE(blocked.materialized);
    EXPECT_NEAR(dense.report.extrema.s_min, blocked.report.extrema.s_min, 1e-10);
    EXPECT_NEAR(dense.report.extrema.s_max, blocked.report.extrema.s_max, 1e-10);
    EXPECT_NEAR(dense.delta_emp, blocked.delta_emp, 1e-10);
}

TEST(Nondegeneracy, FullSpectrumAgreesWithExtremes) {
    const UnitaryErrorSet set = gen_erasure_set(6, {2}, 2);
    const CodeSample s = sample_haar_isometry(64, 2, 6);
    NondegeneracyOptions opts;
    opts.full_spectrum = true;
    const NondegeneracyReport rep = nondegeneracy_report(s.V, set, opts);
    ASSERT_TRUE(rep.spectrum.has_value());
    ASSERT_EQ(rep.spectrum->size(), 8);
    EXPECT_NEAR((*rep.spectrum)(0), rep.report.extrema.s_min, 1e-10);
    EXPECT_NEAR((*rep.spectrum)(7), rep.report.extrema.s_max, 1e-10);
    Eigen::JacobiSVD<ComplexMatrix> svd(shifted_basis_matrix(s.V, set));
    EXPECT_NEAR(svd.singularValues().maxCoeff(), rep.report.extrema.s_max, 1e-10);
    EXPECT_NEAR(svd.singularValues().minCoeff(), rep.report.extrema.s_min, 1e-10);
}

TEST(Nondegeneracy, HammingViolationForcesDeltaOne) {
    const UnitaryErrorSet set = gen_weight_set(3, 1, 2);  // m = 10
    const CodeSample s = sample_haar_isometry(8, 1, 3);
    const NondegeneracyReport rep = nondegeneracy_report(s.V, set);
    EXPECT_TRUE(rep.hamming_violated);
    EXPECT_EQ(rep.report.extrema.s_min, 0.0);
    EXPECT_GE(rep.delta_emp, 1.0);
}

TEST(Nondegeneracy, TypicalDeltaAtModerateSize) {
    // N = 1024, K = 4, m = 16: leading prediction sqrt(Km/N) = 0.25.
    const UnitaryErrorSet set = gen_erasure_set(10, {0, 1}, 2);
    std::vector<double> deltas;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const NondegeneracyReport rep = nondegeneracy_report(sample_haar_isometry(1024, 4, seed).V, set);
        EXPECT_NEAR(rep.delta_pred_leading, 0.25, 1e-15);
        deltas.push_back(rep.delta_emp);
    }
    std::nth_element(deltas.begin(), deltas.begin() + 10, deltas.end());
    EXPECT_GE(deltas[10], 0.1);
    EXPECT_LE(deltas[10], 0.6);
}

TEST(SamplingMethod, RoundTrip) {
    for (auto m : {SamplingMethod::GaussianIsometrize, SamplingMethod::QrHaar, SamplingMethod::External}) {
        EXPECT_EQ(parse_sampling_method(to_string(m)), m);
    }
    EXPECT_THROW(parse_sampling_method("bogus"), FormatError);
}
