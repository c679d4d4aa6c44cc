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


#include "haarqec/noise.hpp"

#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "haarqec/errors.hpp"
#include "haarqec/rng.hpp"

using namespace haarqec;

namespace {

ComplexMatrix random_density(Index dim, Rng& rng) {
    const ComplexMatrix g = complex_gaussian(dim, dim, 1.0, rng);
    const ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

// Digit of qudit `site` in the basis index `a`, qudit 0 most significant.
Index digit(Index a, int site, int n, int q) {
    for (int k = n - 1; k > site; --k) {
        a /= q;
    }
    return a % q;
}

Index with_digit(Index a, int site, int n, int q, Index value) {
    Index stride = 1;
    for (int k = n - 1; k > site; --k) {
        stride *= q;
    }
    return a + (value - digit(a, site, n, q)) * stride;
}

// Tr_S(rho) (x) I / q^|S|, computed entry by entry.
ComplexMatrix replace_with_mixed(const ComplexMatrix& rho, const std::vector<int>& sites, int n, int q) {
    const Index dim = rho.rows();
    Index ds = 1;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        ds *= q;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Index a = 0; a < dim; ++a) {
        for (Index b = 0; b < dim; ++b) {
            bool same = true;
            for (int s : sites) {
                same = same && digit(a, s, n, q) == digit(b, s, n, q);
            }
            if (!same) {
                continue;
            }
            Complex acc = 0.0;
            for (Index t = 0; t < ds; ++t) {
                Index aa = a, bb = b, rest = t;
                for (int s : sites) {
                    aa = with_digit(aa, s, n, q, rest % q);
                    bb = with_digit(bb, s, n, q, rest % q);
                    rest /= q;
                }
                acc += rho(aa, bb);
            }
            out(a, b) = acc / static_cast<double>(ds);
        }
    }
    return out;
}

}  // namespace

TEST(MixtureChannel, CoefficientsAreDiagonal) {
    auto set = std::make_shared<const UnitaryErrorSet>(gen_weight_set(2, 1, 2));
    std::vector<double> probs(set->size(), 0.0);
    probs[0] = 0.4;
    probs[3] = 0.35;
    probs[6] = 0.25;
    const NoiseChannel ch = mixture_channel(set, probs);
    ASSERT_EQ(ch.rank(), static_cast<Index>(set->size()));
    for (Index r = 0; r < ch.rank(); ++r) {
        for (Index i = 0; i < ch.coeffs.cols(); ++i) {
            const double expect = r == i ? std::sqrt(probs[r]) : 0.0;
            EXPECT_NEAR(std::abs(ch.coeffs(r, i)), expect, 1e-14);
        }
        EXPECT_LT(ch.residuals[r], 1e-12);
    }
    EXPECT_NEAR(coefficient_vector(ch).norm(), 1.0, 1e-12);
}

TEST(MixtureChannel, RejectsBadProbabilities) {
    auto set = std::make_shared<const UnitaryErrorSet>(gen_weight_set(1, 1, 2));
    EXPECT_THROW(mixture_channel(set, {0.5, 0.5}), InvalidInputError);
    EXPECT_THROW(mixture_channel(set, {0.5, 0.5, 0.5, -0.5}), InvalidInputError);
    EXPECT_THROW(mixture_channel(set, {0.5, 0.2, 0.2, 0.2}), InvalidInputError);
    EXPECT_THROW(mixture_channel(nullptr, {1.0}), InvalidInputError);
}

TEST(Depolarization, SingleQubitPauliTwirlIsMaximallyMixed) {
    const NoiseChannel ch = complete_depolarization(1, {0}, 2);
    Rng rng(1);
    const ComplexMatrix out = apply_channel(ch, random_density(2, rng));
    EXPECT_LT((out - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Depolarization, MatchesPartialTraceReplacement) {
    Rng rng(2);
    struct Case {
        int n;
        std::vector<int> sites;
        int q;
    };
    for (const Case& c : {Case{2, {0}, 2}, Case{2, {1}, 2}, Case{3, {0, 2}, 2}, Case{2, {1}, 3}}) {
        const NoiseChannel ch = complete_depolarization(c.n, c.sites, c.q);
        const ComplexMatrix rho = random_density(ch.dim(), rng);
        const ComplexMatrix expect = replace_with_mixed(rho, c.sites, c.n, c.q);
        EXPECT_LT((apply_channel(ch, rho) - expect).cwiseAbs().maxCoeff(), 1e-13)
            << "n=" << c.n << " q=" << c.q;
    }
}

TEST(RandomLocalChannel, ExpandsExactlyAndIsDeterministic) {
    for (int rank : {1, 2, 4}) {
        const NoiseChannel a = random_local_channel(4, {2, 0}, 2, rank, 17);
        const NoiseChannel b = random_local_channel(4, {0, 2}, 2, rank, 17);
        ASSERT_EQ(a.rank(), rank);
        for (double res : a.residuals) {
            EXPECT_LT(res, 1e-10);
        }
        EXPECT_LT(cptp_defect(a.kraus), 1e-12);
        EXPECT_EQ((a.coeffs - b.coeffs).cwiseAbs().maxCoeff(), 0.0);
        EXPECT_NEAR(coefficient_vector(a).norm(), 1.0, 1e-12);
    }
}

TEST(RandomLocalChannel, RankOneIsUnitary) {
    const NoiseChannel ch = random_local_channel(3, {1}, 3, 1, 5);
    const ComplexMatrix u = ch.kraus[0].to_dense();
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RandomLocalChannel, RejectsBadRank) {
    EXPECT_THROW(random_local_channel(2, {0}, 2, 0, 1), InvalidInputError);
    EXPECT_THROW(random_local_channel(2, {0}, 2, 5, 1), InvalidInputError);
}

TEST(KrausCoefficients, ErrorOperatorsAndSuperpositions) {
    const UnitaryErrorSet set = gen_weight_set(2, 1, 2);
    const KrausExpansion e2 = kraus_coefficients(KrausOperator(to_dense(set.op(2))), set);
    for (Index i = 0; i < e2.coeffs.size(); ++i) {
        EXPECT_NEAR(std::abs(e2.coeffs(i)), i == 2 ? 1.0 : 0.0, 1e-14);
    }
    EXPECT_LT(e2.residual, 1e-12);

    const ComplexMatrix sum = (to_dense(set.op(1)) + to_dense(set.op(2))) / std::sqrt(2.0);
    const KrausExpansion s = kraus_coefficients(KrausOperator(sum), set);
    EXPECT_NEAR(s.coeffs(1).real(), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(s.coeffs(2).real(), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_LT(s.residual, 1e-12);

    // YY has weight two and lies outside the weight-one span.
    const UnitaryErrorSet w2 = gen_weight_set(2, 2, 2);
    const ComplexMatrix yy = to_dense(w2.op(w2.size() - 1));
    EXPECT_NEAR(kraus_coefficients(KrausOperator(yy), set).residual, 2.0, 1e-12);
}

TEST(KrausOperator, StorageFormsAgree) {
    const NoiseChannel ch = random_local_channel(3, {0, 2}, 2, 3, 8);
    Rng rng(3);
    const ComplexMatrix v = complex_gaussian(8, 2, 1.0, rng);
    for (const auto& k : ch.kraus) {
        const ComplexMatrix dense = k.to_dense();
        EXPECT_LT((k.apply(v) - dense * v).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_NEAR(k.frobenius_norm_sq(), dense.squaredNorm(), 1e-13);
        for (Index col = 0; col < 8; ++col) {
            ComplexVector rebuilt = ComplexVector::Zero(8);
            k.for_each_in_column(col, [&](Index row, Complex val) { rebuilt(row) += val; });
            EXPECT_LT((rebuilt - dense.col(col)).cwiseAbs().maxCoeff(), 1e-15);
            EXPECT_EQ(k.entry(3, col), dense(3, col));
        }
    }
}

TEST(MakeChannel, RejectsNonTracePreserving) {
    auto set = std::make_shared<const UnitaryErrorSet>(gen_weight_set(1, 1, 2));
    std::vector<KrausOperator> kraus;
    kraus.emplace_back(ComplexMatrix(ComplexMatrix::Identity(2, 2) * 0.5));
    EXPECT_THROW(make_channel(set, kraus), InvalidInputError);
    ComplexMatrix wrong = ComplexMatrix::Identity(4, 4);
    std::vector<KrausOperator> big;
    big.emplace_back(wrong);
    EXPECT_THROW(make_channel(set, big), DimensionError);
}

TEST(IdentityChannel, LeavesStatesAlone) {
    auto set = std::make_shared<const UnitaryErrorSet>(gen_erasure_set(3, {1}, 2));
    const NoiseChannel ch = identity_channel(set);
    Rng rng(4);
    const ComplexMatrix rho = random_density(8, rng);
    EXPECT_LT((apply_channel(ch, rho) - rho).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Stinespring, IsometryConsistentWithKraus) {
    const NoiseChannel ch = random_local_channel(3, {1, 2}, 2, 5, 12);
    const StinespringIsometry st = stinespring(ch);
    const Index N = ch.dim();
    const Index R = st.R;
    EXPECT_LT((st.matrix.adjoint() * st.matrix - ComplexMatrix::Identity(N, N)).cwiseAbs().maxCoeff(), 1e-12);
    Rng rng(5);
    const ComplexMatrix rho = random_density(N, rng);
    const ComplexMatrix big = st.matrix * rho * st.matrix.adjoint();
    ComplexMatrix reduced = ComplexMatrix::Zero(N, N);
    for (Index a = 0; a < N; ++a) {
        for (Index b = 0; b < N; ++b) {
            for (Index r = 0; r < R; ++r) {
                reduced(a, b) += big(a * R + r, b * R + r);
            }
        }
    }
    EXPECT_LT((reduced - apply_channel(ch, rho)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_THROW(stinespring(ch, 10), BudgetError);
}
