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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "haarqec/codes.hpp"
#include "haarqec/errors.hpp"

namespace haarqec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Index bookkeeping for a factor acting on a subset of qudits.
struct LocalLayout {
    int q = 2;
    Index local_dim = 1;
    std::vector<Index> site_stride;  // stride of each listed site in the full index
    std::vector<Index> offset;       // full-index offset of each local basis state

    LocalLayout(const LocalOperator& op) : q(op.q) {
        const int s = static_cast<int>(op.sites.size());
        site_stride.resize(s);
        for (int k = 0; k < s; ++k) {
            site_stride[k] = qudit_dim(op.n - 1 - op.sites[k], q);
        }
        local_dim = qudit_dim(s, q);
        offset.resize(local_dim);
        for (Index loc = 0; loc < local_dim; ++loc) {
            Index rest = loc;
            Index off = 0;
            for (int k = s - 1; k >= 0; --k) {
                off += (rest % q) * site_stride[k];
                rest /= q;
            }
            offset[loc] = off;
        }
    }

    // (local index, index with the listed sites zeroed)
    std::pair<Index, Index> split(Index full) const {
        Index loc = 0;
        Index base = full;
        for (std::size_t k = 0; k < site_stride.size(); ++k) {
            const Index digit = (full / site_stride[k]) % q;
            loc = loc * q + digit;
            base -= digit * site_stride[k];
        }
        return {loc, base};
    }
};

void check_local(const LocalOperator& op) {
    if (op.n < 1 || op.q < 2) {
        throw DimensionError("LocalOperator: need n >= 1 and q >= 2");
    }
    std::vector<int> sorted = op.sites;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] < 0 || sorted[k] >= op.n || (k > 0 && sorted[k] == sorted[k - 1])) {
            throw DimensionError("LocalOperator: sites must be distinct and within [0, n)");
        }
    }
    const Index d = qudit_dim(static_cast<int>(op.sites.size()), op.q);
    if (op.factor.rows() != d || op.factor.cols() != d) {
        throw DimensionError("LocalOperator: factor must be q^|S| x q^|S|");
    }
    require_finite(op.factor, "LocalOperator");
}

}  // namespace

// ---------------------------------------------------------------- KrausOperator

KrausOperator::KrausOperator(ComplexMatrix dense) : storage_(std::move(dense)) {
    const auto& d = std::get<ComplexMatrix>(storage_);
    if (d.rows() != d.cols() || d.rows() == 0) {
        throw DimensionError("KrausOperator: dense operator must be square and non-empty");
    }
    require_finite(d, "KrausOperator");
    dim_ = d.rows();
}

KrausOperator::KrausOperator(LocalOperator local) : storage_(std::move(local)) {
    const auto& l = std::get<LocalOperator>(storage_);
    check_local(l);
    dim_ = qudit_dim(l.n, l.q);
}

KrausOperator::KrausOperator(ScaledErrorOperator scaled) : storage_(std::move(scaled)) {
    dim_ = operator_dim(std::get<ScaledErrorOperator>(storage_).op);
}

ComplexMatrix KrausOperator::apply(const ComplexMatrix& v) const {
    if (v.rows() != dim_) {
        throw DimensionError("KrausOperator::apply: dimension mismatch");
    }
    return std::visit(
        overloaded{
            [&](const ComplexMatrix& d) { return ComplexMatrix(d * v); },
            [&](const ScaledErrorOperator& s) { return ComplexMatrix(s.scale * haarqec::apply(s.op, v)); },
            [&](const LocalOperator& l) {
                const LocalLayout layout(l);
                const Index d = layout.local_dim;
                ComplexMatrix out(v.rows(), v.cols());
                ComplexMatrix block(d, v.cols());
                for (Index base = 0; base < dim_; ++base) {
                    if (layout.split(base).first != 0) {
                        continue;
                    }
                    for (Index s = 0; s < d; ++s) {
                        block.row(s) = v.row(base + layout.offset[s]);
                    }
                    const ComplexMatrix mapped = l.factor * block;
                    for (Index s = 0; s < d; ++s) {
                        out.row(base + layout.offset[s]) = mapped.row(s);
                    }
                }
                return out;
            },
        },
        storage_);
}

Complex KrausOperator::entry(Index row, Index col) const {
    return std::visit(
        overloaded{
            [&](const ComplexMatrix& d) { return d(row, col); },
            [&](const ScaledErrorOperator& s) {
                if (const auto* dense = std::get_if<ComplexMatrix>(&s.op)) {
                    return s.scale * (*dense)(row, col);
                }
                if (const auto* p = std::get_if<GeneralizedPauli>(&s.op)) {
                    const auto [r, ph] = p->column(col);
                    return r == row ? s.scale * ph : Complex(0.0, 0.0);
                }
                const auto& mono = std::get<MonomialOperator>(s.op);
                return mono.perm()[col] == row ? s.scale * mono.phases()[col] : Complex(0.0, 0.0);
            },
            [&](const LocalOperator& l) {
                const LocalLayout layout(l);
                const auto [lr, br] = layout.split(row);
                const auto [lc, bc] = layout.split(col);
                return br == bc ? l.factor(lr, lc) : Complex(0.0, 0.0);
            },
        },
        storage_);
}

void KrausOperator::for_each_in_column(Index col, const std::function<void(Index, Complex)>& f) const {
    std::visit(overloaded{
                   [&](const ComplexMatrix& d) {
                       for (Index r = 0; r < d.rows(); ++r) {
                           f(r, d(r, col));
                       }
                   },
                   [&](const ScaledErrorOperator& s) {
                       if (const auto* dense = std::get_if<ComplexMatrix>(&s.op)) {
                           for (Index r = 0; r < dense->rows(); ++r) {
                               f(r, s.scale * (*dense)(r, col));
                           }
                       } else if (const auto* p = std::get_if<GeneralizedPauli>(&s.op)) {
                           const auto [r, ph] = p->column(col);
                           f(r, s.scale * ph);
                       } else {
                           const auto& mono = std::get<MonomialOperator>(s.op);
                           f(mono.perm()[col], s.scale * mono.phases()[col]);
                       }
                   },
                   [&](const LocalOperator& l) {
                       const LocalLayout layout(l);
                       const auto [lc, base] = layout.split(col);
                       for (Index s = 0; s < layout.local_dim; ++s) {
                           f(base + layout.offset[s], l.factor(s, lc));
                       }
                   },
               },
               storage_);
}

double KrausOperator::frobenius_norm_sq() const {
    return std::visit(overloaded{
                          [](const ComplexMatrix& d) { return d.squaredNorm(); },
                          [&](const ScaledErrorOperator& s) {
                              if (const auto* dense = std::get_if<ComplexMatrix>(&s.op)) {
                                  return std::norm(s.scale) * dense->squaredNorm();
                              }
                              return std::norm(s.scale) * static_cast<double>(dim_);
                          },
                          [&](const LocalOperator& l) {
                              const Index d = l.factor.rows();
                              return l.factor.squaredNorm() * static_cast<double>(dim_ / d);
                          },
                      },
                      storage_);
}

ComplexMatrix KrausOperator::to_dense() const {
    return apply(ComplexMatrix::Identity(dim_, dim_));
}

// ---------------------------------------------------------------- expansion

KrausExpansion kraus_coefficients(const KrausOperator& k, const UnitaryErrorSet& set,
                                  std::size_t element_cap) {
    if (k.dim() != set.dim()) {
        throw DimensionError("kraus_coefficients: Kraus operator and error set dimensions differ");
    }
    const Index N = set.dim();
    const auto m = static_cast<Index>(set.size());
    const std::size_t per_op = set.all_monomial() ? static_cast<std::size_t>(N)
                                                  : static_cast<std::size_t>(N) * N;
    if (per_op > element_cap / static_cast<std::size_t>(m)) {
        throw BudgetError("kraus_coefficients: error set too large to expand against");
    }

    KrausExpansion out;
    out.coeffs = ComplexVector::Zero(m);
    std::vector<std::optional<MonomialOperator>> mono(m);
    std::vector<ComplexMatrix> dense(m);
    for (Index i = 0; i < m; ++i) {
        mono[i] = as_monomial(set.op(i));
        if (!mono[i]) {
            dense[i] = to_dense(set.op(i));
        }
    }

    for (Index i = 0; i < m; ++i) {
        Complex acc(0.0, 0.0);
        if (mono[i]) {
            for (Index j = 0; j < N; ++j) {
                acc += std::conj(mono[i]->phases()[j]) * k.entry(mono[i]->perm()[j], j);
            }
        } else {
            for (Index c = 0; c < N; ++c) {
                k.for_each_in_column(c, [&](Index r, Complex v) { acc += std::conj(dense[i](r, c)) * v; });
            }
        }
        out.coeffs(i) = acc / static_cast<double>(N);
    }

    // Residual column by column on the union of structural nonzeros.
    ComplexVector scratch = ComplexVector::Zero(N);
    std::vector<char> touched(N, 0);
    std::vector<Index> rows;
    double sq = 0.0;
    for (Index c = 0; c < N; ++c) {
        auto touch = [&](Index r, Complex v) {
            if (!touched[r]) {
                touched[r] = 1;
                rows.push_back(r);
            }
            scratch(r) += v;
        };
        k.for_each_in_column(c, touch);
        for (Index i = 0; i < m; ++i) {
            const Complex ci = out.coeffs(i);
            if (ci == Complex(0.0, 0.0)) {
                continue;
            }
            if (mono[i]) {
                touch(mono[i]->perm()[c], -ci * mono[i]->phases()[c]);
            } else {
                for (Index r = 0; r < N; ++r) {
                    touch(r, -ci * dense[i](r, c));
                }
            }
        }
        for (Index r : rows) {
            sq += std::norm(scratch(r));
            scratch(r) = 0.0;
            touched[r] = 0;
        }
        rows.clear();
    }
    out.residual = std::sqrt(sq);
    return out;
}

// ---------------------------------------------------------------- channels

double cptp_defect(const std::vector<KrausOperator>& kraus, std::size_t element_cap) {
    if (kraus.empty()) {
        throw InvalidInputError("cptp_defect: no Kraus operators");
    }
    const Index N = kraus.front().dim();

    const auto* first_local = std::get_if<LocalOperator>(&kraus.front().storage());
    const bool same_local =
        first_local != nullptr && std::all_of(kraus.begin(), kraus.end(), [&](const KrausOperator& k) {
            const auto* l = std::get_if<LocalOperator>(&k.storage());
            return l != nullptr && l->n == first_local->n && l->q == first_local->q &&
                   l->sites == first_local->sites;
        });
    if (same_local) {
        const Index d = first_local->factor.rows();
        ComplexMatrix acc = ComplexMatrix::Zero(d, d);
        for (const auto& k : kraus) {
            const auto& f = std::get<LocalOperator>(k.storage()).factor;
            acc += f.adjoint() * f;
        }
        return hermitian_norm(acc - ComplexMatrix::Identity(d, d));
    }

    const bool all_scaled = std::all_of(kraus.begin(), kraus.end(), [](const KrausOperator& k) {
        return std::holds_alternative<ScaledErrorOperator>(k.storage());
    });
    if (all_scaled) {
        // sum_r |s_r|^2 U_r^dagger U_r = (sum_r |s_r|^2) I for unitary U_r.
        double weight = 0.0;
        double unitarity = 0.0;
        for (const auto& k : kraus) {
            const auto& s = std::get<ScaledErrorOperator>(k.storage());
            weight += std::norm(s.scale);
            if (auto mono = as_monomial(s.op)) {
                unitarity = std::max(unitarity, std::norm(s.scale) * mono->unitarity_defect());
            } else {
                const auto& d = std::get<ComplexMatrix>(s.op);
                unitarity = std::max(unitarity, std::norm(s.scale) *
                                                    hermitian_norm(d.adjoint() * d -
                                                                   ComplexMatrix::Identity(N, N)));
            }
        }
        return std::abs(weight - 1.0) + static_cast<double>(kraus.size()) * unitarity;
    }

    if (static_cast<std::size_t>(N) * N > element_cap) {
        throw BudgetError("cptp_defect: dense check exceeds the element cap");
    }
    ComplexMatrix acc = ComplexMatrix::Zero(N, N);
    for (const auto& k : kraus) {
        const ComplexMatrix d = k.to_dense();
        acc += d.adjoint() * d;
    }
    return hermitian_norm(acc - ComplexMatrix::Identity(N, N));
}

NoiseChannel make_channel(std::shared_ptr<const UnitaryErrorSet> set, std::vector<KrausOperator> kraus,
                          double tol, std::size_t element_cap) {
    if (!set) {
        throw InvalidInputError("make_channel: missing error set");
    }
    if (kraus.empty()) {
        throw InvalidInputError("make_channel: no Kraus operators");
    }
    for (const auto& k : kraus) {
        if (k.dim() != set->dim()) {
            throw DimensionError("make_channel: Kraus operator dimension differs from the error set");
        }
    }
    NoiseChannel ch;
    ch.set = std::move(set);
    ch.kraus = std::move(kraus);
    const auto R = static_cast<Index>(ch.kraus.size());
    const auto m = static_cast<Index>(ch.set->size());
    ch.coeffs = ComplexMatrix::Zero(R, m);
    ch.residuals.resize(R);
    for (Index r = 0; r < R; ++r) {
        const KrausExpansion e = kraus_coefficients(ch.kraus[r], *ch.set, element_cap);
        ch.coeffs.row(r) = e.coeffs.transpose();
        ch.residuals[r] = e.residual;
        if (e.residual > tol) {
            throw InvalidInputError("make_channel: Kraus operator " + std::to_string(r) +
                                    " lies outside span{E_i} (residual " + std::to_string(e.residual) + ")");
        }
    }
    const double defect = cptp_defect(ch.kraus, element_cap);
    if (defect > tol) {
        throw InvalidInputError("make_channel: sum K^dagger K deviates from I by " + std::to_string(defect));
    }
    const double weight = ch.coeffs.squaredNorm();
    if (std::abs(weight - 1.0) > tol) {
        throw InvalidInputError("make_channel: sum |c_{r,i}|^2 = " + std::to_string(weight));
    }
    return ch;
}

NoiseChannel mixture_channel(std::shared_ptr<const UnitaryErrorSet> set, const std::vector<double>& probs) {
    if (!set) {
        throw InvalidInputError("mixture_channel: missing error set");
    }
    if (probs.size() != set->size()) {
        throw InvalidInputError("mixture_channel: expected " + std::to_string(set->size()) +
                                " probabilities, got " + std::to_string(probs.size()));
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidInputError("mixture_channel: probabilities must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidInputError("mixture_channel: probabilities sum to " + std::to_string(total));
    }
    std::vector<KrausOperator> kraus;
    kraus.reserve(probs.size());
    for (std::size_t r = 0; r < probs.size(); ++r) {
        kraus.emplace_back(ScaledErrorOperator{Complex(std::sqrt(probs[r]), 0.0), set->op(r)});
    }
    return make_channel(std::move(set), std::move(kraus));
}

NoiseChannel identity_channel(std::shared_ptr<const UnitaryErrorSet> set) {
    if (!set) {
        throw InvalidInputError("identity_channel: missing error set");
    }
    const auto idx = set->identity_index();
    if (!idx) {
        throw InvalidInputError("identity_channel: the error set does not contain the identity");
    }
    std::vector<KrausOperator> kraus;
    kraus.emplace_back(ScaledErrorOperator{Complex(1.0, 0.0), set->op(*idx)});
    return make_channel(std::move(set), std::move(kraus));
}

NoiseChannel complete_depolarization(int n, const std::vector<int>& sites, int q) {
    auto set = std::make_shared<const UnitaryErrorSet>(gen_erasure_set(n, sites, q));
    const std::vector<double> probs(set->size(), 1.0 / static_cast<double>(set->size()));
    return mixture_channel(std::move(set), probs);
}

NoiseChannel random_local_channel(int n, const std::vector<int>& sites, int q, int kraus_rank,
                                  std::uint64_t seed) {
    std::vector<int> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    auto set = std::make_shared<const UnitaryErrorSet>(gen_erasure_set(n, sorted, q));
    const Index d = qudit_dim(static_cast<int>(sorted.size()), q);
    if (kraus_rank < 1 || static_cast<Index>(kraus_rank) > d * d) {
        throw InvalidInputError("random_local_channel: Kraus rank must lie in [1, q^{2|S|}] = [1, " +
                                std::to_string(d * d) + "]");
    }
    const Index R = kraus_rank;
    const ComplexMatrix w = sample_haar_isometry(d * R, d, seed).V;
    std::vector<KrausOperator> kraus;
    kraus.reserve(R);
    for (Index r = 0; r < R; ++r) {
        ComplexMatrix factor(d, d);
        for (Index a = 0; a < d; ++a) {
            factor.row(a) = w.row(a * R + r);
        }
        kraus.emplace_back(LocalOperator{n, q, sorted, std::move(factor)});
    }
    return make_channel(std::move(set), std::move(kraus));
}

StinespringIsometry stinespring(const NoiseChannel& ch, std::size_t element_cap) {
    const Index N = ch.dim();
    const Index R = ch.rank();
    if (static_cast<std::size_t>(N) * N * R > element_cap) {
        throw BudgetError("stinespring: dilation exceeds the element cap");
    }
    const double defect = cptp_defect(ch.kraus, element_cap);
    if (defect > 1e-8) {
        throw InvalidInputError("stinespring: channel is not trace preserving (defect " +
                                std::to_string(defect) + ")");
    }
    StinespringIsometry out;
    out.R = R;
    out.matrix.resize(N * R, N);
    for (Index r = 0; r < R; ++r) {
        const ComplexMatrix k = ch.kraus[r].to_dense();
        for (Index a = 0; a < N; ++a) {
            out.matrix.row(a * R + r) = k.row(a);
        }
    }
    return out;
}

ComplexMatrix apply_channel(const NoiseChannel& ch, const ComplexMatrix& rho) {
    if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
        throw DimensionError("apply_channel: rho must be N x N");
    }
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : ch.kraus) {
        const ComplexMatrix left = k.apply(rho);                // K rho
        out += k.apply(left.adjoint()).adjoint();               // (K (K rho)^dagger)^dagger
    }
    return out;
}

ComplexVector coefficient_vector(const NoiseChannel& ch) {
    const Index R = ch.rank();
    const auto m = static_cast<Index>(ch.set->size());
    ComplexVector c(m * R);
    for (Index i = 0; i < m; ++i) {
        for (Index r = 0; r < R; ++r) {
            c(i * R + r) = ch.coeffs(r, i);
        }
    }
    return c;
}

}  // namespace haarqec
