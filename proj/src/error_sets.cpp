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

#include "haarqec/error_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "haarqec/errors.hpp"

namespace haarqec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_same_dim(Index a, Index b, std::string_view what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

// Per-qudit digit strides, most significant qudit first.
std::vector<Index> strides(int n, int q) {
    std::vector<Index> s(n);
    Index stride = 1;
    for (int k = n - 1; k >= 0; --k) {
        s[k] = stride;
        stride *= q;
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

MonomialOperator::MonomialOperator(std::vector<Index> perm, std::vector<Complex> phases)
    : perm_(std::move(perm)), phases_(std::move(phases)) {
    if (perm_.size() != phases_.size()) {
        throw DimensionError("MonomialOperator: perm and phases differ in length");
    }
    if (perm_.empty()) {
        throw DimensionError("MonomialOperator: empty operator");
    }
    std::vector<bool> seen(perm_.size(), false);
    for (Index p : perm_) {
        if (p < 0 || p >= dim() || seen[p]) {
            throw DimensionError("MonomialOperator: perm is not a bijection");
        }
        seen[p] = true;
    }
}

MonomialOperator MonomialOperator::identity(Index dim) {
    std::vector<Index> perm(dim);
    for (Index j = 0; j < dim; ++j) {
        perm[j] = j;
    }
    return MonomialOperator(std::move(perm), std::vector<Complex>(dim, Complex(1.0, 0.0)));
}

ComplexMatrix MonomialOperator::apply(const ComplexMatrix& v) const {
    require_same_dim(dim(), v.rows(), "MonomialOperator::apply");
    ComplexMatrix out(v.rows(), v.cols());
    for (Index c = 0; c < v.cols(); ++c) {
        for (Index j = 0; j < dim(); ++j) {
            out(perm_[j], c) = phases_[j] * v(j, c);
        }
    }
    return out;
}

ComplexMatrix MonomialOperator::apply_adjoint(const ComplexMatrix& v) const {
    require_same_dim(dim(), v.rows(), "MonomialOperator::apply_adjoint");
    ComplexMatrix out(v.rows(), v.cols());
    for (Index c = 0; c < v.cols(); ++c) {
        for (Index j = 0; j < dim(); ++j) {
            out(j, c) = std::conj(phases_[j]) * v(perm_[j], c);
        }
    }
    return out;
}

ComplexMatrix MonomialOperator::to_dense() const {
    ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
    for (Index j = 0; j < dim(); ++j) {
        m(perm_[j], j) = phases_[j];
    }
    return m;
}

bool MonomialOperator::is_identity(double tol) const {
    for (Index j = 0; j < dim(); ++j) {
        if (perm_[j] != j || std::abs(phases_[j] - 1.0) > tol) {
            return false;
        }
    }
    return true;
}

double MonomialOperator::unitarity_defect() const {
    double worst = 0.0;
    for (const Complex& p : phases_) {
        worst = std::max(worst, std::abs(std::norm(p) - 1.0));
    }
    return worst;
}

MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b) {
    require_same_dim(a.dim(), b.dim(), "compose");
    std::vector<Index> perm(a.dim());
    std::vector<Complex> phases(a.dim());
    for (Index j = 0; j < a.dim(); ++j) {
        const Index mid = b.perm()[j];
        perm[j] = a.perm()[mid];
        phases[j] = a.phases()[mid] * b.phases()[j];
    }
    return MonomialOperator(std::move(perm), std::move(phases));
}

MonomialOperator adjoint(const MonomialOperator& a) {
    std::vector<Index> perm(a.dim());
    std::vector<Complex> phases(a.dim());
    for (Index j = 0; j < a.dim(); ++j) {
        perm[a.perm()[j]] = j;
        phases[a.perm()[j]] = std::conj(a.phases()[j]);
    }
    return MonomialOperator(std::move(perm), std::move(phases));
}

Complex trace_overlap(const MonomialOperator& a, const MonomialOperator& b) {
    require_same_dim(a.dim(), b.dim(), "trace_overlap");
    Complex acc(0.0, 0.0);
    for (Index j = 0; j < a.dim(); ++j) {
        if (a.perm()[j] == b.perm()[j]) {
            acc += std::conj(a.phases()[j]) * b.phases()[j];
        }
    }
    return acc;
}

// ---------------------------------------------------------------- Pauli

Complex root_of_unity(int q, long k) {
    k %= q;
    if (k < 0) {
        k += q;
    }
    if ((4 * k) % q == 0) {
        switch ((4 * k) / q) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / q);
}

std::vector<Complex> roots_of_unity(int q) {
    std::vector<Complex> out(q);
    for (int k = 0; k < q; ++k) {
        out[k] = root_of_unity(q, k);
    }
    return out;
}

Index qudit_dim(int n, int q) {
    if (n < 0 || q < 2) {
        throw DimensionError("qudit_dim: need n >= 0 and q >= 2");
    }
    Index dim = 1;
    for (int k = 0; k < n; ++k) {
        if (dim > std::numeric_limits<Index>::max() / q) {
            throw BudgetError("qudit_dim: q^n overflows");
        }
        dim *= q;
    }
    return dim;
}

GeneralizedPauli::GeneralizedPauli(int q, std::vector<std::uint8_t> x, std::vector<std::uint8_t> z)
    : q_(q), x_(std::move(x)), z_(std::move(z)) {
    if (q_ < 2 || q_ > 255) {
        throw DimensionError("GeneralizedPauli: local dimension must lie in [2, 255]");
    }
    if (x_.size() != z_.size()) {
        throw DimensionError("GeneralizedPauli: exponent vectors differ in length");
    }
    for (std::size_t k = 0; k < x_.size(); ++k) {
        if (x_[k] >= q_ || z_[k] >= q_) {
            throw DimensionError("GeneralizedPauli: exponent out of range");
        }
    }
}

GeneralizedPauli GeneralizedPauli::identity(int n, int q) {
    return GeneralizedPauli(q, std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0));
}

Index GeneralizedPauli::dim() const { return qudit_dim(num_qudits(), q_); }

int GeneralizedPauli::weight() const {
    int w = 0;
    for (std::size_t k = 0; k < x_.size(); ++k) {
        w += (x_[k] != 0 || z_[k] != 0) ? 1 : 0;
    }
    return w;
}

std::vector<int> GeneralizedPauli::support() const {
    std::vector<int> s;
    for (std::size_t k = 0; k < x_.size(); ++k) {
        if (x_[k] != 0 || z_[k] != 0) {
            s.push_back(static_cast<int>(k));
        }
    }
    return s;
}

std::string GeneralizedPauli::label() const {
    std::string out;
    if (q_ == 2) {
        for (std::size_t k = 0; k < x_.size(); ++k) {
            out += "IZXY"[2 * x_[k] + z_[k]];
        }
        return out;
    }
    for (std::size_t k = 0; k < x_.size(); ++k) {
        if (k > 0) {
            out += '.';
        }
        if (x_[k] == 0 && z_[k] == 0) {
            out += 'I';
            continue;
        }
        if (x_[k] != 0) {
            out += "X" + std::to_string(x_[k]);
        }
        if (z_[k] != 0) {
            out += "Z" + std::to_string(z_[k]);
        }
    }
    return out;
}

std::pair<Index, Complex> GeneralizedPauli::column(Index j) const {
    const int n = num_qudits();
    Index row = 0;
    Index stride = 1;
    long phase_exp = 0;
    int ys = 0;
    Index rest = j;
    for (int k = n - 1; k >= 0; --k) {
        const int digit = static_cast<int>(rest % q_);
        rest /= q_;
        row += static_cast<Index>((digit + x_[k]) % q_) * stride;
        stride *= q_;
        phase_exp += static_cast<long>(z_[k]) * digit;
        ys += (q_ == 2 && x_[k] == 1 && z_[k] == 1) ? 1 : 0;
    }
    Complex phase = root_of_unity(q_, phase_exp % q_);
    if (ys % 4 != 0) {
        phase *= root_of_unity(4, ys % 4);
    }
    return {row, phase};
}

MonomialOperator GeneralizedPauli::to_monomial() const {
    const int n = num_qudits();
    const Index dim = this->dim();
    const std::vector<Complex> roots = roots_of_unity(q_);
    const std::vector<Index> stride = strides(n, q_);
    int ys = 0;
    for (int k = 0; k < n; ++k) {
        ys += (q_ == 2 && x_[k] == 1 && z_[k] == 1) ? 1 : 0;
    }
    const Complex global = root_of_unity(4, ys % 4);

    std::vector<Index> perm(dim);
    std::vector<Complex> phases(dim);
    std::vector<int> digits(n, 0);
    for (Index j = 0; j < dim; ++j) {
        Index row = 0;
        long e = 0;
        for (int k = 0; k < n; ++k) {
            row += static_cast<Index>((digits[k] + x_[k]) % q_) * stride[k];
            e += static_cast<long>(z_[k]) * digits[k];
        }
        perm[j] = row;
        phases[j] = roots[e % q_] * global;
        // odometer increment, least significant qudit last
        for (int k = n - 1; k >= 0; --k) {
            if (++digits[k] < q_) {
                break;
            }
            digits[k] = 0;
        }
    }
    return MonomialOperator(std::move(perm), std::move(phases));
}

// ---------------------------------------------------------------- ErrorOperator

Index operator_dim(const ErrorOperator& op) {
    return std::visit(overloaded{
                          [](const GeneralizedPauli& p) { return p.dim(); },
                          [](const MonomialOperator& m) { return m.dim(); },
                          [](const ComplexMatrix& d) { return d.rows(); },
                      },
                      op);
}

ComplexMatrix apply(const ErrorOperator& op, const ComplexMatrix& v) {
    return std::visit(overloaded{
                          [&](const GeneralizedPauli& p) { return p.to_monomial().apply(v); },
                          [&](const MonomialOperator& m) { return m.apply(v); },
                          [&](const ComplexMatrix& d) {
                              require_same_dim(d.cols(), v.rows(), "apply");
                              return ComplexMatrix(d * v);
                          },
                      },
                      op);
}

ComplexMatrix apply_adjoint(const ErrorOperator& op, const ComplexMatrix& v) {
    return std::visit(overloaded{
                          [&](const GeneralizedPauli& p) { return p.to_monomial().apply_adjoint(v); },
                          [&](const MonomialOperator& m) { return m.apply_adjoint(v); },
                          [&](const ComplexMatrix& d) {
                              require_same_dim(d.rows(), v.rows(), "apply_adjoint");
                              return ComplexMatrix(d.adjoint() * v);
                          },
                      },
                      op);
}

ComplexMatrix to_dense(const ErrorOperator& op) {
    return std::visit(overloaded{
                          [](const GeneralizedPauli& p) { return p.to_monomial().to_dense(); },
                          [](const MonomialOperator& m) { return m.to_dense(); },
                          [](const ComplexMatrix& d) { return d; },
                      },
                      op);
}

std::optional<MonomialOperator> as_monomial(const ErrorOperator& op) {
    if (const auto* p = std::get_if<GeneralizedPauli>(&op)) {
        return p->to_monomial();
    }
    if (const auto* m = std::get_if<MonomialOperator>(&op)) {
        return *m;
    }
    return std::nullopt;
}

bool is_identity_operator(const ErrorOperator& op, double tol) {
    return std::visit(
        overloaded{
            [](const GeneralizedPauli& p) { return p.is_identity(); },
            [&](const MonomialOperator& m) { return m.is_identity(tol); },
            [&](const ComplexMatrix& d) {
                return d.rows() == d.cols() &&
                       (d - ComplexMatrix::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff() <= tol;
            },
        },
        op);
}

void for_each_nonzero(const ErrorOperator& op,
                      const std::function<void(Index, Index, Complex)>& f) {
    if (const auto* p = std::get_if<GeneralizedPauli>(&op)) {
        const MonomialOperator m = p->to_monomial();
        for (Index j = 0; j < m.dim(); ++j) {
            f(m.perm()[j], j, m.phases()[j]);
        }
    } else if (const auto* m = std::get_if<MonomialOperator>(&op)) {
        for (Index j = 0; j < m->dim(); ++j) {
            f(m->perm()[j], j, m->phases()[j]);
        }
    } else {
        const auto& d = std::get<ComplexMatrix>(op);
        for (Index c = 0; c < d.cols(); ++c) {
            for (Index r = 0; r < d.rows(); ++r) {
                if (d(r, c) != Complex(0.0, 0.0)) {
                    f(r, c, d(r, c));
                }
            }
        }
    }
}

// ---------------------------------------------------------------- UnitaryErrorSet

UnitaryErrorSet::UnitaryErrorSet(Index dim, std::vector<ErrorOperator> ops,
                                 std::vector<std::string> labels, std::string descriptor)
    : dim_(dim), ops_(std::move(ops)), labels_(std::move(labels)), descriptor_(std::move(descriptor)) {
    if (ops_.empty()) {
        throw DimensionError("UnitaryErrorSet: at least one operator is required");
    }
    for (const auto& op : ops_) {
        if (const auto* d = std::get_if<ComplexMatrix>(&op); d != nullptr && d->rows() != d->cols()) {
            throw DimensionError("UnitaryErrorSet: dense operator is not square");
        }
        require_same_dim(dim_, operator_dim(op), "UnitaryErrorSet");
    }
    if (!labels_.empty() && labels_.size() != ops_.size()) {
        throw DimensionError("UnitaryErrorSet: label count differs from operator count");
    }
}

bool UnitaryErrorSet::all_pauli() const {
    return std::all_of(ops_.begin(), ops_.end(),
                       [](const auto& op) { return std::holds_alternative<GeneralizedPauli>(op); });
}

bool UnitaryErrorSet::all_monomial() const {
    return std::none_of(ops_.begin(), ops_.end(),
                        [](const auto& op) { return std::holds_alternative<ComplexMatrix>(op); });
}

std::optional<std::size_t> UnitaryErrorSet::identity_index() const {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (is_identity_operator(ops_[i])) {
            return i;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- validation

namespace {

// Exponent-based path. tr(P^dagger Q) of tensor products factorizes over
// sites, and for a single site it vanishes unless (a, b) agree. So distinct
// exponent strings are orthogonal and the numeric residue of any pair is at
// most the largest off-diagonal single-site overlap.
ValidationReport validate_structural(const UnitaryErrorSet& set, int q, double tol) {
    ValidationReport report;
    report.size = set.size();
    report.structural = true;

    const int n = std::get<GeneralizedPauli>(set.op(0)).num_qudits();
    std::vector<ComplexMatrix> site(q * q);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            GeneralizedPauli p(q, {static_cast<std::uint8_t>(a)}, {static_cast<std::uint8_t>(b)});
            site[a * q + b] = p.to_monomial().to_dense();
        }
    }
    double site_defect = 0.0;
    double site_overlap = 0.0;
    for (int u = 0; u < q * q; ++u) {
        const ComplexMatrix prod = site[u].adjoint() * site[u];
        site_defect = std::max(site_defect,
                               hermitian_norm(prod - ComplexMatrix::Identity(q, q)));
        for (int v = 0; v < q * q; ++v) {
            if (u != v) {
                const Complex tr = (site[u].adjoint() * site[v]).trace();
                site_overlap = std::max(site_overlap, std::abs(tr) / q);
            }
        }
    }
    report.max_unitarity_defect = n * site_defect;

    std::unordered_map<std::string, std::size_t> seen;
    seen.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& p = std::get<GeneralizedPauli>(set.op(i));
        std::string key(p.x().begin(), p.x().end());
        key.append(p.z().begin(), p.z().end());
        auto [it, inserted] = seen.emplace(std::move(key), i);
        if (!inserted && !report.worst_pair) {
            report.worst_pair = std::make_pair(it->second, i);
        }
    }
    if (report.worst_pair) {
        report.max_overlap = 1.0;
    } else if (set.size() > 1) {
        report.max_overlap = site_overlap;
    }
    report.passed = report.max_unitarity_defect <= tol && report.max_overlap <= tol;
    return report;
}

}  // namespace

ValidationReport validate_numeric(const UnitaryErrorSet& set, double tol, std::size_t element_cap) {
    ValidationReport report;
    report.size = set.size();
    const std::size_t m = set.size();
    const auto dim = static_cast<std::size_t>(set.dim());
    const std::size_t per_op = set.all_monomial() ? dim : dim * dim;
    if (per_op > element_cap / m) {
        throw BudgetError("validate: materializing " + std::to_string(m) +
                          " operators exceeds the element cap");
    }

    if (set.all_monomial()) {
        std::vector<MonomialOperator> mono;
        mono.reserve(m);
        for (const auto& op : set.ops()) {
            mono.push_back(*as_monomial(op));
            report.max_unitarity_defect =
                std::max(report.max_unitarity_defect, mono.back().unitarity_defect());
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const double ov = std::abs(trace_overlap(mono[i], mono[j])) / set.dim();
                if (!report.worst_pair || ov > report.max_overlap) {
                    report.max_overlap = ov;
                    report.worst_pair = std::make_pair(i, j);
                }
            }
        }
    } else {
        std::vector<ComplexMatrix> dense;
        dense.reserve(m);
        const ComplexMatrix id = ComplexMatrix::Identity(set.dim(), set.dim());
        for (const auto& op : set.ops()) {
            dense.push_back(to_dense(op));
            require_finite(dense.back(), "validate");
            report.max_unitarity_defect = std::max(
                report.max_unitarity_defect, hermitian_norm(dense.back().adjoint() * dense.back() - id));
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const double ov =
                    std::abs(dense[i].cwiseProduct(dense[j].conjugate()).sum()) / set.dim();
                if (!report.worst_pair || ov > report.max_overlap) {
                    report.max_overlap = ov;
                    report.worst_pair = std::make_pair(i, j);
                }
            }
        }
    }
    report.passed = report.max_unitarity_defect <= tol && report.max_overlap <= tol;
    if (report.passed) {
        report.worst_pair.reset();
    }
    return report;
}

ValidationReport validate(const UnitaryErrorSet& set, double tol, std::size_t element_cap) {
    if (set.all_pauli()) {
        const auto& first = std::get<GeneralizedPauli>(set.op(0));
        const bool uniform = std::all_of(set.ops().begin(), set.ops().end(), [&](const auto& op) {
            const auto& p = std::get<GeneralizedPauli>(op);
            return p.q() == first.q() && p.num_qudits() == first.num_qudits();
        });
        if (uniform) {
            return validate_structural(set, first.q(), tol);
        }
    }
    return validate_numeric(set, tol, element_cap);
}

// ---------------------------------------------------------------- generators

std::size_t weight_set_size(int n, int t, int q) {
    if (n < 0 || t < 0 || t > n || q < 2) {
        throw DimensionError("weight_set_size: need 0 <= t <= n and q >= 2");
    }
    constexpr double limit = static_cast<double>(std::numeric_limits<std::size_t>::max() / 4);
    double total = 0.0;
    double binom = 1.0;
    double power = 1.0;
    std::size_t exact = 0;
    for (int i = 0; i <= t; ++i) {
        if (i > 0) {
            binom = binom * (n - i + 1) / i;
            power *= static_cast<double>(q) * q - 1;
        }
        total += binom * power;
        if (total > limit) {
            throw BudgetError("weight_set_size: count overflows");
        }
        exact += static_cast<std::size_t>(std::llround(binom * power));
    }
    return exact;
}

namespace {

// Enumerates generalized Paulis supported within `sites` with weight <= t,
// ordered by (weight, support, exponents).
std::vector<GeneralizedPauli> enumerate_paulis(int n, int q, const std::vector<int>& sites, int t) {
    std::vector<std::pair<std::uint8_t, std::uint8_t>> local;
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (a != 0 || b != 0) {
                local.emplace_back(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
            }
        }
    }
    const int s = static_cast<int>(sites.size());
    std::vector<GeneralizedPauli> out;
    out.push_back(GeneralizedPauli::identity(n, q));
    for (int w = 1; w <= std::min(t, s); ++w) {
        std::vector<int> pick(w);
        for (int k = 0; k < w; ++k) {
            pick[k] = k;
        }
        while (true) {
            std::vector<std::size_t> choice(w, 0);
            while (true) {
                std::vector<std::uint8_t> x(n, 0);
                std::vector<std::uint8_t> z(n, 0);
                for (int k = 0; k < w; ++k) {
                    x[sites[pick[k]]] = local[choice[k]].first;
                    z[sites[pick[k]]] = local[choice[k]].second;
                }
                out.emplace_back(q, std::move(x), std::move(z));
                int k = w - 1;
                while (k >= 0 && ++choice[k] == local.size()) {
                    choice[k] = 0;
                    --k;
                }
                if (k < 0) {
                    break;
                }
            }
            int k = w - 1;
            while (k >= 0 && pick[k] == s - w + k) {
                --k;
            }
            if (k < 0) {
                break;
            }
            ++pick[k];
            for (int r = k + 1; r < w; ++r) {
                pick[r] = pick[r - 1] + 1;
            }
        }
    }
    return out;
}

UnitaryErrorSet pack(int n, int q, std::vector<GeneralizedPauli> paulis, std::string descriptor) {
    std::vector<std::string> labels;
    std::vector<ErrorOperator> ops;
    labels.reserve(paulis.size());
    ops.reserve(paulis.size());
    for (auto& p : paulis) {
        labels.push_back(p.label());
        ops.emplace_back(std::move(p));
    }
    return UnitaryErrorSet(qudit_dim(n, q), std::move(ops), std::move(labels), std::move(descriptor));
}

}  // namespace

UnitaryErrorSet gen_weight_set(int n, int t, int q, std::size_t element_cap) {
    if (n < 1) {
        throw DimensionError("gen_weight_set: need n >= 1");
    }
    const std::size_t m = weight_set_size(n, t, q);
    if (m > element_cap / static_cast<std::size_t>(n)) {
        throw BudgetError("gen_weight_set: " + std::to_string(m) + " operators on " +
                          std::to_string(n) + " qudits exceed the element cap");
    }
    qudit_dim(n, q);
    std::vector<int> all(n);
    for (int k = 0; k < n; ++k) {
        all[k] = k;
    }
    std::ostringstream desc;
    desc << "weight(n=" << n << ",t=" << t << ",q=" << q << ")";
    return pack(n, q, enumerate_paulis(n, q, all, t), desc.str());
}

UnitaryErrorSet gen_erasure_set(int n, const std::vector<int>& sites, int q, std::size_t element_cap) {
    if (n < 1) {
        throw DimensionError("gen_erasure_set: need n >= 1");
    }
    std::vector<int> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] < 0 || sorted[k] >= n) {
            throw DimensionError("gen_erasure_set: site index " + std::to_string(sorted[k]) +
                                 " out of range [0, " + std::to_string(n) + ")");
        }
        if (k > 0 && sorted[k] == sorted[k - 1]) {
            throw DimensionError("gen_erasure_set: duplicate site " + std::to_string(sorted[k]));
        }
    }
    const Index m = qudit_dim(2 * static_cast<int>(sorted.size()), q);
    if (static_cast<std::size_t>(m) > element_cap / static_cast<std::size_t>(n)) {
        throw BudgetError("gen_erasure_set: operator count exceeds the element cap");
    }
    qudit_dim(n, q);
    std::ostringstream desc;
    desc << "erasure(n=" << n << ",q=" << q << ",S={";
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        desc << (k ? "," : "") << sorted[k];
    }
    desc << "})";
    return pack(n, q, enumerate_paulis(n, q, sorted, static_cast<int>(sorted.size())), desc.str());
}

}  // namespace haarqec
