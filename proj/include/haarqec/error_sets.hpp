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

#ifndef HAARQEC_ERROR_SETS_HPP
#define HAARQEC_ERROR_SETS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "haarqec/linalg.hpp"

namespace haarqec {

/// Default cap on the number of complex (or symbolic) elements a single
/// object may occupy: 2^28.
inline constexpr std::size_t kDefaultElementCap = std::size_t{1} << 28;

/// Generalized permutation matrix: M[perm[j], j] = phases[j], zero elsewhere.
/// Applying it to a vector costs O(N).
class MonomialOperator {
public:
    MonomialOperator() = default;
    /// Throws DimensionError if perm is not a bijection or sizes disagree.
    MonomialOperator(std::vector<Index> perm, std::vector<Complex> phases);

    static MonomialOperator identity(Index dim);

    Index dim() const { return static_cast<Index>(perm_.size()); }
    const std::vector<Index>& perm() const { return perm_; }
    const std::vector<Complex>& phases() const { return phases_; }

    /// op * v for a vector or a block of columns.
    ComplexMatrix apply(const ComplexMatrix& v) const;
    /// op^dagger * v.
    ComplexMatrix apply_adjoint(const ComplexMatrix& v) const;
    ComplexMatrix to_dense() const;

    bool is_identity(double tol = 0.0) const;
    /// max_j | |phase_j|^2 - 1 |, which equals || M^dagger M - I ||.
    double unitarity_defect() const;

private:
    std::vector<Index> perm_;
    std::vector<Complex> phases_;
};

/// a * b in the monomial representation.
MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b);
MonomialOperator adjoint(const MonomialOperator& a);
/// tr(a^dagger b).
Complex trace_overlap(const MonomialOperator& a, const MonomialOperator& b);

/// exp(2 pi i k / q); quarter-turn multiples are exact.
Complex root_of_unity(int q, long k);
std::vector<Complex> roots_of_unity(int q);

/// n-qudit generalized Pauli  (X^{a_1} Z^{b_1}) (x) ... (x) (X^{a_n} Z^{b_n}),
/// stored by its exponents. Qudit 0 is the most significant tensor factor.
/// For q = 2 the site operator with a = b = 1 carries an extra factor i so it
/// is exactly the Pauli Y.
class GeneralizedPauli {
public:
    GeneralizedPauli() = default;
    GeneralizedPauli(int q, std::vector<std::uint8_t> x, std::vector<std::uint8_t> z);

    static GeneralizedPauli identity(int n, int q);

    int q() const { return q_; }
    int num_qudits() const { return static_cast<int>(x_.size()); }
    Index dim() const;
    const std::vector<std::uint8_t>& x() const { return x_; }
    const std::vector<std::uint8_t>& z() const { return z_; }

    int weight() const;
    std::vector<int> support() const;
    bool is_identity() const { return weight() == 0; }
    std::string label() const;

    /// The single nonzero (row, value) of column j.
    std::pair<Index, Complex> column(Index j) const;
    MonomialOperator to_monomial() const;

    friend bool operator==(const GeneralizedPauli&, const GeneralizedPauli&) = default;

private:
    int q_ = 2;
    std::vector<std::uint8_t> x_;
    std::vector<std::uint8_t> z_;
};

/// One element of a unitary error set.
using ErrorOperator = std::variant<GeneralizedPauli, MonomialOperator, ComplexMatrix>;

Index operator_dim(const ErrorOperator& op);
ComplexMatrix apply(const ErrorOperator& op, const ComplexMatrix& v);
ComplexMatrix apply_adjoint(const ErrorOperator& op, const ComplexMatrix& v);
ComplexMatrix to_dense(const ErrorOperator& op);
/// Monomial form for Pauli and monomial operators; nullopt for dense ones.
std::optional<MonomialOperator> as_monomial(const ErrorOperator& op);
bool is_identity_operator(const ErrorOperator& op, double tol = 1e-12);
/// Calls f(row, col, value) for every structurally nonzero entry.
void for_each_nonzero(const ErrorOperator& op,
                      const std::function<void(Index, Index, Complex)>& f);

/// Ordered collection {E_1, ..., E_m} of N x N operators.
class UnitaryErrorSet {
public:
    /// Throws DimensionError if ops is empty or dimensions disagree.
    UnitaryErrorSet(Index dim, std::vector<ErrorOperator> ops,
                    std::vector<std::string> labels = {}, std::string descriptor = {});

    Index dim() const { return dim_; }
    std::size_t size() const { return ops_.size(); }
    const std::vector<ErrorOperator>& ops() const { return ops_; }
    const ErrorOperator& op(std::size_t i) const { return ops_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& descriptor() const { return descriptor_; }

    bool all_pauli() const;
    bool all_monomial() const;
    std::optional<std::size_t> identity_index() const;

private:
    Index dim_;
    std::vector<ErrorOperator> ops_;
    std::vector<std::string> labels_;
    std::string descriptor_;
};

struct ValidationReport {
    bool passed = false;
    std::size_t size = 0;
    double max_unitarity_defect = 0.0;
    /// max_{i != j} |tr(E_i^dagger E_j)| / N (an upper bound on the structural path).
    double max_overlap = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    /// True when the exponent-based check for generalized Paulis was used.
    bool structural = false;
};

/// Checks unitarity and pairwise trace orthogonality. Sets made only of
/// generalized Paulis over one q are checked through their exponents;
/// everything else goes through explicit pairwise traces.
ValidationReport validate(const UnitaryErrorSet& set, double tol,
                          std::size_t element_cap = kDefaultElementCap);

/// The same check forced through explicit monomial/dense traces.
ValidationReport validate_numeric(const UnitaryErrorSet& set, double tol,
                                  std::size_t element_cap = kDefaultElementCap);

/// sum_{i=0}^{t} C(n,i) (q^2 - 1)^i. Throws BudgetError on overflow.
std::size_t weight_set_size(int n, int t, int q);

/// All n-qudit generalized Paulis of weight <= t, ordered by
/// (weight, support, exponents). Throws BudgetError if m * n exceeds the cap.
UnitaryErrorSet gen_weight_set(int n, int t, int q,
                               std::size_t element_cap = kDefaultElementCap);

/// All generalized Paulis supported inside `sites` (0-based), q^{2|S|} of them.
UnitaryErrorSet gen_erasure_set(int n, const std::vector<int>& sites, int q,
                                std::size_t element_cap = kDefaultElementCap);

/// q^n with overflow detection.
Index qudit_dim(int n, int q);

}  // namespace haarqec

#endif
