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

#ifndef HAARQEC_NOISE_HPP
#define HAARQEC_NOISE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "haarqec/error_sets.hpp"
#include "haarqec/linalg.hpp"

namespace haarqec {

/// factor (on `sites`, first listed site most significant) tensored with the
/// identity on the remaining qudits of an n-qudit register.
struct LocalOperator {
    int n = 0;
    int q = 2;
    std::vector<int> sites;
    ComplexMatrix factor;
};

/// scale * op for an operator taken from an error set.
struct ScaledErrorOperator {
    Complex scale{1.0, 0.0};
    ErrorOperator op;
};

/// A Kraus operator stored in whichever form keeps it small: dense, lifted
/// local factor, or a scaled error-set element.
class KrausOperator {
public:
    using Storage = std::variant<ComplexMatrix, LocalOperator, ScaledErrorOperator>;

    explicit KrausOperator(ComplexMatrix dense);
    explicit KrausOperator(LocalOperator local);
    explicit KrausOperator(ScaledErrorOperator scaled);

    Index dim() const { return dim_; }
    const Storage& storage() const { return storage_; }

    ComplexMatrix apply(const ComplexMatrix& v) const;
    Complex entry(Index row, Index col) const;
    /// Calls f(row, value) for the structural nonzeros of column `col`.
    void for_each_in_column(Index col, const std::function<void(Index, Complex)>& f) const;
    double frobenius_norm_sq() const;
    ComplexMatrix to_dense() const;

private:
    Storage storage_;
    Index dim_ = 0;
};

struct KrausExpansion {
    /// c_i = tr(E_i^dagger K) / N
    ComplexVector coeffs;
    /// || K - sum_i c_i E_i ||_F
    double residual = 0.0;
};

/// Projects K onto span{E_i}. Exact for orthogonal unitary E_i.
KrausExpansion kraus_coefficients(const KrausOperator& k, const UnitaryErrorSet& set,
                                  std::size_t element_cap = kDefaultElementCap);

/// Channel with Kraus operators K_r = sum_i c_{r,i} E_i.
struct NoiseChannel {
    std::shared_ptr<const UnitaryErrorSet> set;
    std::vector<KrausOperator> kraus;
    /// R x m, row r holds c_{r, .}
    ComplexMatrix coeffs;
    std::vector<double> residuals;

    Index dim() const { return set->dim(); }
    Index rank() const { return static_cast<Index>(kraus.size()); }
};

/// Computes coefficients and residuals and enforces the channel invariants:
/// every residual <= tol, || sum_r K_r^dagger K_r - I || <= tol and
/// sum |c_{r,i}|^2 = 1 within tol. Throws InvalidInputError otherwise.
NoiseChannel make_channel(std::shared_ptr<const UnitaryErrorSet> set, std::vector<KrausOperator> kraus,
                          double tol = 1e-8, std::size_t element_cap = kDefaultElementCap);

/// || sum_r K_r^dagger K_r - I ||, evaluated on the smallest faithful form.
double cptp_defect(const std::vector<KrausOperator>& kraus,
                   std::size_t element_cap = kDefaultElementCap);

/// K_r = sqrt(p_r) E_r.
NoiseChannel mixture_channel(std::shared_ptr<const UnitaryErrorSet> set, const std::vector<double>& probs);

/// Identity channel, requires the set to contain the identity.
NoiseChannel identity_channel(std::shared_ptr<const UnitaryErrorSet> set);

/// Uniform mixture over every Pauli supported on `sites`: the complete
/// depolarizing channel there, i.e. the canonical erasure.
NoiseChannel complete_depolarization(int n, const std::vector<int>& sites, int q);

/// Haar random rank-R channel on the qudits in `sites`, lifted to n qudits.
/// Its Kraus operators lie in span(gen_erasure_set(n, sites, q)).
NoiseChannel random_local_channel(int n, const std::vector<int>& sites, int q, int kraus_rank,
                                  std::uint64_t seed);

/// Isometry |psi> -> sum_r K_r |psi> (x) |r>; row a*R + r holds row a of K_r.
struct StinespringIsometry {
    ComplexMatrix matrix;
    Index R = 0;
};

StinespringIsometry stinespring(const NoiseChannel& ch, std::size_t element_cap = kDefaultElementCap);

/// sum_r K_r rho K_r^dagger.
ComplexMatrix apply_channel(const NoiseChannel& ch, const ComplexMatrix& rho);

/// |c> = sum_{r,i} c_{r,i} |i>|r>, entry i*R + r.
ComplexVector coefficient_vector(const NoiseChannel& ch);

}  // namespace haarqec

#endif
