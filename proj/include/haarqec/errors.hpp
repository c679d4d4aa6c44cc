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

#ifndef HAARQEC_ERRORS_HPP
#define HAARQEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace haarqec {

/// Shapes of operands do not fit together.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A matrix carried NaN or Inf.
struct NonFiniteError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Smallest singular value fell below the rank tolerance where full rank is required.
struct RankDeficiencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The shifted basis of a code is not linearly independent (delta >= 1), so
/// the SVD-rounded decoder cannot be built.
struct NondegenerateRankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A request would exceed the configured element cap.
struct BudgetError : std::length_error {
    using std::length_error::length_error;
};

/// Inputs that violate a physical precondition (non-CPTP channel, non-density
/// operator, invalid probabilities, ...).
struct InvalidInputError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Malformed interchange file or configuration.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace haarqec

#endif
