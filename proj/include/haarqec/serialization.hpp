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

#ifndef HAARQEC_SERIALIZATION_HPP
#define HAARQEC_SERIALIZATION_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "haarqec/codes.hpp"
#include "haarqec/decoder.hpp"
#include "haarqec/error_sets.hpp"
#include "haarqec/harness.hpp"
#include "haarqec/metrics.hpp"
#include "haarqec/noise.hpp"

namespace haarqec {

using Json = nlohmann::json;

// Binary matrix layout: "HAARQEC1", rows and cols as u64 LE, then
// 2 * rows * cols f64 LE, column-major, (re, im) interleaved.
void write_matrix_binary(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_matrix_binary(std::istream& in);

/// Writes `path` and the sidecar `path + ".json"` with {N, K, seed, sampling_method}.
void save_code(const std::string& path, const CodeSample& code);
/// Reads the code and, if present, its sidecar. Checks V^dagger V = I within 1e-10.
CodeSample load_code(const std::string& path);

void save_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

Json error_set_to_json(const UnitaryErrorSet& set);
UnitaryErrorSet error_set_from_json(const Json& j);
void save_error_set(const std::string& path, const UnitaryErrorSet& set);
UnitaryErrorSet load_error_set(const std::string& path);

/// {dim, kraus: [{entries}], errorset: path}. Dense Kraus operators.
Json channel_to_json(const NoiseChannel& ch, const std::string& errorset_path);
/// Relative errorset paths resolve against the channel file's directory.
/// Coefficients and residuals are recomputed.
NoiseChannel load_channel(const std::string& path);

Json to_json(const ValidationReport& r);
Json to_json(const NondegeneracyReport& r);
Json to_json(const DisturbanceReport& r);
Json to_json(const MomentReport& r);
Json to_json(const IsometrizeLemmaReport& r);
Json to_json(const ErasureReport& r);
Json to_json(const ScalingFit& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace haarqec

#endif
