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

#include "haarqec/serialization.hpp"

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "haarqec/errors.hpp"

namespace haarqec {

namespace {

constexpr std::array<char, 8> kMagic = {'H', 'A', 'A', 'R', 'Q', 'E', 'C', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int k = 0; k < 8; ++k) {
        b[k] = static_cast<char>((v >> (8 * k)) & 0xFF);
    }
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), 8)) {
        throw FormatError("matrix file: truncated header");
    }
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) {
        v = (v << 8) | b[k];
    }
    return v;
}

void put_f64(std::ostream& out, double d) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
}

double get_f64(std::istream& in) {
    std::uint64_t bits = 0;
    try {
        bits = get_u64(in);
    } catch (const FormatError&) {
        throw FormatError("matrix file: truncated payload");
    }
    double d = 0.0;
    std::memcpy(&d, &bits, 8);
    return d;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError(where + ": expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json entries_json(const ComplexMatrix& m) {
    Json arr = Json::array();
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            arr.push_back(complex_json(m(r, c)));
        }
    }
    return arr;
}

ComplexMatrix matrix_from_entries(const Json& j, Index dim, const std::string& where) {
    if (!j.is_array() || static_cast<Index>(j.size()) != dim * dim) {
        throw FormatError(where + ": expected " + std::to_string(dim * dim) + " entries");
    }
    ComplexMatrix m(dim, dim);
    for (Index c = 0; c < dim; ++c) {
        for (Index r = 0; r < dim; ++r) {
            m(r, c) = complex_from_json(j[c * dim + r], where + "[" + std::to_string(c * dim + r) + "]");
        }
    }
    return m;
}

const Json& require_field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(where + ": missing field '" + key + "'");
    }
    return j.at(key);
}

Index positive_index(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
        throw FormatError(where + ": expected a positive integer");
    }
    return static_cast<Index>(j.get<long long>());
}

Json parse_json(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(where + ": " + e.what());
    }
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw FormatError("write to '" + path + "' failed");
    }
}

void write_matrix_binary(std::ostream& out, const ComplexMatrix& m) {
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, static_cast<std::uint64_t>(m.rows()));
    put_u64(out, static_cast<std::uint64_t>(m.cols()));
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            put_f64(out, m(r, c).real());
            put_f64(out, m(r, c).imag());
        }
    }
}

ComplexMatrix read_matrix_binary(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw FormatError("matrix file: bad magic, expected HAARQEC1");
    }
    const std::uint64_t rows = get_u64(in);
    const std::uint64_t cols = get_u64(in);
    if (rows == 0 || cols == 0 || rows > (std::uint64_t{1} << 31) || cols > (std::uint64_t{1} << 31) ||
        rows * cols > (std::uint64_t{1} << 32)) {
        throw FormatError("matrix file: implausible dimensions " + std::to_string(rows) + " x " +
                          std::to_string(cols));
    }
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
            const double re = get_f64(in);
            const double im = get_f64(in);
            m(r, c) = Complex(re, im);
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError("matrix file: trailing bytes after payload");
    }
    return m;
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot write '" + path + "'");
    }
    write_matrix_binary(out, m);
    if (!out) {
        throw FormatError("write to '" + path + "' failed");
    }
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    try {
        return read_matrix_binary(in);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_code(const std::string& path, const CodeSample& code) {
    save_matrix(path, code.V);
    Json side = {{"N", code.big_dim},
                 {"K", code.code_dim},
                 {"seed", code.seed},
                 {"sampling_method", std::string(to_string(code.method))}};
    write_text_file(path + ".json", side.dump(2) + "\n");
}

CodeSample load_code(const std::string& path) {
    ComplexMatrix v = load_matrix(path);
    std::uint64_t seed = 0;
    SamplingMethod method = SamplingMethod::External;
    const std::string side_path = path + ".json";
    if (std::filesystem::exists(side_path)) {
        const Json side = parse_json(read_text_file(side_path), side_path);
        if (side.contains("seed") && side["seed"].is_number_unsigned()) {
            seed = side["seed"].get<std::uint64_t>();
        }
        if (side.contains("sampling_method") && side["sampling_method"].is_string()) {
            method = parse_sampling_method(side["sampling_method"].get<std::string>());
        }
        if (side.contains("N") && side["N"] != v.rows()) {
            throw FormatError(side_path + ": N disagrees with the matrix file");
        }
        if (side.contains("K") && side["K"] != v.cols()) {
            throw FormatError(side_path + ": K disagrees with the matrix file");
        }
    }
    return code_from_isometry(std::move(v), seed, method);
}

Json error_set_to_json(const UnitaryErrorSet& set) {
    Json j;
    j["dim"] = set.dim();
    const bool mono = set.all_monomial();
    j["kind"] = mono ? "monomial" : "dense";
    Json ops = Json::array();
    for (const auto& op : set.ops()) {
        if (mono) {
            const MonomialOperator m = *as_monomial(op);
            Json phases = Json::array();
            for (Complex p : m.phases()) {
                phases.push_back(complex_json(p));
            }
            ops.push_back({{"perm", m.perm()}, {"phases", std::move(phases)}});
        } else {
            ops.push_back({{"entries", entries_json(to_dense(op))}});
        }
    }
    j["ops"] = std::move(ops);
    j["labels"] = set.labels();
    if (!set.descriptor().empty()) {
        j["descriptor"] = set.descriptor();
    }
    return j;
}

UnitaryErrorSet error_set_from_json(const Json& j) {
    const std::string where = "error set";
    const Index dim = positive_index(require_field(j, "dim", where), where + ".dim");
    const Json& kind_j = require_field(j, "kind", where);
    if (!kind_j.is_string() || (kind_j != "monomial" && kind_j != "dense")) {
        throw FormatError(where + ".kind: expected \"monomial\" or \"dense\"");
    }
    const bool mono = kind_j == "monomial";
    const Json& ops_j = require_field(j, "ops", where);
    if (!ops_j.is_array() || ops_j.empty()) {
        throw FormatError(where + ".ops: expected a non-empty array");
    }
    std::vector<ErrorOperator> ops;
    ops.reserve(ops_j.size());
    for (std::size_t k = 0; k < ops_j.size(); ++k) {
        const std::string at = where + ".ops[" + std::to_string(k) + "]";
        const Json& o = ops_j[k];
        if (mono) {
            const Json& perm_j = require_field(o, "perm", at);
            const Json& phases_j = require_field(o, "phases", at);
            if (!perm_j.is_array() || static_cast<Index>(perm_j.size()) != dim || !phases_j.is_array() ||
                static_cast<Index>(phases_j.size()) != dim) {
                throw FormatError(at + ": perm and phases must have " + std::to_string(dim) + " entries");
            }
            std::vector<Index> perm(dim);
            std::vector<Complex> phases(dim);
            for (Index r = 0; r < dim; ++r) {
                if (!perm_j[r].is_number_integer()) {
                    throw FormatError(at + ".perm[" + std::to_string(r) + "]: expected an integer");
                }
                perm[r] = perm_j[r].get<Index>();
                phases[r] = complex_from_json(phases_j[r], at + ".phases[" + std::to_string(r) + "]");
            }
            try {
                ops.emplace_back(MonomialOperator(std::move(perm), std::move(phases)));
            } catch (const DimensionError& e) {
                throw FormatError(at + ": " + e.what());
            }
        } else {
            ops.emplace_back(matrix_from_entries(require_field(o, "entries", at), dim, at + ".entries"));
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) {
            throw FormatError(where + ".labels: expected an array of strings");
        }
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) {
                throw FormatError(where + ".labels: expected an array of strings");
            }
            labels.push_back(l.get<std::string>());
        }
        if (!labels.empty() && labels.size() != ops.size()) {
            throw FormatError(where + ".labels: " + std::to_string(labels.size()) + " labels for " +
                              std::to_string(ops.size()) + " ops");
        }
    }
    std::string descriptor;
    if (j.contains("descriptor") && j["descriptor"].is_string()) {
        descriptor = j["descriptor"].get<std::string>();
    }
    return UnitaryErrorSet(dim, std::move(ops), std::move(labels), std::move(descriptor));
}

void save_error_set(const std::string& path, const UnitaryErrorSet& set) {
    write_text_file(path, error_set_to_json(set).dump() + "\n");
}

UnitaryErrorSet load_error_set(const std::string& path) {
    const Json j = parse_json(read_text_file(path), path);
    try {
        return error_set_from_json(j);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

Json channel_to_json(const NoiseChannel& ch, const std::string& errorset_path) {
    Json kraus = Json::array();
    for (const auto& k : ch.kraus) {
        kraus.push_back({{"entries", entries_json(k.to_dense())}});
    }
    return {{"dim", ch.dim()}, {"kraus", std::move(kraus)}, {"errorset", errorset_path}};
}

NoiseChannel load_channel(const std::string& path) {
    const Json j = parse_json(read_text_file(path), path);
    const std::string where = path;
    const Index dim = positive_index(require_field(j, "dim", where), where + ": dim");
    const Json& set_j = require_field(j, "errorset", where);
    if (!set_j.is_string()) {
        throw FormatError(where + ": errorset must be a path");
    }
    std::filesystem::path set_path(set_j.get<std::string>());
    if (set_path.is_relative()) {
        set_path = std::filesystem::path(path).parent_path() / set_path;
    }
    auto set = std::make_shared<const UnitaryErrorSet>(load_error_set(set_path.string()));
    if (set->dim() != dim) {
        throw FormatError(where + ": channel dim " + std::to_string(dim) + " differs from error set dim " +
                          std::to_string(set->dim()));
    }
    const Json& kraus_j = require_field(j, "kraus", where);
    if (!kraus_j.is_array() || kraus_j.empty()) {
        throw FormatError(where + ": kraus must be a non-empty array");
    }
    std::vector<KrausOperator> kraus;
    for (std::size_t r = 0; r < kraus_j.size(); ++r) {
        const std::string at = where + ": kraus[" + std::to_string(r) + "]";
        kraus.emplace_back(matrix_from_entries(require_field(kraus_j[r], "entries", at), dim, at + ".entries"));
    }
    return make_channel(std::move(set), std::move(kraus));
}

Json to_json(const ValidationReport& r) {
    Json j = {{"passed", r.passed},
              {"size", r.size},
              {"max_unitarity_defect", r.max_unitarity_defect},
              {"max_overlap", r.max_overlap},
              {"structural", r.structural}};
    if (r.worst_pair) {
        j["worst_pair"] = {r.worst_pair->first, r.worst_pair->second};
    } else {
        j["worst_pair"] = nullptr;
    }
    return j;
}

Json to_json(const NondegeneracyReport& r) {
    Json j = {{"N", r.N},
              {"K", r.K},
              {"m", r.m},
              {"Km", r.Km},
              {"s_min", r.report.extrema.s_min},
              {"s_max", r.report.extrema.s_max},
              {"delta_emp", r.delta_emp},
              {"delta_pred_leading", r.delta_pred_leading},
              {"hamming_violated", r.hamming_violated},
              {"materialized", r.materialized}};
    if (r.spectrum) {
        j["spectrum"] = std::vector<double>(r.spectrum->data(), r.spectrum->data() + r.spectrum->size());
    }
    return j;
}

Json to_json(const DisturbanceReport& r) {
    return {{"lemma_residual_max", r.lemma_residual_max},
            {"entangled_trace_dist", r.entangled_trace_dist},
            {"upper_bound", r.upper_bound},
            {"num_states", r.num_states},
            {"clamped", r.clamped}};
}

Json to_json(const MomentReport& r) {
    Json j = {{"N", r.N},
              {"K", r.K},
              {"m", r.m},
              {"samples", r.samples},
              {"first_moment_dev", r.first_moment_dev},
              {"second_moment_dev", r.second_moment_dev},
              {"covariance_target", r.covariance_target},
              {"scale", r.scale}};
    j["covariance_norm"] = r.covariance_norm ? Json(*r.covariance_norm) : Json(nullptr);
    return j;
}

Json to_json(const IsometrizeLemmaReport& r) {
    return {{"trials", r.trials},
            {"checked", r.checked},
            {"skipped", r.skipped},
            {"violations", r.violations},
            {"worst_margin", number_or_null(r.worst_margin)}};
}

Json to_json(const ErasureReport& r) {
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json tj = {{"sites", t.sites},
                   {"seed", t.seed},
                   {"delta_cert", number_or_null(t.delta_cert)},
                   {"entangled_disturbance", number_or_null(t.entangled_disturbance)},
                   {"lemma_residual_max", number_or_null(t.lemma_residual_max)},
                   {"clamped", t.clamped},
                   {"recovered", t.recovered}};
        if (!t.error.empty()) {
            tj["error"] = t.error;
        }
        trials.push_back(std::move(tj));
    }
    return {{"n", r.n},
            {"k", r.k},
            {"t", r.t},
            {"q", r.q},
            {"N", r.N},
            {"K", r.K},
            {"m", r.m},
            {"delta_pred", r.delta_pred},
            {"worst_disturbance", r.worst_disturbance},
            {"worst_delta_cert", r.worst_delta_cert},
            {"trials", std::move(trials)}};
}

Json to_json(const ScalingFit& f) {
    Json pts = Json::array();
    for (const auto& [x, y] : f.points) {
        pts.push_back({{"Km_over_N", x}, {"mean_delta_emp", y}});
    }
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"points", std::move(pts)}};
}

}  // namespace haarqec
