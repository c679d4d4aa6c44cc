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

#include "haarqec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

#include "haarqec/decoder.hpp"
#include "haarqec/errors.hpp"
#include "haarqec/metrics.hpp"
#include "haarqec/noise.hpp"
#include "haarqec/rng.hpp"
#include "haarqec/serialization.hpp"

namespace haarqec {

namespace {

std::string join_sites(const std::vector<int>& sites) {
    std::string s;
    for (std::size_t k = 0; k < sites.size(); ++k) {
        s += (k ? "," : "") + std::to_string(sites[k]);
    }
    return s;
}

std::string fmt_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- config parsing

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
    throw FormatError("config field '" + path + "': " + msg);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

long long get_int(const Json& j, const std::string& path, long long lo, long long hi) {
    if (!j.is_number_integer()) {
        field_error(path, "expected an integer");
    }
    const long long v = j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(hi)
                            ? hi + 1
                            : j.get<long long>();
    if (v < lo || v > hi) {
        field_error(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return it.key() == a; });
        if (!known) {
            field_error(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
        }
    }
}

std::vector<int> get_sites(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        field_error(path, "expected an array of qudit indices");
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(static_cast<int>(get_int(j[k], path + "[" + std::to_string(k) + "]", 0, 63)));
    }
    return out;
}

ErrorSetSpec parse_errorset(const Json& j, const std::string& path) {
    if (!j.is_object()) {
        field_error(path, "expected an object {kind, params}");
    }
    reject_unknown(j, path, {"kind", "params"});
    if (!j.contains("kind") || !j["kind"].is_string()) {
        field_error(path + ".kind", "expected one of identity|erasure|weight|file");
    }
    const std::string kind = j["kind"].get<std::string>();
    const Json params = j.contains("params") ? j["params"] : Json::object();
    const std::string pp = path + ".params";
    if (!params.is_object()) {
        field_error(pp, "expected an object");
    }
    auto need = [&](const char* key) -> const Json& {
        if (!params.contains(key)) {
            field_error(pp + "." + key, "missing");
        }
        return params.at(key);
    };
    ErrorSetSpec spec;
    if (kind == "identity") {
        reject_unknown(params, pp, {});
        spec.kind = ErrorSetSpec::Kind::Identity;
    } else if (kind == "erasure") {
        reject_unknown(params, pp, {"n", "q", "sites"});
        spec.kind = ErrorSetSpec::Kind::Erasure;
        spec.n = static_cast<int>(get_int(need("n"), pp + ".n", 1, 63));
        spec.q = params.contains("q") ? static_cast<int>(get_int(params["q"], pp + ".q", 2, 255)) : 2;
        spec.sites = get_sites(need("sites"), pp + ".sites");
    } else if (kind == "weight") {
        reject_unknown(params, pp, {"n", "t", "q"});
        spec.kind = ErrorSetSpec::Kind::Weight;
        spec.n = static_cast<int>(get_int(need("n"), pp + ".n", 1, 63));
        spec.t = static_cast<int>(get_int(need("t"), pp + ".t", 0, spec.n));
        spec.q = params.contains("q") ? static_cast<int>(get_int(params["q"], pp + ".q", 2, 255)) : 2;
    } else if (kind == "file") {
        reject_unknown(params, pp, {"path"});
        spec.kind = ErrorSetSpec::Kind::File;
        if (!need("path").is_string()) {
            field_error(pp + ".path", "expected a string");
        }
        spec.path = params["path"].get<std::string>();
    } else {
        field_error(path + ".kind", "unknown kind '" + kind + "'");
    }
    return spec;
}

// ---- sweep tasks

NoiseChannel random_mixture(std::shared_ptr<const UnitaryErrorSet> set, std::uint64_t seed) {
    Rng rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(set->size());
    for (auto& v : p) {
        v = expo(rng);
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) {
        v /= total;
    }
    return mixture_channel(std::move(set), p);
}

void run_task(const SweepConfig& cfg, const std::shared_ptr<const UnitaryErrorSet>& set,
              const std::string& set_error, SweepRecord& rec) {
    const auto start = std::chrono::steady_clock::now();
    const GridPoint& gp = cfg.grid[rec.grid_index];
    rec.N = gp.N;
    rec.K = gp.K;
    rec.seed = task_seed(cfg.master_seed, rec.grid_index, rec.seed_index);
    const double log2n = std::log2(static_cast<double>(gp.N));
    rec.regime_bigK = static_cast<double>(gp.K) >= log2n * log2n * log2n;
    try {
        if (!set) {
            throw InvalidInputError(set_error);
        }
        rec.m = static_cast<Index>(set->size());
        const CodeSample code = sample_haar_isometry(gp.N, gp.K, rec.seed);
        NondegeneracyOptions opts;
        opts.element_cap = cfg.element_cap;
        const NondegeneracyReport rep = nondegeneracy_report(code.V, *set, opts);
        rec.s_min = rep.report.extrema.s_min;
        rec.s_max = rep.report.extrema.s_max;
        rec.delta_emp = rep.delta_emp;
        rec.delta_pred = rep.delta_pred_leading;
        rec.anomaly = rep.delta_emp >= 1.0 && 16 * rep.Km <= rep.N;

        if (cfg.checks.decode && rep.delta_emp < 1.0) {
            const Decoder dec = build_decoder(code.V, *set);
            std::vector<NoiseChannel> channels;
            channels.push_back(random_mixture(set, derive_seed(rec.seed, 1, 0)));
            const ErrorSetSpec& es = gp.errorset;
            if (es.kind == ErrorSetSpec::Kind::Erasure) {
                const Index d = qudit_dim(static_cast<int>(es.sites.size()), es.q);
                Rng pick(derive_seed(rec.seed, 1, 1));
                std::uniform_int_distribution<Index> rank(1, d * d);
                channels.push_back(random_local_channel(es.n, es.sites, es.q, static_cast<int>(rank(pick)),
                                                        derive_seed(rec.seed, 1, 2)));
            }
            double worst = 0.0;
            for (std::size_t c = 0; c < channels.size(); ++c) {
                const DisturbanceReport dr =
                    disturbance_report(code.V, dec, channels[c], cfg.decode_states, derive_seed(rec.seed, 2, c));
                worst = std::max(worst, dr.lemma_residual_max);
            }
            rec.decode_residual_max = worst;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string ErrorSetSpec::describe() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Erasure:
            return "erasure(n=" + std::to_string(n) + ",q=" + std::to_string(q) + ",S={" + join_sites(sites) + "})";
        case Kind::Weight:
            return "weight(n=" + std::to_string(n) + ",t=" + std::to_string(t) + ",q=" + std::to_string(q) + ")";
        case Kind::File: return "file(" + path + ")";
    }
    return "unknown";
}

UnitaryErrorSet build_error_set(const ErrorSetSpec& spec, Index N, std::size_t element_cap) {
    auto check_dim = [&](Index dim) {
        if (dim != N) {
            throw DimensionError(spec.describe() + " acts on dimension " + std::to_string(dim) + ", not N = " +
                                 std::to_string(N));
        }
    };
    switch (spec.kind) {
        case ErrorSetSpec::Kind::Identity:
            return UnitaryErrorSet(N, {MonomialOperator::identity(N)}, {"I"}, "identity");
        case ErrorSetSpec::Kind::Erasure:
            check_dim(qudit_dim(spec.n, spec.q));
            return gen_erasure_set(spec.n, spec.sites, spec.q, element_cap);
        case ErrorSetSpec::Kind::Weight:
            check_dim(qudit_dim(spec.n, spec.q));
            return gen_weight_set(spec.n, spec.t, spec.q, element_cap);
        case ErrorSetSpec::Kind::File: {
            UnitaryErrorSet set = load_error_set(spec.path);
            check_dim(set.dim());
            return set;
        }
    }
    throw InvalidInputError("build_error_set: unknown kind");
}

SweepConfig parse_sweep_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        throw FormatError("config:" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                          e.what() + ")");
    }
    if (!j.is_object()) {
        throw FormatError("config:1:1: top level must be an object");
    }
    reject_unknown(j, "", {"grid", "seeds_per_point", "master_seed", "checks", "element_cap", "workers",
                           "decode_states", "moment_samples", "lemma_trials"});
    SweepConfig cfg;
    if (!j.contains("grid") || !j["grid"].is_array() || j["grid"].empty()) {
        field_error("grid", "expected a non-empty array of grid points");
    }
    for (std::size_t g = 0; g < j["grid"].size(); ++g) {
        const std::string path = "grid[" + std::to_string(g) + "]";
        const Json& p = j["grid"][g];
        if (!p.is_object()) {
            field_error(path, "expected an object {N, K, errorset}");
        }
        reject_unknown(p, path, {"N", "K", "errorset"});
        if (!p.contains("N")) field_error(path + ".N", "missing");
        if (!p.contains("K")) field_error(path + ".K", "missing");
        if (!p.contains("errorset")) field_error(path + ".errorset", "missing");
        GridPoint gp;
        gp.N = static_cast<Index>(get_int(p["N"], path + ".N", 1, std::int64_t{1} << 40));
        gp.K = static_cast<Index>(get_int(p["K"], path + ".K", 1, gp.N));
        gp.errorset = parse_errorset(p["errorset"], path + ".errorset");
        cfg.grid.push_back(std::move(gp));
    }
    if (j.contains("seeds_per_point")) {
        cfg.seeds_per_point = static_cast<int>(get_int(j["seeds_per_point"], "seeds_per_point", 1, 1000000));
    }
    if (j.contains("master_seed")) {
        if (!j["master_seed"].is_number_unsigned()) {
            field_error("master_seed", "expected a nonnegative 64-bit integer");
        }
        cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    if (j.contains("checks")) {
        const Json& c = j["checks"];
        if (!c.is_array()) {
            field_error("checks", "expected an array of check names");
        }
        cfg.checks.nondegeneracy = false;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::string path = "checks[" + std::to_string(k) + "]";
            if (!c[k].is_string()) {
                field_error(path, "expected a string");
            }
            const std::string name = c[k].get<std::string>();
            if (name == "nondegeneracy") {
                cfg.checks.nondegeneracy = true;
            } else if (name == "decode") {
                cfg.checks.decode = true;
            } else if (name == "moments") {
                cfg.checks.moments = true;
            } else if (name == "isometrize-lemma") {
                cfg.checks.isometrize_lemma = true;
            } else {
                field_error(path, "unknown check '" + name +
                                      "' (expected nondegeneracy|decode|moments|isometrize-lemma)");
            }
        }
    }
    if (j.contains("element_cap")) {
        cfg.element_cap =
            static_cast<std::size_t>(get_int(j["element_cap"], "element_cap", 1, std::int64_t{1} << 40));
    }
    if (j.contains("workers")) {
        cfg.workers = static_cast<int>(get_int(j["workers"], "workers", 1, 1024));
    }
    if (j.contains("decode_states")) {
        cfg.decode_states = static_cast<Index>(get_int(j["decode_states"], "decode_states", 0, 100000));
    }
    if (j.contains("moment_samples")) {
        cfg.moment_samples = static_cast<Index>(get_int(j["moment_samples"], "moment_samples", 100, 100000000));
    }
    if (j.contains("lemma_trials")) {
        cfg.lemma_trials = static_cast<Index>(get_int(j["lemma_trials"], "lemma_trials", 1, 100000000));
    }
    return cfg;
}

std::uint64_t task_seed(std::uint64_t master_seed, std::size_t grid_index, std::size_t seed_index) {
    return derive_seed(master_seed, grid_index, seed_index);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    if (cfg.seeds_per_point < 1) {
        throw InvalidInputError("run_sweep: seeds_per_point must be positive");
    }
    const std::size_t points = cfg.grid.size();
    std::vector<std::shared_ptr<const UnitaryErrorSet>> sets(points);
    std::vector<std::string> set_errors(points);
    for (std::size_t g = 0; g < points; ++g) {
        const GridPoint& gp = cfg.grid[g];
        if (gp.N < 1 || gp.K < 1 || gp.K > gp.N) {
            throw DimensionError("run_sweep: grid point " + std::to_string(g) + " needs 1 <= K <= N");
        }
        try {
            sets[g] = std::make_shared<const UnitaryErrorSet>(build_error_set(gp.errorset, gp.N, cfg.element_cap));
        } catch (const std::exception& e) {
            set_errors[g] = e.what();
        }
    }

    const std::size_t seeds = static_cast<std::size_t>(cfg.seeds_per_point);
    std::vector<SweepRecord> records(points * seeds);
    for (std::size_t k = 0; k < records.size(); ++k) {
        records[k].grid_index = k / seeds;
        records[k].seed_index = k % seeds;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < records.size(); k = next++) {
            const std::size_t g = records[k].grid_index;
            run_task(cfg, sets[g], set_errors[g], records[k]);
        }
    };
    const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(records.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "N,K,m,seed,s_min,s_max,delta_emp,delta_pred,decode_residual_max,regime_bigK,elapsed_ms\n";
    for (const auto& r : records) {
        out << r.N << ',' << r.K << ',' << r.m << ',' << r.seed << ',' << fmt_double(r.s_min) << ','
            << fmt_double(r.s_max) << ',' << fmt_double(r.delta_emp) << ',' << fmt_double(r.delta_pred) << ','
            << fmt_double(r.decode_residual_max.value_or(std::numeric_limits<double>::quiet_NaN())) << ','
            << (r.regime_bigK ? 1 : 0) << ',' << fmt_double(r.elapsed_ms) << '\n';
    }
    return out.str();
}

ScalingFit fit_scaling(const std::vector<SweepRecord>& records, bool big_k_only) {
    // Key on the reduced fraction Km/N so equal ratios group exactly.
    std::map<std::pair<Index, Index>, std::pair<double, Index>> groups;
    for (const auto& r : records) {
        if (!r.error.empty() || !std::isfinite(r.delta_emp) || r.delta_emp <= 0.0 || r.N < 1 || r.m < 1) {
            continue;
        }
        if (big_k_only && !r.regime_bigK) {
            continue;
        }
        const Index km = r.K * r.m;
        const Index g = std::gcd(km, r.N);
        auto& slot = groups[{km / g, r.N / g}];
        slot.first += r.delta_emp;
        slot.second += 1;
    }
    if (groups.size() < 5) {
        throw InvalidInputError("fit_scaling: need at least 5 distinct Km/N values, got " +
                                std::to_string(groups.size()));
    }
    ScalingFit fit;
    for (const auto& [key, acc] : groups) {
        fit.points.emplace_back(static_cast<double>(key.first) / static_cast<double>(key.second),
                                acc.first / static_cast<double>(acc.second));
    }
    std::sort(fit.points.begin(), fit.points.end());
    const double n = static_cast<double>(fit.points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : fit.points) {
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (const auto& [x, y] : fit.points) {
        const double e = std::log(y) - (fit.slope * std::log(x) + fit.intercept);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

std::string scaling_plot_svg(const std::vector<SweepRecord>& records, const ScalingFit& fit) {
    constexpr double W = 640, H = 480, L = 70, R = 20, T = 30, B = 60;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records) {
        if (r.error.empty() && std::isfinite(r.delta_emp) && r.delta_emp > 0.0 && r.m > 0) {
            pts.emplace_back(std::log(static_cast<double>(r.K * r.m) / static_cast<double>(r.N)),
                             std::log(r.delta_emp));
        }
    }
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        x0 = x1 = pts[0].first;
        y0 = y1 = pts[0].second;
        for (const auto& [x, y] : pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    const double padx = std::max(0.1, 0.05 * (x1 - x0));
    const double pady = std::max(0.1, 0.05 * (y1 - y0));
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream s;
    s.precision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << ' ' << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double x = x0 + (x1 - x0) * k / 4.0;
        const double y = y0 + (y1 - y0) * k / 4.0;
        s << "<text x=\"" << px(x) << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
          << x << "</text>\n";
        s << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << y
          << "</text>\n";
    }
    s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
      << "\" font-size=\"13\" text-anchor=\"middle\">ln(Km/N)</text>\n";
    s << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (T + H - B) / 2 << ")\">ln(delta_emp)</text>\n";
    for (const auto& [x, y] : pts) {
        s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
    }
    for (const auto& [x, y] : fit.points) {
        s << "<circle cx=\"" << px(std::log(x)) << "\" cy=\"" << py(std::log(y))
          << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
    }
    if (!fit.points.empty()) {
        const double a = x0 + padx;
        const double b = x1 - padx;
        s << "<line x1=\"" << px(a) << "\" y1=\"" << py(fit.slope * a + fit.intercept) << "\" x2=\"" << px(b)
          << "\" y2=\"" << py(fit.slope * b + fit.intercept) << "\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
    }
    s << "<text x=\"" << L + 10 << "\" y=\"" << T << "\" font-size=\"12\">slope " << fit.slope << ", intercept "
      << fit.intercept << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

MomentReport moment_check(Index N, Index K, const UnitaryErrorSet& set, Index samples, std::uint64_t seed,
                          bool covariance, std::size_t element_cap) {
    if (samples < 100) {
        throw InvalidInputError("moment_check: need at least 100 samples");
    }
    if (set.dim() != N || K < 1 || K > N) {
        throw DimensionError("moment_check: need set dimension N and 1 <= K <= N");
    }
    const auto m = static_cast<Index>(set.size());
    const Index km = K * m;
    const auto nn = static_cast<std::size_t>(N);
    if (nn * nn > element_cap || nn * static_cast<std::size_t>(km) > element_cap) {
        throw BudgetError("moment_check: N^2 exceeds the element cap");
    }
    const Index vec_len = N * km;
    const bool do_cov =
        covariance && static_cast<std::size_t>(vec_len) * static_cast<std::size_t>(vec_len) <= element_cap;

    MomentReport out;
    out.N = N;
    out.K = K;
    out.m = m;
    out.samples = samples;
    out.scale = 1.0 / std::sqrt(static_cast<double>(samples));
    out.covariance_target = static_cast<double>(m) / static_cast<double>(N);

    ComplexMatrix first = ComplexMatrix::Zero(km, km);
    ComplexMatrix second = ComplexMatrix::Zero(N, N);
    ComplexMatrix cov;
    if (do_cov) {
        cov = ComplexMatrix::Zero(vec_len, vec_len);
    }
    Rng rng(seed);
    for (Index s = 0; s < samples; ++s) {
        const ComplexMatrix g = complex_gaussian(N, K, 1.0 / static_cast<double>(N), rng);
        const ComplexMatrix x = shifted_basis_matrix(g, set);
        first.selfadjointView<Eigen::Lower>().rankUpdate(x.adjoint());
        second.selfadjointView<Eigen::Lower>().rankUpdate(x);
        if (do_cov) {
            const Eigen::Map<const ComplexVector> v(x.data(), vec_len);
            cov.selfadjointView<Eigen::Lower>().rankUpdate(v);
        }
    }
    const double inv = 1.0 / static_cast<double>(samples);
    auto full = [](const ComplexMatrix& lower) {
        ComplexMatrix f = lower.selfadjointView<Eigen::Lower>();
        return f;
    };
    out.first_moment_dev = hermitian_norm(full(first) * inv - ComplexMatrix::Identity(km, km));
    out.second_moment_dev = hermitian_norm(full(second) * inv - ComplexMatrix::Identity(N, N) *
                                                                    (static_cast<double>(km) / static_cast<double>(N)));
    if (do_cov) {
        out.covariance_norm = hermitian_norm(full(cov) * inv);
    }
    return out;
}

IsometrizeLemmaReport isometrize_lemma_run(Index trials, const std::vector<LemmaPoint>& grid, std::uint64_t seed,
                                           std::size_t element_cap) {
    IsometrizeLemmaReport out;
    NondegeneracyOptions opts;
    opts.element_cap = element_cap;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const LemmaPoint& p = grid[g];
        const UnitaryErrorSet set = build_error_set(p.errorset, p.N, element_cap);
        if (p.K * static_cast<Index>(set.size()) > p.N) {
            throw DimensionError("isometrize_lemma_run: grid point " + std::to_string(g) + " has Km > N");
        }
        for (Index t = 0; t < trials; ++t) {
            ++out.trials;
            const ComplexMatrix gmat = sample_gaussian(p.N, p.K, derive_seed(seed, g, static_cast<std::uint64_t>(t)));
            const double dx = nondegeneracy_report(gmat, set, opts).delta_emp;
            if (dx >= 0.9) {
                ++out.skipped;
                continue;
            }
            ++out.checked;
            const double dy = nondegeneracy_report(isometrize(gmat), set, opts).delta_emp;
            const double margin = dy - 2.0 * dx / (1.0 - dx);
            out.worst_margin = std::max(out.worst_margin, margin);
            if (margin > 1e-8) {
                ++out.violations;
            }
        }
    }
    return out;
}

ErasureReport erasure_experiment(int n, int k, int t, int q, std::uint64_t seed, int trials,
                                 Index states_per_trial, std::size_t element_cap) {
    if (n < 1 || k < 0 || k > n || t < 0 || t > n || q < 2 || trials < 1) {
        throw InvalidInputError("erasure_experiment: need 0 <= k, t <= n, q >= 2 and trials >= 1");
    }
    ErasureReport out;
    out.n = n;
    out.k = k;
    out.t = t;
    out.q = q;
    out.N = qudit_dim(n, q);
    out.K = qudit_dim(k, q);
    out.m = qudit_dim(2 * t, q);
    if (static_cast<std::size_t>(out.N) * static_cast<std::size_t>(out.K * out.m) > element_cap) {
        throw BudgetError("erasure_experiment: N K m exceeds the element cap");
    }
    if (out.K * out.m > out.N) {
        throw InvalidInputError("erasure_experiment: K q^(2t) exceeds q^n");
    }
    out.delta_pred = std::sqrt(static_cast<double>(out.K * out.m) / static_cast<double>(out.N));

    for (int trial = 0; trial < trials; ++trial) {
        ErasureTrial tr;
        const auto ti = static_cast<std::uint64_t>(trial);
        Rng pick(derive_seed(seed, ti, 1));
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (int a = n - 1; a > 0; --a) {
            std::uniform_int_distribution<int> u(0, a);
            std::swap(order[a], order[u(pick)]);
        }
        tr.sites.assign(order.begin(), order.begin() + t);
        std::sort(tr.sites.begin(), tr.sites.end());
        tr.seed = derive_seed(seed, ti, 0);
        try {
            auto set = std::make_shared<const UnitaryErrorSet>(gen_erasure_set(n, tr.sites, q, element_cap));
            const CodeSample code = sample_haar_isometry(out.N, out.K, tr.seed);
            NondegeneracyOptions opts;
            opts.element_cap = element_cap;
            tr.delta_cert = nondegeneracy_report(code.V, *set, opts).delta_emp;
            const Decoder dec = build_decoder(code.V, *set);
            const std::vector<double> uniform(set->size(), 1.0 / static_cast<double>(set->size()));
            const NoiseChannel ch = mixture_channel(set, uniform);
            const DisturbanceReport dr =
                disturbance_report(code.V, dec, ch, states_per_trial, derive_seed(seed, ti, 2));
            tr.entangled_disturbance = dr.entangled_trace_dist;
            tr.lemma_residual_max = dr.lemma_residual_max;
            tr.clamped = dr.clamped;
            tr.recovered = tr.entangled_disturbance <= tr.delta_cert + 1e-8;
            out.worst_disturbance = std::max(out.worst_disturbance, tr.entangled_disturbance);
        } catch (const std::exception& e) {
            tr.error = e.what();
        }
        if (std::isfinite(tr.delta_cert)) {
            out.worst_delta_cert = std::max(out.worst_delta_cert, tr.delta_cert);
        }
        out.trials.push_back(std::move(tr));
    }
    return out;
}

}  // namespace haarqec
