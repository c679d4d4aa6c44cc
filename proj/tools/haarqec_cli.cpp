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

// Command line front end. Exit codes: 0 success, 1 domain failure,
// 2 usage or configuration error. Human-readable text goes to stderr,
// JSON and CSV to stdout or the -o file.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "CLI11.hpp"

#include "haarqec/codes.hpp"
#include "haarqec/decoder.hpp"
#include "haarqec/error_sets.hpp"
#include "haarqec/errors.hpp"
#include "haarqec/harness.hpp"
#include "haarqec/metrics.hpp"
#include "haarqec/noise.hpp"
#include "haarqec/serialization.hpp"

using namespace haarqec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text_file(path, text);
    }
}

std::size_t element_cap_from_env() {
    const char* env = std::getenv("HAARQEC_ELEMENT_CAP");
    if (env == nullptr || *env == '\0') {
        return kDefaultElementCap;
    }
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size() || v == 0) {
            throw std::invalid_argument("bad");
        }
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw Usage("HAARQEC_ELEMENT_CAP must be a positive integer, got '" + std::string(env) + "'");
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) {
        return *seed;
    }
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << "\n";
    return s;
}

int run_errorset_gen(const std::string& kind, int n, int t, int q, const std::vector<int>& sites,
                     const std::string& out, std::size_t cap) {
    UnitaryErrorSet set = [&] {
        if (kind == "weight") {
            return gen_weight_set(n, t, q, cap);
        }
        if (kind == "erasure") {
            return gen_erasure_set(n, sites, q, cap);
        }
        throw Usage("--kind must be weight or erasure");
    }();
    emit(error_set_to_json(set).dump() + "\n", out);
    std::cerr << set.descriptor() << ": " << set.size() << " ops on dimension " << set.dim() << "\n";
    return kExitOk;
}

int run_errorset_validate(const std::string& path, double tol, const std::string& out, std::size_t cap) {
    const UnitaryErrorSet set = load_error_set(path);
    const ValidationReport rep = validate(set, tol, cap);
    emit(to_json(rep).dump(2) + "\n", out);
    if (!rep.passed) {
        std::cerr << "invalid error set: max unitarity defect " << rep.max_unitarity_defect << ", max overlap "
                  << rep.max_overlap;
        if (rep.worst_pair) {
            std::cerr << " at ops (" << rep.worst_pair->first << ", " << rep.worst_pair->second << ")";
        }
        std::cerr << "\n";
        return kExitDomain;
    }
    std::cerr << "valid: " << rep.size << " ops\n";
    return kExitOk;
}

int run_code_sample(Index N, Index K, std::uint64_t seed, const std::string& method, const std::string& out) {
    if (out.empty()) {
        throw Usage("code sample needs -o <file>");
    }
    const SamplingMethod m = parse_sampling_method(method);
    CodeSample code;
    if (m == SamplingMethod::GaussianIsometrize) {
        code = sample_haar_isometry(N, K, seed);
    } else if (m == SamplingMethod::QrHaar) {
        code = sample_haar_isometry_qr(N, K, seed);
    } else {
        throw Usage("--method must be gaussian-isometrize or qr-haar");
    }
    save_code(out, code);
    std::cerr << "wrote " << N << " x " << K << " isometry to " << out << "\n";
    return kExitOk;
}

int run_code_certify(const std::string& code_path, const std::string& set_path, bool full, const std::string& out,
                     std::size_t cap) {
    const CodeSample code = load_code(code_path);
    const UnitaryErrorSet set = load_error_set(set_path);
    NondegeneracyOptions opts;
    opts.element_cap = cap;
    opts.full_spectrum = full;
    const NondegeneracyReport rep = nondegeneracy_report(code.V, set, opts);
    emit(to_json(rep).dump(2) + "\n", out);
    if (rep.hamming_violated) {
        std::cerr << "warning: K m = " << rep.Km << " exceeds N = " << rep.N
                  << "; the shifted basis cannot be independent\n";
    }
    std::cerr << "delta_emp = " << rep.delta_emp << ", sqrt(Km/N) = " << rep.delta_pred_leading << "\n";
    if (rep.delta_emp >= 1.0) {
        std::cerr << "not certified: delta_emp >= 1\n";
        return kExitDomain;
    }
    return kExitOk;
}

struct DecodeSimArgs {
    std::string code_path;
    std::string set_path;
    std::string channel_path;
    std::string channel_kind = "mixture";
    std::vector<int> sites;
    int q = 2;
    int rank = 0;
    Index states = 100;
    std::string dump_decoder;
};

int log_q(Index N, int q) {
    int n = 0;
    Index d = 1;
    while (d < N) {
        d *= q;
        ++n;
    }
    if (d != N) {
        throw Usage("N = " + std::to_string(N) + " is not a power of q = " + std::to_string(q));
    }
    return n;
}

int run_decode_sim(const DecodeSimArgs& a, std::uint64_t seed, const std::string& out, std::size_t cap) {
    const CodeSample code = load_code(a.code_path);
    auto set = std::make_shared<const UnitaryErrorSet>(load_error_set(a.set_path));
    const Decoder dec = build_decoder(code.V, *set);
    if (!a.dump_decoder.empty()) {
        save_matrix(a.dump_decoder, dec.D);
    }

    NoiseChannel ch = [&]() -> NoiseChannel {
        if (!a.channel_path.empty()) {
            return load_channel(a.channel_path);
        }
        if (a.channel_kind == "identity") {
            return identity_channel(set);
        }
        if (a.channel_kind == "mixture") {
            Rng rng(derive_seed(seed, 0, 0));
            std::exponential_distribution<double> expo(1.0);
            std::vector<double> p(set->size());
            double total = 0.0;
            for (auto& v : p) {
                v = expo(rng);
                total += v;
            }
            for (auto& v : p) {
                v /= total;
            }
            return mixture_channel(set, p);
        }
        const int n = log_q(set->dim(), a.q);
        if (a.channel_kind == "depolarize") {
            return complete_depolarization(n, a.sites, a.q);
        }
        if (a.channel_kind == "local") {
            std::vector<int> sorted = a.sites;
            const Index d = qudit_dim(static_cast<int>(sorted.size()), a.q);
            int rank = a.rank;
            if (rank == 0) {
                Rng rng(derive_seed(seed, 0, 1));
                rank = static_cast<int>(std::uniform_int_distribution<Index>(1, d * d)(rng));
            }
            return random_local_channel(n, sorted, a.q, rank, derive_seed(seed, 0, 2));
        }
        throw Usage("--channel-kind must be identity, mixture, depolarize or local");
    }();
    // Re-expand against the decoder's error set; rejects channels outside its span.
    NoiseChannel bound = make_channel(set, ch.kraus, 1e-8, cap);

    const DisturbanceReport rep = disturbance_report(code.V, dec, bound, a.states, derive_seed(seed, 1, 0));
    Json j = to_json(rep);
    j["N"] = dec.N;
    j["K"] = dec.K;
    j["m"] = dec.m;
    j["seed"] = seed;
    j["code_seed"] = code.seed;
    j["errorset"] = set->descriptor();
    emit(j.dump(2) + "\n", out);
    std::cerr << "lemma residual max " << rep.lemma_residual_max << ", entangled disturbance "
              << rep.entangled_trace_dist << ", upper bound " << rep.upper_bound << "\n";
    if (rep.lemma_residual_max > rep.upper_bound + 1e-8 || rep.entangled_trace_dist > rep.upper_bound + 1e-8) {
        std::cerr << "bound violated\n";
        return kExitDomain;
    }
    return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, std::optional<int> workers, const std::string& out,
                  const std::string& plot, const std::string& summary_path,
                  std::optional<std::size_t> cap_override) {
    SweepConfig cfg = parse_sweep_config(read_text_file(config_path));
    if (workers) {
        cfg.workers = *workers;
    }
    if (cap_override) {
        cfg.element_cap = *cap_override;
    }
    const std::vector<SweepRecord> records = run_sweep(cfg);
    emit(sweep_csv(records), out);

    Json summary;
    std::size_t failures = 0;
    std::size_t anomalies = 0;
    for (const auto& r : records) {
        if (!r.error.empty()) {
            ++failures;
            std::cerr << "record (grid " << r.grid_index << ", seed " << r.seed_index << ") failed: " << r.error
                      << "\n";
        }
        anomalies += r.anomaly ? 1 : 0;
    }
    summary["records"] = records.size();
    summary["failures"] = failures;
    summary["anomalies"] = anomalies;
    std::cerr << records.size() << " records, " << failures << " failures, " << anomalies << " anomalies\n";

    std::optional<ScalingFit> fit;
    try {
        fit = fit_scaling(records);
        summary["fit"] = to_json(*fit);
        std::cerr << "fit: slope " << fit->slope << ", intercept " << fit->intercept << ", residual "
                  << fit->residual << "\n";
    } catch (const InvalidInputError& e) {
        summary["fit"] = nullptr;
        std::cerr << "no fit: " << e.what() << "\n";
    }
    if (!plot.empty()) {
        write_text_file(plot, scaling_plot_svg(records, fit.value_or(ScalingFit{})));
    }

    if (cfg.checks.moments) {
        Json moments = Json::array();
        for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
            const GridPoint& gp = cfg.grid[g];
            const UnitaryErrorSet set = build_error_set(gp.errorset, gp.N, cfg.element_cap);
            const MomentReport mr =
                moment_check(gp.N, gp.K, set, cfg.moment_samples, derive_seed(cfg.master_seed, g, ~0ULL), true,
                             cfg.element_cap);
            Json mj = to_json(mr);
            mj["grid_index"] = g;
            moments.push_back(std::move(mj));
            std::cerr << "moments (grid " << g << "): " << mr.first_moment_dev << ", " << mr.second_moment_dev
                      << " at scale " << mr.scale << "\n";
        }
        summary["moments"] = std::move(moments);
    }
    if (cfg.checks.isometrize_lemma) {
        std::vector<LemmaPoint> pts;
        for (const auto& gp : cfg.grid) {
            pts.push_back({gp.N, gp.K, gp.errorset});
        }
        const IsometrizeLemmaReport lr =
            isometrize_lemma_run(cfg.lemma_trials, pts, derive_seed(cfg.master_seed, ~0ULL, 0), cfg.element_cap);
        summary["isometrize_lemma"] = to_json(lr);
        std::cerr << "isometrize lemma: " << lr.checked << " checked, " << lr.skipped << " skipped, "
                  << lr.violations << " violations\n";
    }

    if (!summary_path.empty()) {
        write_text_file(summary_path, summary.dump(2) + "\n");
    } else if (!out.empty()) {
        std::cout << summary.dump(2) << "\n";
    }
    return kExitOk;
}

int run_erasure(int n, int k, int t, int q, int trials, Index states, std::uint64_t seed, const std::string& out,
                std::size_t cap) {
    const ErasureReport rep = erasure_experiment(n, k, t, q, seed, trials, states, cap);
    emit(to_json(rep).dump(2) + "\n", out);
    int recovered = 0;
    for (const auto& tr : rep.trials) {
        recovered += tr.recovered ? 1 : 0;
        if (!tr.error.empty()) {
            std::cerr << "trial failed: " << tr.error << "\n";
        }
    }
    std::cerr << recovered << "/" << rep.trials.size() << " trials recovered; worst disturbance "
              << rep.worst_disturbance << ", worst delta_cert " << rep.worst_delta_cert << "\n";
    return recovered == static_cast<int>(rep.trials.size()) ? kExitOk : kExitDomain;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const Usage*>(&e) || dynamic_cast<const FormatError*>(&e) ||
        dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const BudgetError*>(&e)) {
        return kExitUsage;
    }
    return kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Haar random quantum error-correcting codes: sampling, certification, decoding, sweeps"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "haarqec 0.1.0");

    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> cap_flag;
    auto add_common = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("-o,--output", out, "Output file (default: stdout)");
        sub->add_option("--element-cap", cap_flag, "Element cap for dense buffers (env HAARQEC_ELEMENT_CAP)");
        if (with_seed) {
            sub->add_option("--seed", seed, "Master seed; drawn from system entropy and printed if omitted");
        }
    };

    // errorset
    auto* es = app.add_subcommand("errorset", "Generate or validate unitary error sets");
    es->require_subcommand(1);
    auto* es_gen = es->add_subcommand("gen", "Generate a weight or erasure Pauli set");
    std::string es_kind;
    int es_n = 0, es_t = 0, es_q = 2;
    std::vector<int> es_sites;
    es_gen->add_option("--kind", es_kind, "weight | erasure")->required()->check(CLI::IsMember({"weight", "erasure"}));
    es_gen->add_option("--n", es_n, "Number of qudits")->required()->check(CLI::Range(1, 62));
    es_gen->add_option("--t", es_t, "Maximum weight (weight sets)")->check(CLI::NonNegativeNumber);
    es_gen->add_option("--q", es_q, "Local dimension")->check(CLI::Range(2, 255));
    es_gen->add_option("--sites", es_sites, "Erased qudits, 0-based (erasure sets)")->delimiter(',');
    add_common(es_gen, false);
    auto* es_val = es->add_subcommand("validate", "Validate an error-set file");
    std::string es_path;
    double es_tol = 1e-12;
    es_val->add_option("file", es_path, "Error-set JSON")->required();
    es_val->add_option("--tol", es_tol, "Tolerance")->check(CLI::PositiveNumber);
    add_common(es_val, false);

    // code
    auto* code = app.add_subcommand("code", "Sample or certify codes");
    code->require_subcommand(1);
    auto* code_sample = code->add_subcommand("sample", "Sample a Haar random isometry");
    Index cs_N = 0, cs_K = 0;
    std::string cs_method = "gaussian-isometrize";
    code_sample->add_option("--N", cs_N, "Ambient dimension")->required()->check(CLI::PositiveNumber);
    code_sample->add_option("--K", cs_K, "Code dimension")->required()->check(CLI::PositiveNumber);
    code_sample->add_option("--method", cs_method, "gaussian-isometrize | qr-haar")
        ->check(CLI::IsMember({"gaussian-isometrize", "qr-haar"}));
    add_common(code_sample, true);
    auto* code_cert = code->add_subcommand("certify", "Certify approximate nondegeneracy");
    std::string cc_code, cc_set;
    bool cc_full = false;
    code_cert->add_option("code", cc_code, "Code file")->required();
    code_cert->add_option("errorset", cc_set, "Error-set JSON")->required();
    code_cert->add_flag("--full-spectrum", cc_full, "Include all singular values");
    add_common(code_cert, false);

    // decode-sim
    auto* ds = app.add_subcommand("decode-sim", "Decode a noisy code and report disturbance metrics");
    DecodeSimArgs dsa;
    ds->add_option("code", dsa.code_path, "Code file")->required();
    ds->add_option("errorset", dsa.set_path, "Error-set JSON")->required();
    ds->add_option("--channel", dsa.channel_path, "Channel JSON (overrides --channel-kind)");
    ds->add_option("--channel-kind", dsa.channel_kind, "identity | mixture | depolarize | local")
        ->check(CLI::IsMember({"identity", "mixture", "depolarize", "local"}));
    ds->add_option("--sites", dsa.sites, "Qudits the channel acts on, 0-based")->delimiter(',');
    ds->add_option("--q", dsa.q, "Local dimension for depolarize/local")->check(CLI::Range(2, 255));
    ds->add_option("--rank", dsa.rank, "Kraus rank for local channels (random if 0)")->check(CLI::NonNegativeNumber);
    ds->add_option("--states", dsa.states, "Random states with reference")->check(CLI::NonNegativeNumber);
    ds->add_option("--dump-decoder", dsa.dump_decoder, "Write D in the binary matrix layout");
    add_common(ds, true);

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run a seeded sweep from a JSON config");
    std::string sw_config, sw_plot, sw_summary;
    std::optional<int> sw_workers;
    sw->add_option("config", sw_config, "Sweep config JSON")->required();
    sw->add_option("--workers", sw_workers, "Worker threads (overrides config)")->check(CLI::Range(1, 1024));
    sw->add_option("--plot", sw_plot, "Write an SVG scaling plot");
    sw->add_option("--summary", sw_summary, "Write the summary JSON here");
    add_common(sw, false);

    // erasure
    auto* er = app.add_subcommand("erasure", "Erasure recovery experiment");
    int er_n = 12, er_k = 2, er_t = 2, er_q = 2, er_trials = 10;
    Index er_states = 8;
    er->add_option("--n", er_n, "Physical qudits")->check(CLI::Range(1, 62));
    er->add_option("--k", er_k, "Logical qudits")->check(CLI::NonNegativeNumber);
    er->add_option("--t", er_t, "Erased qudits")->check(CLI::NonNegativeNumber);
    er->add_option("--q", er_q, "Local dimension")->check(CLI::Range(2, 255));
    er->add_option("--trials", er_trials, "Trials")->check(CLI::PositiveNumber);
    er->add_option("--states", er_states, "Random states per trial")->check(CLI::NonNegativeNumber);
    add_common(er, true);

    // moments
    auto* mo = app.add_subcommand("moments", "Gaussian moment identities");
    Index mo_N = 0, mo_K = 1, mo_samples = 10000;
    std::string mo_set;
    bool mo_no_cov = false;
    mo->add_option("--N", mo_N, "Ambient dimension")->required()->check(CLI::PositiveNumber);
    mo->add_option("--K", mo_K, "Code dimension")->check(CLI::PositiveNumber);
    mo->add_option("--set", mo_set, "Error-set JSON")->required();
    mo->add_option("--samples", mo_samples, "Samples")->check(CLI::Range(Index{100}, Index{1} << 40));
    mo->add_flag("--no-covariance", mo_no_cov, "Skip the covariance estimate");
    add_common(mo, true);

    // isometrize-lemma
    auto* il = app.add_subcommand("isometrize-lemma", "Isometrize perturbation property run");
    Index il_N = 0, il_K = 1, il_trials = 1000;
    std::string il_set;
    il->add_option("--N", il_N, "Ambient dimension")->required()->check(CLI::PositiveNumber);
    il->add_option("--K", il_K, "Code dimension")->check(CLI::PositiveNumber);
    il->add_option("--set", il_set, "Error-set JSON")->required();
    il->add_option("--trials", il_trials, "Trials")->check(CLI::PositiveNumber);
    add_common(il, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code_ = app.exit(e);
        return code_ == 0 ? kExitOk : kExitUsage;
    }

    try {
        const std::size_t cap = cap_flag ? *cap_flag : element_cap_from_env();
        if (es_gen->parsed()) {
            if (es_kind == "weight" && es_t > es_n) {
                throw Usage("--t must not exceed --n");
            }
            return run_errorset_gen(es_kind, es_n, es_t, es_q, es_sites, out, cap);
        }
        if (es_val->parsed()) {
            return run_errorset_validate(es_path, es_tol, out, cap);
        }
        if (code_sample->parsed()) {
            return run_code_sample(cs_N, cs_K, resolve_seed(seed), cs_method, out);
        }
        if (code_cert->parsed()) {
            return run_code_certify(cc_code, cc_set, cc_full, out, cap);
        }
        if (ds->parsed()) {
            return run_decode_sim(dsa, resolve_seed(seed), out, cap);
        }
        if (sw->parsed()) {
            return run_sweep_cmd(sw_config, sw_workers, out, sw_plot, sw_summary, cap_flag);
        }
        if (er->parsed()) {
            return run_erasure(er_n, er_k, er_t, er_q, er_trials, er_states, resolve_seed(seed), out, cap);
        }
        if (mo->parsed()) {
            const UnitaryErrorSet set = load_error_set(mo_set);
            const MomentReport rep = moment_check(mo_N, mo_K, set, mo_samples, resolve_seed(seed), !mo_no_cov, cap);
            emit(to_json(rep).dump(2) + "\n", out);
            return kExitOk;
        }
        if (il->parsed()) {
            ErrorSetSpec spec;
            spec.kind = ErrorSetSpec::Kind::File;
            spec.path = il_set;
            const IsometrizeLemmaReport rep =
                isometrize_lemma_run(il_trials, {LemmaPoint{il_N, il_K, spec}}, resolve_seed(seed), cap);
            emit(to_json(rep).dump(2) + "\n", out);
            std::cerr << rep.violations << " violations in " << rep.checked << " checked trials\n";
            return rep.violations == 0 ? kExitOk : kExitDomain;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitUsage;
}
