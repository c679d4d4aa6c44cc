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

#ifndef HAARQEC_HARNESS_HPP
#define HAARQEC_HARNESS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "haarqec/codes.hpp"
#include "haarqec/error_sets.hpp"

namespace haarqec {

struct ErrorSetSpec {
    enum class Kind { Identity, Erasure, Weight, File };
    Kind kind = Kind::Identity;
    int n = 0;
    int q = 2;
    int t = 0;
    std::vector<int> sites;
    std::string path;

    std::string describe() const;
};

/// Throws DimensionError if the set does not act on dimension N.
UnitaryErrorSet build_error_set(const ErrorSetSpec& spec, Index N,
                                std::size_t element_cap = kDefaultElementCap);

struct GridPoint {
    Index N = 0;
    Index K = 0;
    ErrorSetSpec errorset;
};

struct SweepChecks {
    bool nondegeneracy = true;
    /// Build the decoder and evaluate the lemma residual on random channels.
    bool decode = false;
    /// Campaign-level checks run once per grid point by the sweep driver.
    bool moments = false;
    bool isometrize_lemma = false;
};

struct SweepConfig {
    std::vector<GridPoint> grid;
    int seeds_per_point = 1;
    std::uint64_t master_seed = 0;
    SweepChecks checks;
    std::size_t element_cap = kDefaultElementCap;
    int workers = 1;
    /// Random states per channel for the decode check.
    Index decode_states = 8;
    Index moment_samples = 1000;
    Index lemma_trials = 100;
};

/// Parses the JSON sweep config. Throws FormatError carrying "line:col" for
/// syntax errors or the offending field path for schema errors.
SweepConfig parse_sweep_config(const std::string& text);

struct SweepRecord {
    std::size_t grid_index = 0;
    std::size_t seed_index = 0;
    Index N = 0;
    Index K = 0;
    Index m = 0;
    std::uint64_t seed = 0;
    double s_min = std::numeric_limits<double>::quiet_NaN();
    double s_max = std::numeric_limits<double>::quiet_NaN();
    double delta_emp = std::numeric_limits<double>::quiet_NaN();
    double delta_pred = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> decode_residual_max;
    /// K >= (log2 N)^3
    bool regime_bigK = false;
    /// delta_emp >= 1 although K m <= N / 16.
    bool anomaly = false;
    double elapsed_ms = 0.0;
    /// Empty on success.
    std::string error;
};

/// Task seed for (grid point, seed index).
std::uint64_t task_seed(std::uint64_t master_seed, std::size_t grid_index, std::size_t seed_index);

/// One record per (grid point, seed), ordered by grid point then seed.
/// Failures are captured in the record.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// N,K,m,seed,s_min,s_max,delta_emp,delta_pred,decode_residual_max,regime_bigK,elapsed_ms
std::string sweep_csv(const std::vector<SweepRecord>& records);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// RMS of the log-space residuals.
    double residual = 0.0;
    /// (K m / N, mean delta_emp) per distinct abscissa, ascending.
    std::vector<std::pair<double, double>> points;
};

/// Least squares log(mean delta_emp) = slope * log(K m / N) + intercept over
/// successful records. Throws InvalidInputError with fewer than 5 abscissae.
ScalingFit fit_scaling(const std::vector<SweepRecord>& records, bool big_k_only = false);

/// Standalone SVG: log delta_emp against log(K m / N) with the fitted line.
std::string scaling_plot_svg(const std::vector<SweepRecord>& records, const ScalingFit& fit);

struct MomentReport {
    Index N = 0;
    Index K = 0;
    Index m = 0;
    Index samples = 0;
    /// || mean(X^dagger X) - I_{Km} ||
    double first_moment_dev = 0.0;
    /// || mean(X X^dagger) - (Km/N) I_N ||
    double second_moment_dev = 0.0;
    /// || mean(|X><X|) ||, when (N K m)^2 fits the element cap.
    std::optional<double> covariance_norm;
    double covariance_target = 0.0;
    /// 1 / sqrt(samples)
    double scale = 0.0;
};

/// X = sum_i E_i G (x) <i| for Gaussian G with variance 1/N.
MomentReport moment_check(Index N, Index K, const UnitaryErrorSet& set, Index samples, std::uint64_t seed,
                          bool covariance = true, std::size_t element_cap = kDefaultElementCap);

struct LemmaPoint {
    Index N = 0;
    Index K = 0;
    ErrorSetSpec errorset;
};

struct IsometrizeLemmaReport {
    Index trials = 0;
    Index checked = 0;
    /// delta_X >= 0.9
    Index skipped = 0;
    Index violations = 0;
    /// max over checked trials of delta_Y - 2 delta_X / (1 - delta_X)
    double worst_margin = -std::numeric_limits<double>::infinity();
};

/// `trials` trials at every grid point.
IsometrizeLemmaReport isometrize_lemma_run(Index trials, const std::vector<LemmaPoint>& grid, std::uint64_t seed,
                                           std::size_t element_cap = kDefaultElementCap);

struct ErasureTrial {
    std::vector<int> sites;
    std::uint64_t seed = 0;
    double delta_cert = std::numeric_limits<double>::quiet_NaN();
    double entangled_disturbance = std::numeric_limits<double>::quiet_NaN();
    double lemma_residual_max = std::numeric_limits<double>::quiet_NaN();
    bool clamped = false;
    /// entangled_disturbance <= delta_cert + 1e-8
    bool recovered = false;
    std::string error;
};

struct ErasureReport {
    int n = 0;
    int k = 0;
    int t = 0;
    int q = 2;
    Index N = 0;
    Index K = 0;
    Index m = 0;
    double delta_pred = 0.0;
    std::vector<ErasureTrial> trials;
    double worst_disturbance = 0.0;
    double worst_delta_cert = 0.0;
};

/// Per trial: random t-subset S, Haar code of k qudits in n, decoder for the
/// erasure set on S, complete depolarization on S, disturbance metrics.
ErasureReport erasure_experiment(int n, int k, int t, int q, std::uint64_t seed, int trials,
                                 Index states_per_trial = 8, std::size_t element_cap = kDefaultElementCap);

}  // namespace haarqec

#endif
