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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "haarqec/errors.hpp"

using namespace haarqec;

namespace {

ErrorSetSpec erasure(int n, std::vector<int> sites) {
    ErrorSetSpec s;
    s.kind = ErrorSetSpec::Kind::Erasure;
    s.n = n;
    s.sites = std::move(sites);
    return s;
}

std::string strip_last_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(',')) + "\n";
    }
    return out;
}

std::string message_of(const std::string& text) {
    try {
        parse_sweep_config(text);
    } catch (const FormatError& e) {
        return e.what();
    }
    return "no error";
}

SweepRecord fake_record(Index N, Index K, Index m, double delta) {
    SweepRecord r;
    r.N = N;
    r.K = K;
    r.m = m;
    r.delta_emp = delta;
    return r;
}

}  // namespace

TEST(BuildErrorSet, KindsAndDimensionCheck) {
    EXPECT_EQ(build_error_set(erasure(4, {1}), 16).size(), 4u);
    ErrorSetSpec w;
    w.kind = ErrorSetSpec::Kind::Weight;
    w.n = 3;
    w.t = 1;
    EXPECT_EQ(build_error_set(w, 8).size(), 10u);
    ErrorSetSpec id;
    EXPECT_EQ(build_error_set(id, 5).size(), 1u);
    EXPECT_THROW(build_error_set(erasure(4, {1}), 32), DimensionError);
}

TEST(Sweep, SinglePointMatchesDirectComputation) {
    SweepConfig cfg;
    cfg.grid.push_back({256, 2, erasure(8, {0})});
    cfg.master_seed = 77;
    const std::vector<SweepRecord> recs = run_sweep(cfg);
    ASSERT_EQ(recs.size(), 1u);
    const SweepRecord& r = recs[0];
    ASSERT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.seed, task_seed(77, 0, 0));
    const UnitaryErrorSet set = gen_erasure_set(8, {0}, 2);
    const NondegeneracyReport direct = nondegeneracy_report(sample_haar_isometry(256, 2, r.seed).V, set);
    EXPECT_EQ(r.delta_emp, direct.delta_emp);
    EXPECT_EQ(r.m, 4);
    EXPECT_NEAR(r.delta_pred, std::sqrt(8.0 / 256.0), 1e-15);
    EXPECT_FALSE(r.regime_bigK);
    EXPECT_FALSE(r.anomaly);
    EXPECT_FALSE(r.decode_residual_max.has_value());
}

TEST(Sweep, DecodeCheckStaysWithinDelta) {
    SweepConfig cfg;
    cfg.grid.push_back({128, 2, erasure(7, {2})});
    cfg.seeds_per_point = 3;
    cfg.checks.decode = true;
    for (const SweepRecord& r : run_sweep(cfg)) {
        ASSERT_TRUE(r.error.empty()) << r.error;
        ASSERT_TRUE(r.decode_residual_max.has_value());
        EXPECT_LE(*r.decode_residual_max, r.delta_emp + 1e-8);
    }
}

TEST(Sweep, WorkerCountDoesNotChangeOutput) {
    SweepConfig cfg;
    cfg.grid.push_back({64, 2, erasure(6, {0})});
    cfg.grid.push_back({128, 1, erasure(7, {3, 4})});
    cfg.seeds_per_point = 4;
    cfg.master_seed = 5;
    cfg.checks.decode = true;
    const std::string one = strip_last_column(sweep_csv(run_sweep(cfg)));
    cfg.workers = 8;
    EXPECT_EQ(one, strip_last_column(sweep_csv(run_sweep(cfg))));
}

TEST(Sweep, ErrorSetFailureIsRecordedPerTask) {
    SweepConfig cfg;
    cfg.grid.push_back({64, 2, erasure(5, {0})});
    const std::vector<SweepRecord> recs = run_sweep(cfg);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_FALSE(recs[0].error.empty());
    EXPECT_TRUE(std::isnan(recs[0].delta_emp));
}

TEST(SweepCsv, Header) {
    const std::string csv = sweep_csv({});
    EXPECT_EQ(csv, "N,K,m,seed,s_min,s_max,delta_emp,delta_pred,decode_residual_max,regime_bigK,elapsed_ms\n");
}

TEST(ParseSweepConfig, ReadsAllFields) {
    const SweepConfig cfg = parse_sweep_config(R"({
        "grid": [{"N": 64, "K": 2, "errorset": {"kind": "erasure", "params": {"n": 6, "sites": [0, 1]}}},
                 {"N": 8, "K": 1, "errorset": {"kind": "weight", "params": {"n": 3, "t": 1}}}],
        "seeds_per_point": 3, "master_seed": 12, "checks": ["nondegeneracy", "decode"], "workers": 2
    })");
    ASSERT_EQ(cfg.grid.size(), 2u);
    EXPECT_EQ(cfg.grid[0].errorset.sites, (std::vector<int>{0, 1}));
    EXPECT_EQ(cfg.grid[1].errorset.kind, ErrorSetSpec::Kind::Weight);
    EXPECT_EQ(cfg.seeds_per_point, 3);
    EXPECT_EQ(cfg.master_seed, 12u);
    EXPECT_TRUE(cfg.checks.decode);
    EXPECT_FALSE(cfg.checks.moments);
    EXPECT_EQ(cfg.workers, 2);
}

TEST(ParseSweepConfig, ErrorsNameLocation) {
    EXPECT_NE(message_of("{\n  \"grid\": [\n}").find("config:3:"), std::string::npos) << message_of("{\n  \"grid\": [\n}");
    const std::string bad_k = message_of(
        R"({"grid": [{"N": 8, "K": 1, "errorset": {"kind": "identity"}},
                     {"N": 8, "K": 9, "errorset": {"kind": "identity"}}]})");
    EXPECT_NE(bad_k.find("grid[1].K"), std::string::npos) << bad_k;
    const std::string unknown = message_of(R"({"grid": [{"N": 8, "K": 1, "errorset": {"kind": "identity"}}], "sedes": 1})");
    EXPECT_NE(unknown.find("sedes"), std::string::npos) << unknown;
    const std::string kind = message_of(R"({"grid": [{"N": 8, "K": 1, "errorset": {"kind": "bogus"}}]})");
    EXPECT_NE(kind.find("grid[0].errorset.kind"), std::string::npos) << kind;
    const std::string check = message_of(
        R"({"grid": [{"N": 8, "K": 1, "errorset": {"kind": "identity"}}], "checks": ["decode", 3]})");
    EXPECT_NE(check.find("checks[1]"), std::string::npos) << check;
}

TEST(FitScaling, RecoversSquareRootLaw) {
    std::vector<SweepRecord> recs;
    for (Index N : {64, 128, 256, 512, 1024, 2048}) {
        recs.push_back(fake_record(N, 2, 4, 3.0 * std::sqrt(8.0 / static_cast<double>(N))));
        // A second seed at the same ratio, averaged into one point.
        recs.push_back(fake_record(2 * N, 4, 4, 3.0 * std::sqrt(8.0 / static_cast<double>(N))));
    }
    const ScalingFit fit = fit_scaling(recs);
    EXPECT_NEAR(fit.slope, 0.5, 1e-12);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
    EXPECT_NEAR(fit.residual, 0.0, 1e-12);
    EXPECT_EQ(fit.points.size(), 6u);
    EXPECT_NE(scaling_plot_svg(recs, fit).find("<svg"), std::string::npos);
}

TEST(FitScaling, NeedsFiveAbscissae) {
    std::vector<SweepRecord> recs;
    for (Index N : {64, 128, 256, 512}) {
        recs.push_back(fake_record(N, 1, 4, 0.1));
    }
    EXPECT_THROW(fit_scaling(recs), InvalidInputError);
    EXPECT_THROW(fit_scaling(recs, true), InvalidInputError);
}

TEST(MomentCheck, SmallCaseConverges) {
    const UnitaryErrorSet set = gen_erasure_set(4, {0}, 2);
    const MomentReport r = moment_check(16, 2, set, 4000, 3);
    EXPECT_EQ(r.m, 4);
    EXPECT_LT(r.first_moment_dev, 10 * r.scale * 4);
    EXPECT_LT(r.second_moment_dev, 10 * r.scale * 4);
    ASSERT_TRUE(r.covariance_norm.has_value());
    EXPECT_NEAR(r.covariance_target, 4.0 / 16.0, 1e-15);
    EXPECT_THROW(moment_check(16, 2, set, 10, 3), InvalidInputError);
    EXPECT_THROW(moment_check(8, 2, set, 100, 3), DimensionError);
}

TEST(MomentCheck, CovarianceSkippedOverCap) {
    const UnitaryErrorSet set = gen_erasure_set(4, {0}, 2);
    const MomentReport r = moment_check(16, 2, set, 100, 3, true, 2000);
    EXPECT_FALSE(r.covariance_norm.has_value());
}

TEST(IsometrizeLemma, HoldsOnSmallGrid) {
    ErrorSetSpec id;
    const std::vector<LemmaPoint> grid = {{32, 2, id}, {64, 2, erasure(6, {0})}};
    const IsometrizeLemmaReport r = isometrize_lemma_run(20, grid, 9);
    EXPECT_EQ(r.trials, 40);
    EXPECT_EQ(r.checked + r.skipped, r.trials);
    EXPECT_EQ(r.violations, 0);
    EXPECT_LE(r.worst_margin, 1e-8);
}

TEST(ErasureExperiment, NoErasuresIsExact) {
    const ErasureReport r = erasure_experiment(6, 1, 0, 2, 4, 3);
    ASSERT_EQ(r.trials.size(), 3u);
    EXPECT_EQ(r.m, 1);
    for (const ErasureTrial& t : r.trials) {
        EXPECT_TRUE(t.error.empty()) << t.error;
        EXPECT_TRUE(t.sites.empty());
        EXPECT_LT(t.delta_cert, 1e-12);
        EXPECT_LT(t.entangled_disturbance, 1e-10);
        EXPECT_TRUE(t.recovered);
    }
}

TEST(ErasureExperiment, SmallInstanceRecoversAndIsDeterministic) {
    const ErasureReport a = erasure_experiment(8, 1, 1, 2, 21, 4);
    const ErasureReport b = erasure_experiment(8, 1, 1, 2, 21, 4);
    ASSERT_EQ(a.trials.size(), 4u);
    for (std::size_t k = 0; k < a.trials.size(); ++k) {
        EXPECT_TRUE(a.trials[k].recovered);
        EXPECT_EQ(a.trials[k].sites, b.trials[k].sites);
        EXPECT_EQ(a.trials[k].sites.size(), 1u);
        EXPECT_EQ(a.trials[k].entangled_disturbance, b.trials[k].entangled_disturbance);
    }
    EXPECT_THROW(erasure_experiment(4, 2, 2, 2, 1, 1), InvalidInputError);
}
