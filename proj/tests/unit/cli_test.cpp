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


#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI through the shell, capturing stdout and stderr together.
CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(HAARQEC_CLI_PATH) + " " + args + " 2>&1";
    CliRun r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = std::filesystem::temp_directory_path() /
               (std::string("haarqec_cli_") + info->name() + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run_cli("--help").exit_code, 0);
    EXPECT_EQ(run_cli("").exit_code, 2);
    EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
    EXPECT_EQ(run_cli("errorset gen --kind weight").exit_code, 2);
    EXPECT_EQ(run_cli("errorset gen --kind weight --n 2 --t 3").exit_code, 2);
}

TEST_F(Cli, ErrorsetGenWritesTenOps) {
    const CliRun r = run_cli("errorset gen --kind weight --n 3 --t 1 -o " + path("w.json"));
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const auto j = nlohmann::json::parse(read("w.json"));
    EXPECT_EQ(j.at("ops").size(), 10u);
    EXPECT_EQ(j.at("dim").get<int>(), 8);
    EXPECT_EQ(run_cli("errorset validate " + path("w.json")).exit_code, 0);
}

TEST_F(Cli, ValidateRejectsDuplicatedIdentity) {
    write("dup.json", R"({"dim": 2, "kind": "monomial", "ops": [
        {"perm": [0, 1], "phases": [[1, 0], [1, 0]]},
        {"perm": [0, 1], "phases": [[1, 0], [1, 0]]}]})");
    const CliRun r = run_cli("errorset validate " + path("dup.json"));
    EXPECT_EQ(r.exit_code, 1) << r.out;
    EXPECT_NE(r.out.find("(0, 1)"), std::string::npos) << r.out;
}

TEST_F(Cli, MalformedFilesAreUsageErrors) {
    write("broken.json", "{\"dim\": 2,");
    EXPECT_EQ(run_cli("errorset validate " + path("broken.json")).exit_code, 2);
    write("config.json", "{\"grid\": [");
    const CliRun r = run_cli("sweep " + path("config.json"));
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.out.find("config:"), std::string::npos) << r.out;
    EXPECT_EQ(run_cli("errorset validate " + path("nope.json")).exit_code, 2);
}

TEST_F(Cli, CertifyIdentitySetGivesZeroDelta) {
    write("id.json", R"({"dim": 4, "kind": "monomial", "ops": [
        {"perm": [0, 1, 2, 3], "phases": [[1, 0], [1, 0], [1, 0], [1, 0]]}]})");
    ASSERT_EQ(run_cli("code sample --N 4 --K 2 --seed 3 -o " + path("c.bin")).exit_code, 0);
    const CliRun r = run_cli("code certify " + path("c.bin") + " " + path("id.json") + " -o " + path("rep.json"));
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const auto j = nlohmann::json::parse(read("rep.json"));
    EXPECT_LT(j.at("delta_emp").get<double>(), 1e-12);
}

TEST_F(Cli, CertifyFailsWhenNotNondegenerate) {
    ASSERT_EQ(run_cli("errorset gen --kind weight --n 2 --t 1 -o " + path("w.json")).exit_code, 0);
    ASSERT_EQ(run_cli("code sample --N 4 --K 1 --seed 3 -o " + path("c.bin")).exit_code, 0);
    // m = 7 > N = 4.
    EXPECT_EQ(run_cli("code certify " + path("c.bin") + " " + path("w.json")).exit_code, 1);
}

TEST_F(Cli, SampleIsDeterministicAndSeedIsReported) {
    ASSERT_EQ(run_cli("code sample --N 16 --K 2 --seed 5 -o " + path("a.bin")).exit_code, 0);
    ASSERT_EQ(run_cli("code sample --N 16 --K 2 --seed 5 -o " + path("b.bin")).exit_code, 0);
    EXPECT_EQ(read("a.bin"), read("b.bin"));
    const CliRun r = run_cli("code sample --N 16 --K 2 -o " + path("c.bin"));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("seed: "), std::string::npos) << r.out;
}

TEST_F(Cli, DecodeSimWithinBound) {
    ASSERT_EQ(run_cli("errorset gen --kind erasure --n 7 --sites 2 -o " + path("e.json")).exit_code, 0);
    ASSERT_EQ(run_cli("code sample --N 128 --K 2 --seed 1 -o " + path("c.bin")).exit_code, 0);
    const CliRun r = run_cli("decode-sim " + path("c.bin") + " " + path("e.json") +
                          " --channel-kind local --sites 2 --states 10 --seed 4 -o " + path("d.json"));
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const auto j = nlohmann::json::parse(read("d.json"));
    EXPECT_LE(j.at("entangled_trace_dist").get<double>(), j.at("upper_bound").get<double>() + 1e-8);
}

TEST_F(Cli, ElementCapIsEnforced) {
    const CliRun r = run_cli("errorset gen --kind weight --n 10 --t 3 --element-cap 1000");
    EXPECT_EQ(r.exit_code, 2) << r.out;
    const CliRun env = run_cli("errorset gen --kind weight --n 10 --t 3 -o " + path("x.json"));
    EXPECT_EQ(env.exit_code, 0);
    const std::string cmd = "HAARQEC_ELEMENT_CAP=1000 " + std::string(HAARQEC_CLI_PATH) +
                            " errorset gen --kind weight --n 10 --t 3 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}

TEST_F(Cli, SweepWritesCsvAndSummary) {
    write("cfg.json", R"({"grid": [
        {"N": 64, "K": 1, "errorset": {"kind": "erasure", "params": {"n": 6, "sites": [0]}}},
        {"N": 128, "K": 1, "errorset": {"kind": "erasure", "params": {"n": 7, "sites": [0]}}}],
        "seeds_per_point": 2, "master_seed": 1})");
    const CliRun r = run_cli("sweep " + path("cfg.json") + " -o " + path("out.csv") + " --summary " + path("s.json"));
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const std::string csv = read("out.csv");
    EXPECT_EQ(csv.rfind("N,K,m,seed,", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    const auto s = nlohmann::json::parse(read("s.json"));
    EXPECT_EQ(s.at("records").get<int>(), 4);
    EXPECT_EQ(s.at("anomalies").get<int>(), 0);
}
