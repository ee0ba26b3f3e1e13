// Copyright 2026 The choiqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choiqpt/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

#include "choiqpt/channels.h"

using namespace choiqpt;
namespace fs = std::filesystem;

namespace {

const std::string kData = CHOIQPT_DATA_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qpt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("choiqpt_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(cli, gate_check_passes) {
  const Outcome o = cli({"gate-check"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("SQSCZ = √SWAP·√CZ: PASS (dev 0e0)"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("global phase φ"), std::string::npos);
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(cli, corrupted_table_names_the_broken_identity) {
  const Outcome o = cli({"gate-check", "--corrupt", "SQRT_SWAP"});
  EXPECT_EQ(o.code, kExitVerification);
  EXPECT_NE(o.out.find("√SWAP² = SWAP: FAIL"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("SQSCZ = √SWAP·√CZ: FAIL"), std::string::npos);
  EXPECT_EQ(cli({"gate-check", "--corrupt", "NOPE"}).code, kExitInput);
}

TEST(cli, identity_exact_run) {
  const fs::path dir = scratch("identity");
  const Outcome o = cli({"run", "--circuit", kData + "/circuits/identity2.json", "--exact", "--out", dir.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const nlohmann::json report = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_NEAR(report["fidelity"].get<double>(), 1.0, 1e-9);
  for (const char* f : {"dataset.json", "choi.json", "chi.json", "ptm.json", "report.json", "choi_re.csv",
                        "choi_im.csv", "choi_re_city.svg", "choi_im_city.svg", "chi_re_hinton.svg",
                        "chi_im_hinton.svg"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const ChoiMatrix c = choi_from_json(nlohmann::json::parse(slurp(dir / "choi.json")));
  EXPECT_TRUE(is_cptp(c, 1e-9).passes);
}

TEST(cli, noiseless_sampled_run_and_reanalysis) {
  const fs::path dir = scratch("noiseless");
  const Outcome o = cli({"run", "--circuit", kData + "/circuits/sqscz.json", "--shots", "11000", "--seed", "7",
                         "--out", dir.string(), "--min-fidelity", "0.95"});
  ASSERT_EQ(o.code, kExitOk) << o.out << o.err;
  const double f = nlohmann::json::parse(slurp(dir / "report.json"))["fidelity"].get<double>();
  EXPECT_GE(f, 0.95);
  EXPECT_LE(f, 1.0);

  const fs::path again = scratch("reanalysis");
  ASSERT_EQ(cli({"analyze", "--dataset", (dir / "dataset.json").string(), "--out", again.string()}).code, kExitOk);
  EXPECT_EQ(slurp(again / "report.json"), slurp(dir / "report.json"));
  EXPECT_FALSE(fs::exists(again / "dataset.json"));
}

TEST(cli, min_fidelity_failure_exits_one) {
  const fs::path dir = scratch("strict");
  const Outcome o = cli({"run", "--circuit", kData + "/circuits/sqscz.json", "--calib", kData + "/ibm_perth_tab1.json",
                         "--shots", "500", "--out", dir.string(), "--min-fidelity", "0.99"});
  EXPECT_EQ(o.code, kExitVerification);
}

TEST(cli, no_cptp_keeps_raw_inversion) {
  const fs::path dir = scratch("raw");
  ASSERT_EQ(cli({"run", "--circuit", kData + "/circuits/sqscz.json", "--shots", "300", "--no-cptp", "--out",
                 dir.string()}).code,
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "report.json"))["method"], "linear_inversion");
  EXPECT_FALSE(fs::exists(dir / "choi_raw.json"));
}

TEST(cli, runs_are_byte_identical) {
  const std::vector<std::string> base = {"run", "--circuit", kData + "/circuits/sqscz.json", "--calib",
                                         kData + "/ibm_perth_tab1.json", "--shots", "1000", "--seed", "3"};
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "3"});
  ASSERT_EQ(cli(args_a).code, kExitOk);
  ASSERT_EQ(cli(args_b).code, kExitOk);
  for (const char* f : {"dataset.json", "report.json", "choi.json", "chi_re_hinton.svg"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(cli, execute_noiseless_is_all_zero) {
  const fs::path dir = scratch("exec");
  ASSERT_EQ(cli({"execute", "--circuit", kData + "/circuits/sqscz.json", "--out", dir.string()}).code, kExitOk);
  const nlohmann::json j = nlohmann::json::parse(slurp(dir / "counts.json"));
  EXPECT_EQ(j["shots"], 7168);
  EXPECT_EQ(j["counts"], (nlohmann::json{{"00", 7168}}));
  EXPECT_TRUE(fs::exists(dir / "counts.svg"));
}

TEST(cli, execute_with_noise) {
  const fs::path dir = scratch("exec_noise");
  ASSERT_EQ(cli({"execute", "--circuit", kData + "/circuits/sqscz.json", "--calib", kData + "/ibm_perth_tab1.json",
                 "--seed", "11", "--out", dir.string()}).code,
            kExitOk);
  const nlohmann::json j = nlohmann::json::parse(slurp(dir / "counts.json"));
  const double p00 = j["counts"]["00"].get<double>() / 7168.0;
  EXPECT_NEAR(p00, 6680.0 / 7168.0, 0.03);
}

TEST(cli, input_errors_exit_two) {
  const fs::path dir = scratch("errors");
  const std::string circuit = kData + "/circuits/sqscz.json";
  const Outcome zero = cli({"execute", "--circuit", circuit, "--shots", "0", "--out", dir.string()});
  EXPECT_EQ(zero.code, kExitInput);
  EXPECT_NE(zero.err.find("shots > 0 required"), std::string::npos);
  EXPECT_EQ(cli({"run", "--circuit", "/does/not/exist.json"}).code, kExitInput);
  EXPECT_EQ(cli({"run", "--circuit", circuit, "--calib", "/does/not/exist.json"}).code, kExitInput);
  EXPECT_EQ(cli({"run", "--circuit", circuit, "--layout", "0"}).code, kExitInput);
  EXPECT_EQ(cli({"run", "--circuit", circuit, "--calib", kData + "/ibm_perth_tab1.json", "--layout", "0,0"}).code,
            kExitInput);
  EXPECT_EQ(cli({"run"}).code, kExitInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(cli({}).code, kExitInput);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);

  const fs::path bad = scratch("bad_circuit");
  fs::create_directories(bad);
  std::ofstream(bad / "c.json") << R"({"num_qubits": 2, "gates": [{"name": "CNOT", "qubits": [0, 0]}]})";
  EXPECT_EQ(cli({"run", "--circuit", (bad / "c.json").string(), "--exact"}).code, kExitInput);
  std::ofstream(bad / "d.json") << "{ not json";
  EXPECT_EQ(cli({"analyze", "--dataset", (bad / "d.json").string()}).code, kExitInput);
}
