// Copyright 2026 The zenogate Authors
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

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zeno/cli.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "zenogate");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = zeno::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::size_t count_lines(const std::string &text) { return lines(text).size(); }

std::string data_file(const std::string &name) { return std::string(ZENO_DATA_DIR) + "/" + name; }
} // namespace

TEST_CASE("number formatting is fixed at 12 significant digits") {
  using zeno::cli::format_number;
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(zeno::kPi) == "3.14159265359");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(zeno::cli::round12(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("rabi writes a provenance header and the requested grid") {
  const auto r = run({"rabi", "--steps", "11", "--t-max", "3.14159265359"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4 + 1 + 11);
  CHECK(l[0] == "# zenogate 1.0.0");
  CHECK(l[1] == "# subcommand: rabi");
  CHECK(l[4] == "t,P1");
  CHECK(l[5] == "0,1");
  // Last row: P1 at pi is 1.
  CHECK(l.back().substr(l.back().find(',') + 1) == "1");
}

TEST_CASE("reruns are byte-identical") {
  for (const std::vector<std::string> &args :
       {std::vector<std::string>{"threshold", "--p", "0.1,0.2", "--trials", "20000", "--seed", "9"},
        std::vector<std::string>{"zeno-sweep", "--mode", "absorption", "--n", "10,20"},
        std::vector<std::string>{"gate", "--n", "50"}}) {
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("hom and zeno-sweep tables") {
  const auto hom = run({"hom", "--steps", "3"});
  REQUIRE(hom.code == 0);
  CHECK(lines(hom.out)[4] == "t,P11");

  const auto sweep = run({"zeno-sweep", "--mode", "discrete", "--n", "1,2,1000"});
  REQUIRE(sweep.code == 0);
  const auto l = lines(sweep.out);
  CHECK(l[4] == "N,P_E");
  CHECK(l[5] == "1,1");
  CHECK(l[6] == "2,0.75");
  CHECK(count_lines(sweep.out) == 8);
}

TEST_CASE("table commands can emit json") {
  const auto r = run({"zeno-sweep", "--mode", "discrete", "--n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["header"]["subcommand"] == "zeno-sweep");
  CHECK(doc["header"]["parameters"]["mode"] == "discrete");
  CHECK(doc["data"][0]["N"] == 2.0);
  CHECK_THAT(doc["data"][0]["P_E"].get<double>(), WithinAbs(0.75, 1e-12));
}

TEST_CASE("gate report") {
  const auto r = run({"gate", "--n", "1000"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto &d = doc["data"];
  CHECK(d["fidelity_to_target"].get<double>() > 0.999);
  CHECK(d["unconditional_fidelity"].get<double>() > 0.999);
  CHECK_THAT(d["error_probability"].get<double>(), WithinAbs(zeno::closed_form_error(1000), 1e-11));
  // Entry (3,3) is i.
  CHECK_THAT(d["conditional_map"][3][3][1].get<double>(), WithinAbs(1.0, 1e-11));
  CHECK(d["conditional_map"].size() == 4);

  const auto a = run({"gate", "--tau-d", "0.002"});
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["header"]["parameters"]["protocol"] == "absorption");
}

TEST_CASE("fermion report") {
  const auto r = run({"fermion-report", "--n", "100"});
  REQUIRE(r.code == 0);
  const auto d = nlohmann::json::parse(r.out)["data"];
  CHECK(d["equivalence"]["single_particle_deviation"].get<double>() < 1e-12);
  CHECK(d["anticommutator"]["deviation"].get<double>() < 2e-3);
  CHECK(d["no_go"]["fermion_composition_identity_deviation"].get<double>() < 1e-12);
}

TEST_CASE("rate report from a parameter file") {
  const auto r = run({"rate", "--params", data_file("canonical.params")});
  REQUIRE(r.code == 0);
  const auto d = nlohmann::json::parse(r.out)["data"];
  CHECK_THAT(d["R2_tau_R"].get<double>(), WithinAbs(std::sqrt(2.0 / zeno::kPi), 1e-11));
  CHECK(d["warnings"].empty());
}

TEST_CASE("threshold columns and values") {
  const auto r = run({"threshold", "--p", "0.1", "--trials", "100000", "--seed", "5"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  CHECK(l[5] == "p,analytic,exact_tree,mc_estimate,mc_stderr,trials,seed");
  CHECK(l[6].rfind("0.1,0.04,0.037639,", 0) == 0);
  CHECK(l[6].substr(l[6].size() - 9) == ",100000,5");
}

TEST_CASE("--out writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "zenogate_cli_test.csv";
  std::filesystem::remove(path);
  const auto r = run({"rabi", "--steps", "2", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == run({"rabi", "--steps", "2"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 2 with a single diagnostic line") {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"nonsense"},
      {"rabi", "--steps", "1"},
      {"rabi", "--steps", "many"},
      {"hom", "--t-max", "1.0"},
      {"zeno-sweep", "--mode", "discrete"},
      {"zeno-sweep", "--mode", "sideways", "--n", "3"},
      {"zeno-sweep", "--mode", "discrete", "--n", "2.5"},
      {"gate"},
      {"gate", "--n", "5", "--tau-d", "0.1"},
      {"gate", "--n", "5", "--format", "csv"},
      {"rabi", "--format", "xml"},
      {"threshold", "--p", "1.5"},
      {"threshold", "--trials", "0"},
      {"fermion-report", "--tau-d", "2", "--tau", "1"},
  };
  for (const auto &args : bad) {
    std::string joined;
    for (const auto &a : args)
      joined += a + " ";
    INFO("args: " << joined);
    const auto r = run(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(count_lines(r.err) == 1);
    CHECK(r.err.rfind("zenogate: ", 0) == 0);
  }
}

TEST_CASE("runtime failures exit 1") {
  const auto missing = run({"rate", "--params", "/nonexistent/file.params"});
  CHECK(missing.code == 1);
  CHECK(count_lines(missing.err) == 1);

  const auto path = std::filesystem::temp_directory_path() / "zenogate_bad.params";
  {
    std::ofstream f(path);
    f << "# comment\nwavelength = 1e-6\nbogus = 1\n";
  }
  const auto bad = run({"rate", "--params", path.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(count_lines(bad.err) == 1);
  std::filesystem::remove(path);

  const auto unwritable = run({"rabi", "--out", "/nonexistent/dir/out.csv"});
  CHECK(unwritable.code == 1);
}

TEST_CASE("output matches the golden files") {
  auto golden = [](const std::string &name) {
    std::ifstream in(std::string(ZENO_GOLDEN_DIR) + "/" + name);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  CHECK(run({"zeno-sweep", "--mode", "discrete", "--n", "1,2,5,10,100,1000"}).out ==
        golden("zeno_sweep_discrete.csv"));
  CHECK(run({"threshold", "--p", "0.1,0.3", "--trials", "10000", "--seed", "42"}).out ==
        golden("threshold.csv"));
}

TEST_CASE("help and version") {
  CHECK(run({"--help"}).code == 0);
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == "1.0.0\n");
}
