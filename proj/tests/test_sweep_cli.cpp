// Copyright 2026 The pairest Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pairest/cli.hpp"
#include "pairest/errors.hpp"
#include "pairest/sweep.hpp"

using namespace pairest;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinAbs;

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pairest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("pairest_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST_CASE("quantity names round-trip", "[sweep]") {
  for (auto q : {Quantity::kQfi00, Quantity::kQfi11, Quantity::kFi00, Quantity::kFi11,
                 Quantity::kUpsilon, Quantity::kWeakComm, Quantity::kStokesXX,
                 Quantity::kMonteCarlo}) {
    CHECK(parse_quantity(quantity_name(q)) == q);
  }
  CHECK_THROWS_AS(parse_quantity("qfi22"), ConfigError);
}

TEST_CASE("epsilon grid includes both endpoints", "[sweep]") {
  const auto pts = EpsilonGrid{-1.0, 1.0, 81}.points();
  REQUIRE(pts.size() == 81);
  CHECK(pts.front() == -1.0);
  CHECK(pts.back() == 1.0);
  CHECK_THAT(pts[40], WithinAbs(0.0, 1e-15));
  CHECK(EpsilonGrid{0.2, 0.2, 2}.points() == std::vector<double>{0.2, 0.2});
}

TEST_CASE("SweepConfig validation", "[sweep]") {
  SweepConfig c;
  CHECK_NOTHROW(c.validate());
  c.epsilon_grid.min = -1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.epsilon_grid.steps = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.sigma = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SweepConfig{};
  c.phi1_list.clear();
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("format_value uses 12 significant digits", "[sweep]") {
  CHECK(format_value(2.0) == "2");
  CHECK(format_value(1.0 / 3.0) == "0.333333333333");
  CHECK(format_value(-0.0) == "0");
  CHECK(format_value(1.23456789012345e-7) == "1.23456789012e-07");
}

TEST_CASE("sweep CSV header and rows", "[sweep][cli]") {
  const auto r = cli({"sweep", "--quantity", "qfi00", "--phi1", "0.5,0.1", "--eps-steps",
                      "3", "--quiet"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());
  CHECK(r.out.find('\r') == std::string::npos);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  CHECK(ls[0] == "quantity,phi0,phi1,epsilon,sigma,value,status");
  CHECK(ls[0] == kSweepCsvHeader);
  CHECK(ls[1] == "qfi00,0.785398163397,0.1,-1,1,2,ok");
  // Sorted by phi1, then epsilon.
  CHECK(fields(ls[3])[2] == "0.1");
  CHECK(fields(ls[3])[3] == "1");
  CHECK(fields(ls[4])[2] == "0.5");
  CHECK(fields(ls[4])[3] == "-1");
  const auto mid = fields(ls[5]);
  CHECK(mid[3] == "0");
  CHECK(mid[5] == format_value(2.0 * std::exp(-0.25)));
}

TEST_CASE("stokes_xx without phase or dephasing is one everywhere", "[sweep][cli]") {
  const auto r = cli({"sweep", "--quantity", "stokes_xx", "--phi0", "0", "--phi1", "0",
                      "--quiet"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 82);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    CHECK(f[5] == "1");
    CHECK(f[6] == "ok");
  }
}

TEST_CASE("singular points are reported and --strict exits 3", "[sweep][cli]") {
  for (const char* q : {"qfi11", "fi11", "upsilon", "weak_comm"}) {
    const auto r = cli({"sweep", "--quantity", q, "--phi1", "0,1", "--eps-steps", "5"});
    REQUIRE(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 11);
    for (std::size_t i = 1; i <= 5; ++i) {
      CHECK_THAT(ls[i], ContainsSubstring(",,singular"));
    }
    for (std::size_t i = 6; i <= 10; ++i) CHECK_THAT(ls[i], ContainsSubstring(",ok"));
    CHECK_THAT(r.err, ContainsSubstring("5 singular"));

    const auto strict = cli({"sweep", "--quantity", q, "--phi1", "0,1", "--eps-steps",
                             "5", "--strict", "--quiet"});
    CHECK(strict.code == kExitSingular);
  }
  // qfi00 is defined at phi1 = 0.
  CHECK(cli({"sweep", "--quantity", "qfi00", "--phi1", "0", "--strict", "--quiet"}).code ==
        kExitOk);
}

TEST_CASE("config errors exit 2", "[cli]") {
  TempDir tmp;
  CHECK(cli({"sweep", "--quantity", "bogus"}).code == kExitConfigError);
  CHECK(cli({"sweep", "--eps-min", "-2"}).code == kExitConfigError);
  CHECK(cli({"sweep", "--eps-steps", "1"}).code == kExitConfigError);
  CHECK(cli({"sweep", "--sigma", "0"}).code == kExitConfigError);
  CHECK(cli({"sweep", "--no-such-flag"}).code == kExitConfigError);
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"sweep", "--config", (tmp.path() / "missing.json").string()}).code ==
        kExitConfigError);

  const auto unwritable =
      cli({"sweep", "--out", (tmp.path() / "no" / "such" / "dir.csv").string()});
  CHECK(unwritable.code == kExitConfigError);
  CHECK_THAT(unwritable.err, ContainsSubstring("config error"));

  const auto bad_json = tmp.path() / "bad.json";
  std::ofstream(bad_json) << "{ \"quantity\": ";
  CHECK(cli({"sweep", "--config", bad_json.string()}).code == kExitConfigError);

  const auto bad_type = tmp.path() / "bad_type.json";
  std::ofstream(bad_type) << R"({"phi1": "one"})";
  CHECK(cli({"sweep", "--config", bad_type.string()}).code == kExitConfigError);

  const auto bad_key = tmp.path() / "bad_key.json";
  std::ofstream(bad_key) << R"({"quantity": "qfi00", "sigmaa": 1})";
  CHECK(cli({"sweep", "--config", bad_key.string()}).code == kExitConfigError);
}

TEST_CASE("montecarlo with one repeat is rejected", "[cli][montecarlo]") {
  const auto r = cli({"montecarlo", "--phi1", "1", "--eps-steps", "2", "--mc-shots",
                      "100", "--mc-repeats", "1", "--quiet"});
  CHECK(r.code == kExitConfigError);
  CHECK_THAT(r.err, ContainsSubstring("fewer than 2 estimates"));
}

TEST_CASE("config file values are overridden by flags", "[cli]") {
  TempDir tmp;
  const auto cfg = tmp.path() / "cfg.json";
  std::ofstream(cfg) << R"({"quantity": "qfi00", "phi1": [0.5], "eps_min": -0.5,
                            "eps_max": 0.5, "eps_steps": 3, "sigma": 1.0})";
  const auto from_file = cli({"sweep", "--config", cfg.string(), "--quiet"});
  REQUIRE(from_file.code == kExitOk);
  auto ls = lines(from_file.out);
  REQUIRE(ls.size() == 4);
  CHECK_THAT(ls[1], StartsWith("qfi00,0.785398163397,0.5,-0.5,1,"));

  const auto over = cli({"sweep", "--config", cfg.string(), "--quantity", "fi00",
                         "--eps-steps", "2", "--phi0-k", "0", "--quiet"});
  REQUIRE(over.code == kExitOk);
  ls = lines(over.out);
  REQUIRE(ls.size() == 3);
  CHECK_THAT(ls[1], StartsWith("fi00,0,0.5,-0.5,1,"));
  CHECK_THAT(ls[2], StartsWith("fi00,0,0.5,0.5,1,"));

  const auto out_path = tmp.path() / "out.csv";
  const auto written = cli({"sweep", "--config", cfg.string(), "--out", out_path.string()});
  REQUIRE(written.code == kExitOk);
  CHECK(written.out.empty());
  CHECK(slurp(out_path) == from_file.out);
  CHECK_THAT(written.err, ContainsSubstring("3 rows (0 singular) -> "));
}

TEST_CASE("sweep output is byte-identical across runs and worker counts", "[cli]") {
  const std::vector<std::string> base{"sweep", "--quantity", "upsilon", "--phi1",
                                      "0.1,1,2", "--quiet"};
  auto with_workers = [&](const char* w) {
    auto args = base;
    args.push_back("--workers");
    args.push_back(w);
    return cli(args).out;
  };
  const std::string a = with_workers("1");
  CHECK(a == with_workers("1"));
  CHECK(a == with_workers("7"));
}

TEST_CASE("montecarlo CSV schema and determinism", "[cli][montecarlo]") {
  const std::vector<std::string> args{"montecarlo", "--phi1", "1", "--eps-min", "0",
                                      "--eps-max", "0.5", "--eps-steps", "2",
                                      "--mc-shots", "2000", "--mc-repeats", "8",
                                      "--seed", "9", "--quiet"};
  const auto a = cli(args);
  REQUIRE(a.code == kExitOk);
  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == kMonteCarloCsvHeader);
  const auto f = fields(ls[1]);
  CHECK(f.size() == fields(ls[0]).size());
  CHECK(f[4] == "2000");
  CHECK(f[11] == "8");
  CHECK(f[12] == "9");
  CHECK(f.back() == "ok");
  CHECK(cli(args).out == a.out);
}
