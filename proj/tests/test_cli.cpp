// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/cli.hpp>
#include <anisodot/csv.hpp>
#include <anisodot/errors.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace anisodot;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("anisodot_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the executable; returns its exit status, stderr goes to `err_file`.
int cli(const std::string& args, const fs::path& err_file) {
  const std::string cmd = std::string(ANISODOT_CLI_PATH) + " " + args +
                          " >/dev/null 2>" + err_file.string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

TEST_CASE("golden CSV headers") {
  CHECK(join(csv::spectrum_header()) == "g,epsilon,sector,level,E_rel,gap");
  CHECK(join(csv::entanglement_header()) ==
        "g,epsilon,sector,lambda0,lambda1,lambda2,lambda3,lambda4,lambda5,"
        "lambda6,lambda7,S_vn,L_lin,completeness");
  CHECK(join(csv::asymptotic_header()) ==
        "epsilon,lambda0,lambda1,lambda2,lambda3,lambda4,lambda5,lambda6,"
        "lambda7,L_closed,L_spectrum,S_vn");
  CHECK(join(csv::convergence_header()) ==
        "parameter,value,E_rel0,delta_from_previous");
}

TEST_CASE("number formatting and quoting") {
  CHECK(csv::format(0.1) == "0.1");
  CHECK(csv::format(1.0 / 3.0) == "0.333333333333");
  CHECK(csv::format(2.0) == "2");
  CHECK(csv::format(1e-20) == "1e-20");
  CHECK(csv::escape("ee") == "ee");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("argument parsing") {
  auto p = parse_args({"spectrum", "--g", "0,1.5", "--epsilon", "1,2",
                       "--sectors", "ee,oe:+1", "--n-max", "20"});
  CHECK(p.config.subcommand == Subcommand::spectrum);
  CHECK(p.config.g_values == std::vector<double>{0.0, 1.5});
  CHECK(p.config.epsilons == std::vector<double>{1.0, 2.0});
  CHECK(p.config.sectors.size() == 2);
  CHECK(p.config.n_max == 20);

  p = parse_args({"entanglement", "--basis-scale", "auto"});
  CHECK_FALSE(p.config.basis_scale.has_value());
  p = parse_args({"entanglement", "--basis-scale", "0.7"});
  CHECK(*p.config.basis_scale == 0.7);

  CHECK(parse_args({"--help"}).help);
  CHECK_THROWS_AS(parse_args({}), ConfigurationError);
  CHECK_THROWS_AS(parse_args({"spectrum", "--bogus"}), ConfigurationError);
  CHECK_THROWS_AS(parse_args({"spectrum", "--basis-scale", "x"}),
                  ConfigurationError);
  CHECK_THROWS_AS(parse_args({"spectrum", "--g", "1", "--g-points", "3"}),
                  ConfigurationError);
}

TEST_CASE("flags override the JSON config") {
  TempDir tmp;
  const auto cfg_path = tmp.path / "run.json";
  std::ofstream(cfg_path) << R"({"epsilon": [1.5], "n_max": 16, "levels": 2,
                                 "g": [1.0, 2.0], "basis_scale": "auto"})";
  const auto p = parse_args({"spectrum", "--config", cfg_path.string(),
                             "--n-max", "12"});
  CHECK(p.config.n_max == 12);
  CHECK(p.config.levels == 2);
  CHECK(p.config.epsilons == std::vector<double>{1.5});
  CHECK(p.config.g_values == std::vector<double>{1.0, 2.0});
  CHECK_FALSE(p.config.basis_scale.has_value());

  RunConfig c;
  CHECK_THROWS_AS(apply_json(c, R"({"nmax": 3})"), ConfigurationError);
  CHECK_THROWS_AS(apply_json(c, R"({"n_max": "three"})"), ConfigurationError);
  CHECK_THROWS_AS(apply_json(c, "[1, 2"), ConfigurationError);
}

TEST_CASE("configuration validation") {
  RunConfig c;
  c.g_values.clear();
  c.g_min = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c.g_min = 1.0;
  c.g_points = 0;
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c.g_points = 3;
  CHECK_NOTHROW(c.validate());
  c.epsilons.clear();
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c.epsilons = {1.0};
  c.subcommand = Subcommand::asymptotic;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.subcommand = Subcommand::convergence;
  c.ladder = "bogus";
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
  c.ladder = "n_max";
  c.ladder_values = {16, 12};
  CHECK_THROWS_AS(c.validate(), ConfigurationError);
}

TEST_CASE("free spectrum of the isotropic trap") {
  RunConfig c;
  c.subcommand = Subcommand::spectrum;
  c.g_values = {0.0};
  c.epsilons = {1.0};
  c.levels = 3;
  std::ostringstream os;
  CHECK(write_table(c, os) == 12);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 13);
  for (std::size_t i = 1; i < l.size(); ++i) {
    const auto f = split(l[i]);
    const auto s = SectorLabel::parse(f[2]);
    const int level = std::stoi(f[3]);
    // Parity sector (px, py) at eps = 1: E = 2 (nx + ny + 1) with
    // nx + ny = px + py + 2 k, degeneracy k + 1 inside the sector.
    const int base = static_cast<int>(s.x_parity()) + static_cast<int>(s.y_parity());
    const int shell = level == 0 ? 0 : 1;
    CHECK(std::stod(f[4]) == doctest::Approx(2.0 * (base + 2 * shell + 1)));
  }
}

TEST_CASE("rows are sorted by epsilon, g, sector, level") {
  RunConfig c;
  c.subcommand = Subcommand::spectrum;
  c.g_values = {3.0, 0.5};
  c.epsilons = {2.0, 1.2};
  c.sectors = {"oe", "ee"};
  c.levels = 2;
  c.n_max = 12;
  std::ostringstream os;
  write_table(c, os);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 1 + 2 * 2 * 2 * 2);
  CHECK(l[1].rfind("0.5,1.2,ee,0,", 0) == 0);
  CHECK(l[2].rfind("0.5,1.2,ee,1,", 0) == 0);
  CHECK(l[3].rfind("0.5,1.2,oe,0,", 0) == 0);
  CHECK(l[5].rfind("3,1.2,ee,0,", 0) == 0);
  CHECK(l[9].rfind("0.5,2,ee,0,", 0) == 0);
}

TEST_CASE("asymptotic row at strong anisotropy") {
  RunConfig c;
  c.subcommand = Subcommand::asymptotic;
  c.epsilons = {10.0};
  std::ostringstream os;
  write_table(c, os);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 2);
  const auto f = split(l[1]);
  REQUIRE(f.size() == 12);
  CHECK(std::stod(f[1]) == doctest::Approx(0.490688).epsilon(1e-4));
  CHECK(std::stod(f[9]) == doctest::Approx(0.759142).epsilon(2e-5));
  CHECK(std::stod(f[10]) == doctest::Approx(std::stod(f[9])).epsilon(1e-9));
  CHECK(std::stod(f[11]) == doctest::Approx(2.13618).epsilon(1e-4));
}

TEST_CASE("entanglement rows of the free trap") {
  RunConfig c;
  c.subcommand = Subcommand::entanglement;
  c.g_values = {0.0};
  c.epsilons = {1.5};
  c.n_max = 12;
  std::ostringstream os;
  write_table(c, os);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 3);
  const auto ee = split(l[1]);
  CHECK(ee[2] == "ee");
  CHECK(std::stod(ee[3]) == doctest::Approx(1.0));
  CHECK(std::stod(ee[11]) == doctest::Approx(1.0));
  CHECK(std::stod(ee[12]) == doctest::Approx(0.5));
  CHECK(std::stod(ee[13]) == doctest::Approx(1.0));
  const auto oe = split(l[2]);
  CHECK(oe[2] == "oe");
  CHECK(std::stod(oe[3]) == doctest::Approx(0.5));
  CHECK(std::stod(oe[4]) == doctest::Approx(0.5));
}

TEST_CASE("convergence ladders") {
  RunConfig c;
  c.subcommand = Subcommand::convergence;
  c.g_values = {10.0};
  c.epsilons = {1.5};
  c.ladder = "n_max";
  c.ladder_values = {12, 16, 20, 24, 28};
  auto rows = convergence_report(c);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].delta <= 0.0);
    CHECK_FALSE(rows[i].violation);
  }

  c.ladder = "quad";
  c.ladder_values = {96, 192};
  c.n_max = 20;
  rows = convergence_report(c);
  CHECK(std::abs(rows[1].delta) < 1e-9);
  CHECK_FALSE(rows[1].violation);

  c.ladder = "sp_cutoff";
  c.ladder_values = {20, 24, 28, 32};
  c.basis_scale = 0.8;
  rows = convergence_report(c);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].e_rel0 >= rows[i - 1].e_rel0);
    CHECK_FALSE(rows[i].violation);
  }
}

TEST_CASE("executable: outputs, sidecar, determinism and exit codes") {
  TempDir tmp;
  const auto err = tmp.path / "stderr.txt";
  const auto a = tmp.path / "a.csv";
  const auto b = tmp.path / "b.csv";
  const auto c = tmp.path / "c.csv";
  const std::string args =
      "entanglement --g-min 0.5 --g-max 20 --g-points 3 --epsilon 1.3,1.1 "
      "--n-max 16 --output ";
  REQUIRE(cli(args + a.string(), err) == 0);
  REQUIRE(cli(args + b.string(), err) == 0);
  REQUIRE(cli(args + c.string() + " --jobs 3", err) == 0);
  const std::string text = slurp(a);
  CHECK(!text.empty());
  CHECK(text == slurp(b));
  CHECK(text == slurp(c));
  CHECK(fs::exists(tmp.path / "a.csv.meta.json"));
  CHECK(text.find("generated") == std::string::npos);
  CHECK(lines(text).front() == join(csv::entanglement_header()));
  CHECK_FALSE(fs::exists(tmp.path / "a.csv.partial"));

  const auto s = tmp.path / "s.csv";
  CHECK(cli("spectrum --g 0 --epsilon 1 --output " + s.string(), err) == 0);
  CHECK(lines(slurp(s)).front() == join(csv::spectrum_header()));

  // Usage errors.
  CHECK(cli("spectrum --bogus", err) == 1);
  CHECK(slurp(err).rfind("error: kind=configuration message=\"", 0) == 0);
  CHECK(cli("spectrum --g-min 0 --g-points 3", err) == 1);
  CHECK(cli("asymptotic --epsilon 1", err) == 1);
  CHECK(slurp(err).rfind("error: kind=domain", 0) == 0);

  // Numeric failure: an outer quadrature far too coarse for the basis.
  const auto bad = tmp.path / "bad.csv";
  CHECK(cli("spectrum --g 5 --epsilon 1.2 --n-max 24 --outer-order 4 --output " +
                bad.string(),
            err) == 2);
  CHECK(slurp(err).rfind("error: kind=accuracy", 0) == 0);
  CHECK_FALSE(fs::exists(bad));
  CHECK_FALSE(fs::exists(tmp.path / "bad.csv.partial"));
}
