// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "relcoh/errors.hpp"
#include "relcoh/poincare.hpp"
#include "support/oracle.hpp"

using namespace relcoh;
using namespace relcoh::cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"relcoh"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "relcoh_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("compute canonical at r = 5 is about one percent above the rest energy") {
    const Outcome o = invoke({"compute", "--family", "canonical", "--r", "5", "--pbar", "0"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    const double e = j["quantities"]["energy"]["value"];
    CHECK(e > 1.005);
    CHECK(e < 1.015);
    CHECK(j["quantities"]["energy"]["method"] == "series");
    CHECK(j["quantities"]["product_xp"]["value"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
  }

  TEST_CASE("compute poincare energy at rest is the effective mass") {
    const Outcome o = invoke({"compute", "--family", "poincare", "--r", "8", "--pbar", "0", "--quantities", "energy"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["quantities"].size() == 1);
    const double want = oracle::scaled_k(1, 128.0) / oracle::scaled_k(0, 128.0);
    CHECK(j["quantities"]["energy"]["value"].get<double>() == doctest::Approx(want).epsilon(1e-10));
  }

  TEST_CASE("compute --verify attaches small oracle deltas") {
    const Outcome o = invoke({"compute", "--family", "lorentzian", "--r", "3", "--beta", "0.6", "--verify"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    for (const char* q : {"energy", "momentum", "var_p"}) {
      INFO(q);
      CHECK(std::abs(j["quantities"][q]["oracle_delta"].get<double>()) < 1e-8);
    }
  }

  TEST_CASE("lorentzian beta at the light cone exits 2 naming the constraint") {
    const Outcome o = invoke({"compute", "--family", "lorentzian", "--beta", "1.0", "--r", "8"});
    CHECK(o.code == 2);
    CHECK(o.err.find("beta") != std::string::npos);
    CHECK(o.err.find("below 1") != std::string::npos);
    CHECK(o.out.empty());
  }

  TEST_CASE("malformed inputs exit 2") {
    const std::vector<std::vector<const char*>> bad{
        {"compute"},
        {"compute", "--family", "tachyon", "--r", "1"},
        {"compute", "--family", "poincare"},
        {"compute", "--family", "poincare", "--r", "-1"},
        {"compute", "--family", "poincare", "--r", "abc"},
        {"compute", "--family", "poincare", "--r", "2", "--pbar", "1", "--sbar", "1"},
        {"compute", "--family", "poincare", "--r", "2", "--beta", "0.1"},
        {"compute", "--family", "lorentzian", "--r", "2", "--beta", "-1.5"},
        {"compute", "--family", "lorentzian", "--r", "2", "--pbar", "1"},
        {"compute", "--family", "poincare", "--r", "2", "--quantities", "var_v"},
        {"compute", "--family", "poincare", "--r", "2", "--quantities", "spin"},
        {"compute", "--family", "canonical", "--massless", "--sbar", "1", "--si", "--mass-mev", "1"},
        {"compute", "--family", "poincare", "--r", "2", "--si"},
        {"compute", "--family", "poincare", "--r", "2", "--mass-mev", "1"},
        {"sweep"},
        {"sweep", "--figure", "0"},
        {"sweep", "--figure", "seven"},
        {"sweep", "--figure", "1", "--points", "10"},
        {"sweep", "--figure", "custom", "--family", "poincare"},
        {"sweep", "--figure", "custom", "--family", "lorentzian", "--axis", "beta", "--lo", "-1", "--hi", "0.5",
         "--points", "5"},
        {"sweep", "--figure", "custom", "--family", "poincare", "--axis", "beta", "--lo", "0", "--hi", "0.5",
         "--points", "5"},
        {"sweep", "--figure", "custom", "--family", "poincare", "--axis", "sbar", "--lo", "1", "--hi", "0",
         "--points", "5"},
        {"sweep", "--figure", "custom", "--family", "poincare", "--axis", "sbar", "--lo", "0", "--hi", "1",
         "--points", "1"},
        {"sweep", "--figure", "2", "--format", "xml"},
        {"verify", "--suite", "nope"},
        {"verify", "--tol", "rel=-1"},
        {"verify", "--tol", "bound=1"},
        {"--no-such-flag"},
    };
    for (const auto& args : bad) {
      std::vector<const char*> argv{"relcoh"};
      argv.insert(argv.end(), args.begin(), args.end());
      std::ostringstream out, err;
      const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
      std::string joined;
      for (const char* a : args) joined += std::string(a) + " ";
      INFO(joined << "-> " << err.str());
      CHECK(code == 2);
      CHECK_FALSE(err.str().empty());
    }
  }

  TEST_CASE("figure 1 has 399 interior beta rows at r = 8") {
    const SweepSpec spec = SweepSpec::figure_preset(1);
    CHECK(spec.r == 8.0);
    const Outcome o = invoke({"sweep", "--figure", "1"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 400);
    CHECK(ls[0] == "beta,var_x,ref_var_x");
    CHECK(ls[1].rfind("-0.995,", 0) == 0);
    CHECK(ls[200].rfind("0,", 0) == 0);
    CHECK(ls[399].rfind("0.995,", 0) == 0);
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(fields(ls[i])[2] == "0.5");
  }

  TEST_CASE("figure 6 has 401 sbar rows with the 0.25 reference column") {
    const Outcome o = invoke({"sweep", "--figure", "6"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 402);
    CHECK(ls[0] == "sbar,product_xp,ref_product_xp");
    CHECK(ls[1].rfind("-10,", 0) == 0);
    CHECK(ls[401].rfind("10,", 0) == 0);
    CHECK(fields(ls[7])[2] == "0.25");
  }

  TEST_CASE("figure presets take an r override") {
    const Outcome o = invoke({"sweep", "--figure", "4", "--r", "2"});
    REQUIRE(o.code == 0);
    const auto row = fields(lines(o.out)[201]);
    const double want = poincare::position_variance(poincare::PoincareState::make(0.0, 0.0, 2.0));
    CHECK(std::stod(row[1]) == doctest::Approx(want).epsilon(1e-11));
  }

  TEST_CASE("custom sweep with 2 points gives 2 rows") {
    const Outcome o = invoke({"sweep", "--figure", "custom", "--family", "canonical", "--axis", "pbar", "--lo", "0",
                              "--hi", "1", "--points", "2", "--quantities", "energy,velocity"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "pbar,energy,velocity");
  }

  TEST_CASE("json sweep emits one object per row") {
    const Outcome o = invoke({"sweep", "--figure", "custom", "--family", "lorentzian", "--axis", "beta", "--lo",
                              "-0.5", "--hi", "0.5", "--points", "3", "--format", "json"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 3);
    const auto j = nlohmann::json::parse(ls[1]);
    CHECK(j["beta"] == 0.0);
    CHECK(j["var_p"].get<double>() > 0.0);
    CHECK(j["ref_product_xp"] == 0.25);
  }

  TEST_CASE("sweeps are byte-identical across runs and worker counts") {
    SweepSpec spec = SweepSpec::figure_preset(3);
    const std::string a = to_csv(run_sweep(spec, 1));
    const std::string b = to_csv(run_sweep(spec, 4));
    const std::string c = to_csv(run_sweep(spec, 4));
    CHECK(a == b);
    CHECK(b == c);
  }

  TEST_CASE("csv numbers round-trip and ignore the global locale") {
    const SweepTable table = run_sweep(SweepSpec::figure_preset(5), 2);
    const std::string plain = to_csv(table);
    const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
    const std::string localized = to_csv(table);
    std::locale::global(saved);
    CHECK(plain == localized);

    const auto ls = lines(plain);
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const auto fs = fields(ls[i]);
      REQUIRE(fs.size() == table.header.size());
      for (std::size_t j = 0; j < fs.size(); ++j) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(fs[j].data(), fs[j].data() + fs[j].size(), v);
        REQUIRE(ec == std::errc());
        CHECK(ptr == fs[j].data() + fs[j].size());
        CHECK(format_number(v) == fs[j]);
        CHECK(std::abs(v - table.rows[i - 1][j]) <= 1e-11 * std::abs(table.rows[i - 1][j]));
      }
    }
  }

  TEST_CASE("an invalid scale is rejected before any point runs") {
    SweepSpec spec = SweepSpec::figure_preset(4);
    spec.r = 0.0;
    CHECK_THROWS_WITH_AS(run_sweep(spec), doctest::Contains("r = sigma/lambda_c"), DomainError);
  }

  TEST_CASE("output directory from the environment") {
    const auto dir = scratch("outdir");
    std::filesystem::create_directories(dir);
    std::filesystem::remove(dir / "figure2.csv");
    ::setenv("RELCOH_OUTPUT_DIR", dir.c_str(), 1);
    const Outcome o = invoke({"sweep", "--figure", "2"});
    const Outcome named = invoke({"sweep", "--figure", "2", "--out", "named.csv"});
    ::unsetenv("RELCOH_OUTPUT_DIR");
    REQUIRE(o.code == 0);
    CHECK(o.out.empty());
    REQUIRE(std::filesystem::exists(dir / "figure2.csv"));
    REQUIRE(named.code == 0);
    REQUIRE(std::filesystem::exists(dir / "named.csv"));
    std::ifstream in(dir / "figure2.csv", std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text == invoke({"sweep", "--figure", "2"}).out);
  }

  TEST_CASE("unwritable output exits 1") {
    const Outcome o = invoke({"sweep", "--figure", "2", "--out", "/nonexistent-dir/x.csv"});
    CHECK(o.code == 1);
  }

  TEST_CASE("config file sits between flags and defaults") {
    const auto path = scratch("compute.cfg");
    std::ofstream(path) << "# state\nfamily = poincare\nr = 4\npbar=0.5\nquantities=momentum\n";
    const Outcome from_file = invoke({"compute", "--config", path.c_str()});
    REQUIRE(from_file.code == 0);
    const auto j = nlohmann::json::parse(from_file.out);
    CHECK(j["inputs"]["r"] == 4.0);
    CHECK(j["quantities"]["momentum"]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));

    const Outcome flag_wins = invoke({"compute", "--config", path.c_str(), "--pbar", "0.25"});
    REQUIRE(flag_wins.code == 0);
    const auto k = nlohmann::json::parse(flag_wins.out);
    CHECK(k["inputs"]["r"] == 4.0);
    CHECK(k["quantities"]["momentum"]["value"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));

    const auto bad = scratch("bad.cfg");
    std::ofstream(bad) << "colour=blue\n";
    CHECK(invoke({"compute", "--config", bad.c_str()}).code == 2);
    CHECK(invoke({"compute", "--config", scratch("missing.cfg").c_str()}).code == 2);
  }

  TEST_CASE("si conversion scales by the mass and the Compton wavelength") {
    const Constants k = Constants::load(default_constants_path());
    CHECK(k.hbar_c_mev_m() == doctest::Approx(197.3269804e-15).epsilon(1e-9));

    const Outcome nat = invoke({"compute", "--family", "poincare", "--r", "2", "--pbar", "0.4"});
    const Outcome si = invoke({"compute", "--family", "poincare", "--r", "2", "--pbar", "0.4", "--si", "--mass-mev",
                               "938.272"});
    REQUIRE(nat.code == 0);
    REQUIRE(si.code == 0);
    const auto a = nlohmann::json::parse(nat.out)["quantities"];
    const auto b = nlohmann::json::parse(si.out)["quantities"];
    const double m = 938.272;
    const double sigma = 2.0 * k.hbar_c_mev_m() / m;
    CHECK(b["energy"]["unit"] == "MeV");
    CHECK(b["energy"]["value"].get<double>() == doctest::Approx(m * a["energy"]["value"].get<double>()));
    CHECK(b["velocity"]["value"].get<double>() == doctest::Approx(k.c * a["velocity"]["value"].get<double>()));
    CHECK(b["var_x"]["value"].get<double>() == doctest::Approx(sigma * sigma * a["var_x"]["value"].get<double>()));
    CHECK(b["var_p"]["value"].get<double>() ==
          doctest::Approx(std::pow(m / 2.0, 2) * a["var_p"]["value"].get<double>()));
  }

  TEST_CASE("verify exit codes and tolerance override") {
    const Outcome ok = invoke({"verify", "--suite", "specfun"});
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("TAP version 13\n", 0) == 0);
    CHECK(ok.out.find("not ok") == std::string::npos);

    const Outcome strict = invoke({"verify", "--suite", "specfun", "--tol", "rel=1e-30"});
    CHECK(strict.code == 1);
    CHECK(strict.out.find("not ok") != std::string::npos);
    CHECK(strict.out.find("tol=1e-30 (rel)") != std::string::npos);

    const Outcome robertson = invoke({"verify", "--suite", "lorentzian", "--tol", "rel=1e-6"});
    CHECK(robertson.code == 0);
    CHECK(robertson.out.find("lorentzian/robertson.grid") != std::string::npos);
  }

  TEST_CASE("explain-units prints the convention table") {
    const Outcome o = invoke({"--explain-units"});
    CHECK(o.code == 0);
    CHECK(o.out.find("var_p") != std::string::npos);
    CHECK(o.out.find("(hbar/sigma)^2") != std::string::npos);
  }
}
