#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"

namespace fs = std::filesystem;
using geomech::cli::run;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("geomech_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int exec(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string out() const { return out_.str(); }
  std::string err() const { return err_.str(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + " ");
  if (pos == std::string::npos) return -1.0;
  return std::stod(text.substr(pos + key.size() + 1));
}

}  // namespace

TEST_F(Cli, SimulateEquilibrium) {
  ASSERT_EQ(exec({"simulate", "--pi0", "1,0,0", "--steps", "100", "--csv", path("t.csv"), "--json", path("d.json")}), 0)
      << err();
  const auto rows = lines(slurp(path("t.csv")));
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(rows[0], "t,Pi1,Pi2,Pi3,energy,casimir_1");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream row(rows[i]);
    std::string t, a, b, c;
    std::getline(row, t, ',');
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    std::getline(row, c, ',');
    EXPECT_EQ(a, "1");
    EXPECT_EQ(b, "0");
    EXPECT_EQ(c, "0");
  }
  const auto d = nlohmann::json::parse(slurp(path("d.json")));
  EXPECT_EQ(d["schema_version"], 1);
  EXPECT_EQ(d["command"], "simulate");
  EXPECT_EQ(d["steps"], 100);
  EXPECT_EQ(d["drift"]["energy"]["max"], 0.0);
}

TEST_F(Cli, SimulateHeavyTopAndCanonical) {
  ASSERT_EQ(exec({"simulate", "--system", "heavy-top", "--integrator", "coadjoint-splitting", "--steps", "50", "--csv",
                  path("t.csv"), "--json", path("d.json")}),
            0)
      << err();
  EXPECT_EQ(lines(slurp(path("t.csv")))[0], "t,Pi1,Pi2,Pi3,G1,G2,G3,energy,casimir_1,casimir_2");
  ASSERT_EQ(exec({"simulate", "--system", "canonical", "--dimension", "2", "--q0", "1,0", "--p0", "0,1", "--steps",
                  "10", "--csv", path("c.csv"), "--json", path("c.json")}),
            0)
      << err();
  EXPECT_EQ(lines(slurp(path("c.csv")))[0], "t,q1,q2,p1,p2,energy");
  ASSERT_EQ(exec({"simulate", "--with-group", "--steps", "10", "--csv", path("g.csv"), "--json", path("g.json")}), 0);
  EXPECT_EQ(lines(slurp(path("g.csv")))[0], "t,Pi1,Pi2,Pi3,energy,casimir_1,M1,M2,M3");
}

TEST_F(Cli, CheckHjOnScaledInertiaFamily) {
  ASSERT_EQ(exec({"check-hj", "--k", "2", "--samples", "50", "--out", path("hj.json")}), 0) << err();
  EXPECT_GE(value_after(out(), "hj_max"), 0.0);
  EXPECT_LE(value_after(out(), "hj_max"), 1e-5);
  const auto j = nlohmann::json::parse(slurp(path("hj.json")));
  EXPECT_EQ(j["command"], "check-hj");
  EXPECT_EQ(j["section"], "scaled-inertia-family");
  EXPECT_EQ(j["per_sample"].size(), 50u);
  EXPECT_LE(j["hj_max"].get<double>(), 1e-5);
}

TEST_F(Cli, CheckHjReportsWithoutFailingOnLargeResiduals) {
  EXPECT_EQ(exec({"check-hj", "--section", "perturbed", "--samples", "10", "--out", path("p.json")}), 0) << err();
  EXPECT_GT(value_after(out(), "hj_max"), 1e-5);
}

TEST_F(Cli, VerifyTheoremCanonical) {
  ASSERT_EQ(exec({"verify-theorem", "--system", "canonical", "--section", "exact", "--samples", "20", "--out",
                  path("c.json")}),
            0)
      << err();
  EXPECT_NE(out().find("verdict CONSISTENT"), std::string::npos);
  EXPECT_LE(value_after(out(), "curl_max"), 1e-6);
}

TEST_F(Cli, SelftestPrintsJacobiDefect) {
  ASSERT_EQ(exec({"bracket-selftest", "--seed", "7", "--out", path("s.json")}), 0) << err();
  const double jac = value_after(out(), "jacobi max defect");
  EXPECT_GE(jac, 0.0);
  EXPECT_LE(jac, 1e-6);
  EXPECT_NE(out().find("bracket selftest passed"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(slurp(path("s.json")))["seed"], 7);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(exec({"simulate", "--bogus"}), 2);
  EXPECT_EQ(exec({}), 2);
  EXPECT_EQ(exec({"--help"}), 0);
  EXPECT_EQ(exec({"simulate", "--inertia", "1,-2,3", "--csv", path("a.csv"), "--json", path("a.json")}), 2);
  EXPECT_FALSE(err().empty());
  EXPECT_EQ(exec({"simulate", "--dt", "nan"}), 2);
  EXPECT_EQ(exec({"simulate", "--integrator", "euler"}), 2);
  EXPECT_EQ(exec({"check-hj", "--system", "heavy-top", "--section", "body-constant", "--mu0", "1,2,3"}), 2);
  EXPECT_EQ(exec({"verify-theorem", "--section", "constant-momentum", "--samples", "10", "--out", path("v.json")}), 1);
  EXPECT_NE(out().find("verdict INCONSISTENT"), std::string::npos);
  EXPECT_EQ(exec({"simulate", "--integrator", "implicit-midpoint", "--dt", "0.5", "--newton-max-iter", "1", "--steps",
                  "3", "--csv", path("n.csv"), "--json", path("n.json")}),
            1);
  EXPECT_NE(err().find("residual"), std::string::npos);
}

TEST_F(Cli, ConfigFiles) {
  write("bad_schema.json", R"({"schema_version": 2})");
  EXPECT_EQ(exec({"simulate", "--config", path("bad_schema.json")}), 2);
  write("missing_schema.json", R"({"dt": 0.01})");
  EXPECT_EQ(exec({"simulate", "--config", path("missing_schema.json")}), 2);
  write("unknown.json", R"({"schema_version": 1, "colour": "red"})");
  EXPECT_EQ(exec({"simulate", "--config", path("unknown.json")}), 2);
  write("broken.json", "{");
  EXPECT_EQ(exec({"simulate", "--config", path("broken.json")}), 2);
  EXPECT_EQ(exec({"simulate", "--config", path("absent.json")}), 2);
}

TEST_F(Cli, FlagsOverrideConfig) {
  write("run.json", R"({"schema_version": 1, "steps": 20, "dt": 0.01, "pi0": [0, 1, 0], "seed": 9})");
  ASSERT_EQ(exec({"simulate", "--config", path("run.json"), "--csv", path("a.csv"), "--json", path("a.json")}), 0)
      << err();
  auto d = nlohmann::json::parse(slurp(path("a.json")));
  EXPECT_EQ(d["steps"], 20);
  EXPECT_EQ(d["seed"], 9);
  EXPECT_EQ(d["final_state"][1], 1.0);

  ASSERT_EQ(exec({"simulate", "--config", path("run.json"), "--steps", "5", "--csv", path("b.csv"), "--json",
                  path("b.json")}),
            0);
  d = nlohmann::json::parse(slurp(path("b.json")));
  EXPECT_EQ(d["steps"], 5);
  EXPECT_DOUBLE_EQ(d["dt"].get<double>(), 0.01);
  EXPECT_EQ(lines(slurp(path("b.csv"))).size(), 7u);
}

TEST_F(Cli, OutputsAreByteIdenticalAcrossRuns) {
  for (const char* tag : {"1", "2"}) {
    const std::string t(tag);
    ASSERT_EQ(exec({"simulate", "--system", "heavy-top", "--integrator", "implicit-midpoint", "--steps", "200",
                    "--csv", path("t" + t + ".csv"), "--json", path("d" + t + ".json")}),
              0);
    ASSERT_EQ(exec({"verify-theorem", "--system", "heavy-top", "--section", "perturbed", "--samples", "30", "--seed",
                    "4", "--threads", t, "--out", path("v" + t + ".json")}),
              0);
  }
  EXPECT_EQ(slurp(path("t1.csv")), slurp(path("t2.csv")));
  EXPECT_EQ(slurp(path("d1.json")), slurp(path("d2.json")));
  // The thread count is not part of the report, so differing thread counts must agree.
  EXPECT_EQ(slurp(path("v1.json")), slurp(path("v2.json")));
}

TEST_F(Cli, ApplySettingValidatesValues) {
  geomech::cli::RunConfig cfg;
  geomech::cli::apply_setting(cfg, "inertia", "2,3,4");
  EXPECT_EQ(cfg.inertia, (std::vector<double>{2, 3, 4}));
  geomech::cli::apply_setting(cfg, "seed", "18446744073709551615");
  EXPECT_EQ(cfg.seed, 18446744073709551615ULL);
  EXPECT_THROW(geomech::cli::apply_setting(cfg, "dt", "abc"), std::invalid_argument);
  EXPECT_THROW(geomech::cli::apply_setting(cfg, "steps", "-3"), std::invalid_argument);
  EXPECT_THROW(geomech::cli::apply_setting(cfg, "nope", "1"), std::invalid_argument);
  for (const auto& key : geomech::cli::setting_keys()) EXPECT_FALSE(key.empty());
}
