#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = geodesy::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "geodesy_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

double golden(const std::string& id, const std::string& key) {
  for (const auto& r : geodesy::fixtures::load_golden(std::string(GEODESY_DATA_DIR) + "/golden/fixtures.csv"))
    if (r.id == id && r.key == key) return r.expected;
  throw std::runtime_error("no golden row " + id + "/" + key);
}

}  // namespace

TEST(Cli, ConvertCartesianToGeodetic) {
  const auto r = run({"convert", "--ell", "grs", "--to", "geodetic", "4300244.860", "1062094.681", "4574775.629"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "phi,lambda,h,iterations\n51.24094175,15.41503001,715.1820,5\n");
  // global options may also precede the subcommand
  EXPECT_EQ(run({"--ell", "grs", "convert", "--to", "geodetic", "4300244.860", "1062094.681", "4574775.629"}).out, r.out);
}

TEST(Cli, QuarterMeridianMatchesGolden) {
  const auto r = run({"arc", "--ell", "grs", "--phi", "90d"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "phi,beta,order");
  const double beta = std::stod(row.substr(row.find(',') + 1));
  EXPECT_NEAR(beta, golden("geocore.arc.grs.quarter", "Q"), 1e-3);
}

TEST(Cli, FixtureRunPrintsPass) {
  const auto r = run({"fixtures", "run", "utm.p1.pointA"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS utm.p1.pointA"), std::string::npos);
  EXPECT_NE(r.out.find("X = 157833.4"), std::string::npos);
  EXPECT_NE(r.out.find("fixtures: 1 run, 1 passed, 0 failed"), std::string::npos);
}

TEST(Cli, EveryFixtureIsReachableById) {
  for (const auto& c : geodesy::fixtures::registry()) {
    const auto r = run({"fixtures", "run", c.id});
    EXPECT_EQ(r.code, 0) << c.id << "\n" << r.out << r.err;
    EXPECT_EQ(r.out.rfind("PASS " + c.id, 0), 0u) << r.out;
  }
}

TEST(Cli, WholeSuiteUnderTenSeconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run({"fixtures", "run", "--all"});
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_LT(s, 10.0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, FailingGoldenRowGivesExitOne) {
  const auto g = temp_file("bad_golden.csv", "id,key,expected,tolerance,provenance\nutm.p1.pointA,X,157800,0.02,test\n");
  const auto r = run({"fixtures", "run", "utm.p1.pointA", "--golden", g.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL utm.p1.pointA"), std::string::npos);
}

TEST(Cli, OutputIsByteStable) {
  const std::vector<std::vector<std::string>> cmds{
      {"convert", "--to", "cartesian", "40", "10", "100"},
      {"project", "--proj", "lambert", "--zone", "Nord", "40.5", "11.2"},
      {"reduce", "--dp", "20130.858", "--ha", "235.07", "--hb", "507.75", "--module", "0.999850371"},
      {"curvature", "--surface", "torus", "--u", "0.4", "--v", "1"},
      {"--json", "orbit", "--apo", "1100e3", "--peri", "800e3", "--R", "6371000", "--r", "7300000"},
      {"fixtures", "run", "--all"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Cli, JsonModeHasStableKeys) {
  const auto r = run({"--json", "reduce", "--dp", "20130.858", "--ha", "235.07", "--hb", "507.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["method"], "rigorous");
  EXPECT_TRUE(j[0]["De"].is_number());
  const auto c = nlohmann::json::parse(
      run({"--json", "convert", "--ell", "grs", "--to", "geodetic", "4300244.860", "1062094.681", "4574775.629"}).out);
  EXPECT_TRUE(c[0]["iterations"].is_number_integer());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"convert", "--to", "geodetic", "1", "2"}).code, 2);
  EXPECT_EQ(run({"--unit", "xx", "arc", "--phi", "1"}).code, 2);
  const auto r = run({"arc", "--phi", "12x"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("usage error:", 0), 0u);
}

TEST(Cli, ComputationErrorsExitOne) {
  const auto r = run({"reduce", "--dp", "100", "--ha", "0", "--hb", "200"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("inconsistent observation"), std::string::npos);
  EXPECT_EQ(run({"fixtures", "run", "no.such.case"}).code, 1);
  EXPECT_EQ(run({"project", "--proj", "lambert", "--zone", "Centre", "40", "11"}).code, 1);
  EXPECT_EQ(run({"convert", "--ell", "airy", "--to", "cartesian", "1", "2", "3"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Usage"), std::string::npos);
}

TEST(Cli, FileDrivenCommands) {
  const auto lev = temp_file("lev.csv", "from,to,dh,dist\nA,B,1.000,1\nB,C,2.000,2\nC,A,-2.994,3\n");
  const auto r = run({"adjust-level", lev.string(), "--fixed", "A=100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("B,100.9990,"), std::string::npos);
  EXPECT_NE(r.out.find("C,102.9970,"), std::string::npos);

  std::ostringstream common;
  common << "name,x1,y1,z1,x2,y2,z2\n";
  common.setf(std::ios::fixed);
  common.precision(3);
  for (const auto& p : geodesy::fixtures::data::bursa_wolf_common())
    common << p.name << ',' << p.s1.x << ',' << p.s1.y << ',' << p.s1.z << ',' << p.s2.x << ',' << p.s2.y << ','
           << p.s2.z << '\n';
  const auto f = run({"fit-datum", temp_file("common.csv", common.str()).string()});
  EXPECT_EQ(f.code, 0) << f.err;
  EXPECT_NE(f.out.find("rms"), std::string::npos);

  const auto pts = temp_file("pts.csv", "name,x,y,z\nA,4351694.594,1056274.819,4526994.706\n");
  const auto a = run({"apply-datum", "--params", "0.05,0.1,-0.03,0,0,0,0", pts.string()});
  EXPECT_EQ(a.out, "name,x,y,z\nA,4351694.6440,1056274.9190,4526994.6760\n");
  EXPECT_EQ(run({"adjust-level", "/nonexistent/file.csv", "--fixed", "A=0"}).code, 2);
}
