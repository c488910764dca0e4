#include "common.hpp"

#include <cstdlib>
#include <filesystem>

using namespace frey;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, TraceSet) {
  const auto r = run({"trace-set", "--q", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "q=3: [-2, 2]\n");
  const auto j = run({"--format", "json", "trace-set", "--q", "3", "--q", "7"});
  const auto ls = lines(j.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(nlohmann::json::parse(ls[1])["values"], nlohmann::json({-4, -2, 2}));
}

TEST(Cli, TraceSetErrors) {
  EXPECT_EQ(run({"trace-set", "--q", "5"}).code, 1);
  EXPECT_EQ(run({"trace-set", "--q", "9"}).code, 1);
  EXPECT_EQ(run({"trace-set"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
}

TEST(Cli, SieveLevel50) {
  const auto r = run({"sieve", "--fixtures", FREY_FIXTURE, "--labels-level", "50", "--aux", "3", "--p-min", "13"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("50A1: eliminated"), std::string::npos);
  EXPECT_NE(r.out.find("50B1: eliminated"), std::string::npos);
}

TEST(Cli, SieveSurvivorsAreInconclusive) {
  const auto r = run({"sieve", "--fixtures", FREY_FIXTURE, "--labels", "1200K1,1200A1", "--aux", "7,11,13", "--p-min", "17",
                      "--format", "json"});
  EXPECT_EQ(r.code, 2);
  for (const auto& l : lines(r.out)) EXPECT_TRUE(nlohmann::json::parse(l)["unbounded"].get<bool>());
}

TEST(Cli, SieveErrors) {
  EXPECT_EQ(run({"sieve", "--fixtures", "/nonexistent.json", "--labels-level", "50", "--aux", "3"}).code, 1);
  EXPECT_EQ(run({"sieve", "--fixtures", FREY_FIXTURE, "--labels", "nope", "--aux", "3"}).code, 1);
  EXPECT_EQ(run({"sieve", "--fixtures", FREY_FIXTURE, "--labels-level", "50", "--aux", "3,x"}).code, 1);
  EXPECT_EQ(run({"sieve", "--fixtures", FREY_FIXTURE, "--aux", "3"}).code, 1);
}

TEST(Cli, CriterionSingleP) {
  const auto r = run({"criterion", "--p", "17", "--n-max", "200", "--fixtures", FREY_FIXTURE});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "p=17 branch K: 1200K1 n=6 q=103 zetas=3");
  EXPECT_EQ(ls[1].rfind("p=17 branch A: 1200A1 n=14", 0), 0u);
}

TEST(Cli, CriterionMissingWitness) {
  const auto r = run({"criterion", "--p", "17", "--n-max", "4", "--branch", "K", "--fixtures", FREY_FIXTURE});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "p=17 branch K: no witness with n <= 4\n");
}

TEST(Cli, CriterionErrors) {
  EXPECT_EQ(run({"criterion", "--p", "21", "--fixtures", FREY_FIXTURE}).code, 1);
  EXPECT_EQ(run({"criterion", "--p-range", "20..10", "--fixtures", FREY_FIXTURE}).code, 1);
  EXPECT_EQ(run({"criterion", "--p-range", "5..30", "--fixtures", FREY_FIXTURE}).code, 1);
  EXPECT_EQ(run({"criterion", "--fixtures", FREY_FIXTURE}).code, 1);
  EXPECT_EQ(run({"criterion", "--p", "17", "--n-max", "0", "--fixtures", FREY_FIXTURE}).code, 1);
}

TEST(Cli, CriterionDeterministicJson) {
  const std::vector<std::string> args{"--format", "json", "--workers", "3", "criterion", "--p-range", "19..300",
                                      "--fixtures", FREY_FIXTURE, "--shared-n"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  for (const auto& l : lines(a.out)) {
    const auto j = nlohmann::json::parse(l);
    EXPECT_TRUE(j["found"].get<bool>());
  }
}

TEST(Cli, SharedWitnessMissingIsInconclusive) {
  const auto r = run({"criterion", "--p", "17", "--shared-n", "--n-max", "160", "--fixtures", FREY_FIXTURE});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("p=17 branch K: no witness with n <= 160"), std::string::npos);
}

TEST(Cli, Obstruction) {
  auto r = run({"obstruction", "--d", "11", "--height", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "d=11: (-3, 1) m=-242\n");
  r = run({"obstruction", "--d", "3", "--height", "20"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"obstruction", "--d", "0"}).code, 1);
}

TEST(Cli, Lemma) {
  const auto r = run({"--format", "json", "lemma", "--d-max", "12"});
  EXPECT_EQ(r.code, 0);
  std::vector<u64> obstructed;
  for (const auto& l : lines(r.out)) {
    const auto j = nlohmann::json::parse(l);
    if (j["obstructed"].get<bool>()) obstructed.push_back(j["d"].get<u64>());
  }
  EXPECT_EQ(obstructed, (std::vector<u64>{1, 2, 5, 10}));
}

TEST(Cli, Selfcheck) {
  const auto r = run({"selfcheck"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CacheFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / ("frey_cli_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  ::setenv("FREY_SIEVE_CACHE", dir.c_str(), 1);
  const auto r = run({"criterion", "--p", "19", "--fixtures", FREY_FIXTURE});
  ::unsetenv("FREY_SIEVE_CACHE");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "coefficients.txt"));
  EXPECT_GT(std::filesystem::file_size(dir / "coefficients.txt"), 0u);
  std::filesystem::remove_all(dir);
}
