#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(HIGGSREL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Gen, LowestGeneratorAtGenusTwo) {
  auto r = run("gen --g 2 --n 0 --max-degree 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(c=2,r=1,s=1,t=0): 2*a*b + 2*g3"), std::string::npos) << r.out;
}

TEST(Gen, IncludesBetaPowerAndGammaPower) {
  EXPECT_NE(run("gen --g 2 --n 1 --max-degree 4").out.find("(c=3,r=0,s=2,t=0): 3*b^2"), std::string::npos);
  EXPECT_NE(run("gen --g 2 --n 0 --max-degree 9").out.find(": g3^3"), std::string::npos);
}

TEST(Gen, Json) {
  auto r = run("gen --g 2 --n 0 --max-degree 3 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["ideals"][0]["generators"][0]["poly"], "2*a*b + 2*g3");
}

TEST(Check, Verdicts) {
  EXPECT_EQ(run("check --g 2 --n 0 --poly 'g3^3'").code, 0);
  // F^0(u,1) in total degree 4, a relation on M_2
  EXPECT_EQ(run("check --g 2 --n 2 --poly '1/2*a^2*u^2 + 2*a*b*u + b^2 + 1/2*b*u^2 + 2*g3*u'").code, 0);
  auto r = run("check --g 2 --n 2 --poly a --format json");
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["verdict"], false);
  bool has_witness = false;
  for (const auto& c : j["components"])
    if (c.contains("witness")) has_witness = c["kind"] == "SYM";
  EXPECT_TRUE(has_witness);
}

TEST(Check, UsageAndParseErrors) {
  EXPECT_EQ(run("check --g 2 --n 0 --poly 'a +* b'").code, 2);
  EXPECT_EQ(run("check --g 2 --n 0 --poly 'q'").code, 2);
  EXPECT_EQ(run("check --g 1 --n 0 --poly a").code, 2);
  EXPECT_EQ(run("check --g 2..3 --n 0 --poly a").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("verify --suite dims --g 3..2").code, 2);
  EXPECT_EQ(run("verify --suite dims --g x").code, 2);
  EXPECT_EQ(run("gen --g 2 --n 0").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Verify, DimsSweep) {
  auto r = run("verify --suite dims --g 2..3 --n 0..2 --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["cells"].size(), 6u);
  EXPECT_EQ(j["cells"][0]["detail"]["dim_quotient"], 6);
  EXPECT_EQ(j["pass"], true);
}

TEST(Verify, MainAtGenusTwo) {
  auto r = run("verify --suite main --g 2 --n 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS main g=2 n=0"), std::string::npos) << r.out;
}

TEST(Verify, OutputDoesNotDependOnJobs) {
  auto a = run("verify --suite sympow --g 1..2 --seed 7 --jobs 1 --format json");
  auto b = run("verify --suite sympow --g 1..2 --seed 7 --jobs 4 --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Verify, OrderFromEnvironment) {
  auto r = run("verify --suite series --g 2 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["cells"][0]["detail"]["order"], 12);
  auto e = run("verify --suite series --g 2 --format json", "HIGGSREL_ORDER=14");
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(nlohmann::json::parse(e.out)["cells"][0]["detail"]["order"], 14);
  // the flag wins over the environment
  auto f = run("verify --suite series --g 2 --order 11 --format json", "HIGGSREL_ORDER=14");
  EXPECT_EQ(nlohmann::json::parse(f.out)["cells"][0]["detail"]["order"], 11);
  EXPECT_EQ(run("verify --suite series --g 2", "HIGGSREL_ORDER=abc").code, 2);
}
