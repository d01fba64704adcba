#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "ringcert/example.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("ringcert_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  CliResult run(const std::string& args) const {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(RINGCERT_CLI_PATH) + " " + args + " 2>" + err.string();
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, BuildWritesInstanceJson) {
  const auto r = run("build --dim 3 --precision 8 --seed 1 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["N"], 8);
  EXPECT_EQ(j["f"].size(), 2u);
  EXPECT_TRUE(j.contains("xi"));
  EXPECT_TRUE(j.contains("P"));
  const auto text = run("build --dim 3 --precision 8 --seed 1");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("xi = "), std::string::npos);
}

TEST_F(CliTest, BuildDimensionFourAndValidation) {
  const auto r = run("build --dim 4 --precision 5 --seed 1 --format json --out " + path("i.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("i.json")));
  EXPECT_EQ(j["h"], 3);
  EXPECT_EQ(j["f"].size(), 3u);
  EXPECT_EQ(run("build --dim 2 --precision 8 --seed 1").code, 2);
  EXPECT_EQ(run("build --dim 5 --precision 4").code, 2);
  EXPECT_EQ(run("build --dim 5 --precision 3 --dim-cap 5").code, 0);
  EXPECT_EQ(run("build --precision 1").code, 2);
  EXPECT_EQ(run("build --precision 33").code, 2);
  EXPECT_EQ(run("build --order nonsense").code, 2);
  EXPECT_EQ(run("build --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, VerifyPassesAndIsDeterministic) {
  const auto a = run("verify --dim 3 --precision 8 --seed 1 --format json --out " + path("a.json").string());
  ASSERT_EQ(a.code, 0) << a.err;
  const auto b = run("verify --dim 3 --precision 8 --seed 1 --threads 4 --format json --out " + path("b.json").string());
  ASSERT_EQ(b.code, 0) << b.err;
  auto ja = nlohmann::json::parse(slurp(path("a.json")));
  auto jb = nlohmann::json::parse(slurp(path("b.json")));
  EXPECT_EQ(ja["overall"], "pass");
  ja.erase("header");
  jb.erase("header");
  EXPECT_EQ(ja.dump(), jb.dump());
  const auto text = run("verify --dim 3 --precision 8 --seed 1");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("overall: pass"), std::string::npos) << text.out;
}

TEST_F(CliTest, VerifySingleCheck) {
  const auto r = run("verify --dim 3 --precision 8 --seed 1 --check not-integrally-closed --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["checks"].size(), 1u);
  EXPECT_EQ(j["checks"][0]["name"], "not-integrally-closed");
  EXPECT_EQ(run("verify --check unheard-of").code, 2);
  EXPECT_EQ(run("verify --precision 4 --rmax 4").code, 2);
}

TEST_F(CliTest, VerifyTamperedInstanceFailsLoudly) {
  auto inst = ringcert::example::build(3, 8, 1);
  auto slots = inst.xi.coefficients();
  slots.back() += ringcert::Polynomial::constant(inst.fiber, 1);
  inst.xi = ringcert::series::TruncatedElement(slots);
  write("tampered.json", ringcert::example::to_json(inst).dump());
  const auto r = run("verify --instance " + path("tampered.json").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("check failed: integral-dependence"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("power-identity"), std::string::npos) << r.err;

  write("clean.json", ringcert::example::to_json(ringcert::example::build(3, 8, 1)).dump());
  EXPECT_EQ(run("verify --instance " + path("clean.json").string()).code, 0);
  write("broken.json", "{ not json");
  EXPECT_EQ(run("verify --instance " + path("broken.json").string()).code, 2);
  EXPECT_EQ(run("verify --instance " + path("missing.json").string()).code, 2);
}

TEST_F(CliTest, Endpieces) {
  const auto r = run("endpieces --r 2 --seed 1 --precision 8");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* needle : {"b_1 = ", "b_2 = ", "f_1 = ", "f_2 = ", "u_2 = ", "v_2 = ", "verified"})
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  EXPECT_EQ(run("endpieces --r 9 --precision 8").code, 2);
  EXPECT_EQ(run("endpieces --r 8 --precision 8").code, 2);
  const auto fixture = run("endpieces --r 1 --precision 5 --alpha-coeffs 1 --format json");
  ASSERT_EQ(fixture.code, 0) << fixture.err;
  const auto j = nlohmann::json::parse(fixture.out);
  EXPECT_EQ(j["elements"][0]["levels"][0]["endpiece_polynomial"], "x - 2*y");
  EXPECT_EQ(j["elements"][0]["levels"][0]["u_polynomial"], "0");
}

TEST_F(CliTest, Membership) {
  const auto inst = ringcert::example::build(3, 8, 1);
  const auto fs = inst.f_polynomials();
  nlohmann::json ideal{{"vars", {"x", "y", "z"}},
                       {"generators", {ringcert::to_json(fs[0]), ringcert::to_json(fs[1]), "x^4"}}};
  write("ideal.json", ideal.dump());
  write("xi.json", ringcert::to_json(inst.xi_polynomial()).dump());
  write("f.json", ringcert::to_json(fs[0]).dump());
  const auto xi = run("membership --ideal " + path("ideal.json").string() + " --element " + path("xi.json").string() +
                      " --local x,y,z --witness");
  ASSERT_EQ(xi.code, 0) << xi.err;
  EXPECT_EQ(xi.out.rfind("non-member", 0), 0u) << xi.out;
  EXPECT_NE(xi.out.find("colon ideal"), std::string::npos);

  nlohmann::json fg{{"vars", {"x", "y", "z"}}, {"generators", {ringcert::to_json(fs[0]), ringcert::to_json(fs[1])}}};
  write("fg.json", fg.dump());
  const auto f = run("membership --ideal " + path("fg.json").string() + " --element " + path("f.json").string());
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(f.out, "member\n");

  write("xy.json", R"({"vars": ["x","y"], "generators": ["x", "y"]})");
  write("one.json", R"("1")");
  const auto one = run("membership --ideal " + path("xy.json").string() + " --element " + path("one.json").string() +
                       " --format json");
  EXPECT_EQ(one.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(one.out)["member"].get<bool>());

  write("bad.json", R"("x +")");
  EXPECT_EQ(run("membership --ideal " + path("xy.json").string() + " --element " + path("bad.json").string()).code, 2);
  write("w.json", R"("w")");
  EXPECT_EQ(run("membership --ideal " + path("xy.json").string() + " --element " + path("w.json").string()).code, 2);
  EXPECT_EQ(run("membership --ideal " + path("xy.json").string() + " --element " + path("one.json").string() +
                " --local q")
                .code,
            2);
}
