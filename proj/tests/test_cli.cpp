#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "orlicz/report.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = ORLICZ_CLI;
const std::string kData = ORLICZ_TEST_DATA;

int run(const std::string& args) {
    const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("orlicz_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(orlicz::read_text(p.string())); }

}  // namespace

TEST(Cli, VolumeByQuadrature) {
    const auto dir = fresh_dir("volume");
    ASSERT_EQ(run("volume --ball " + kData + "/l2_2.json --out " + dir.string()), 0);
    EXPECT_NEAR(read_json(dir / "volume.json")["value"].get<double>(), 0.7853981633974483, 1e-4);
}

TEST(Cli, VolumeOfYoungListBall) {
    const auto dir = fresh_dir("volume_young");
    ASSERT_EQ(run("volume --ball " + kData + "/young_3.json --out " + dir.string()), 0);
    EXPECT_EQ(read_json(dir / "volume.json")["dim"], 3);
}

TEST(Cli, VolumeByMonteCarlo) {
    const auto dir = fresh_dir("volume_mc");
    ASSERT_EQ(run("volume --ball " + kData + "/l1_6.json --n 200000 --out " + dir.string()), 0);
    const auto j = read_json(dir / "volume.json");
    EXPECT_EQ(j["method"], "monte_carlo");
    EXPECT_LE(j["ci"][0].get<double>(), 1.0 / 720.0);
    EXPECT_GE(j["ci"][1].get<double>(), 1.0 / 720.0);
}

TEST(Cli, FourTermWritesReport) {
    const auto dir = fresh_dir("four_term");
    ASSERT_EQ(run("four-term --ball " + kData + "/l1_2.json --I 0 --J 1 --cset " + kData + "/a_lo.json --cset " + kData +
                  "/a_lo.json --out " + dir.string()),
              0);
    const auto csv = orlicz::read_text((dir / "four_term.csv").string());
    EXPECT_EQ(csv.rfind("check_id,instance_hash,margin,tol,verdict\n", 0), 0u);
    EXPECT_NE(csv.find(",pass\n"), std::string::npos);
}

TEST(Cli, VerifyIsReproducibleAcrossWorkers) {
    const auto a = fresh_dir("verify_a"), b = fresh_dir("verify_b");
    const std::string args = "verify --suite na --part four_term --instances 6 --nodes 32 --seed 5 --out ";
    ASSERT_EQ(run(args + a.string() + " --workers 1"), 0);
    ASSERT_EQ(run(args + b.string() + " --workers 4"), 0);
    EXPECT_EQ(orlicz::read_text((a / "verify_four_term.csv").string()), orlicz::read_text((b / "verify_four_term.csv").string()));
    EXPECT_EQ(read_json(a / "verify_four_term.json")["counts"]["fail"], 0);
}

TEST(Cli, SampleIsReproducible) {
    const auto a = fresh_dir("sample_a"), b = fresh_dir("sample_b");
    const std::string args = "sample --ball " + kData + "/mixed_3.json --method coordinate --n 2000 --seed 3 --out ";
    ASSERT_EQ(run(args + a.string()), 0);
    ASSERT_EQ(run(args + b.string() + " --workers 4"), 0);
    EXPECT_EQ(orlicz::read_text((a / "sample.csv").string()), orlicz::read_text((b / "sample.csv").string()));
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
    EXPECT_EQ(run("volume --ball " + kData + "/bad.json"), 2);
    EXPECT_EQ(run("verify --suite nope"), 2);
    EXPECT_EQ(run("verify --suite na --part nope"), 2);
    EXPECT_EQ(run("volume --ball /nonexistent.json"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("moments --a 1 --a 1 --p 3 --ball " + kData + "/l1_2.json"), 2);
}
