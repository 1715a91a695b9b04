#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "support/temp_dir.hpp"
#include "v2v/errors.hpp"
#include "v2v/event_io.hpp"
#include "v2v/voxel_io.hpp"

namespace v2v {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "v2v");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write_raw(const std::filesystem::path& p, std::size_t frames, std::size_t pixels,
               std::uint8_t value) {
  std::ofstream out(p, std::ios::binary);
  out << std::string(frames * pixels, static_cast<char>(value));
}

TEST(CliParse, RangesCropsAndSizes) {
  EXPECT_EQ(cli::parse_range("0.1:0.5", "--x"), (Range{0.1, 0.5}));
  EXPECT_EQ(cli::parse_range("0.3", "--x"), (Range{0.3, 0.3}));
  EXPECT_THROW(cli::parse_range("0.5:0.1", "--x"), ConfigError);
  EXPECT_THROW(cli::parse_range("a:b", "--x"), ConfigError);
  EXPECT_EQ(cli::parse_crop("78:0:180:596", "--crop"), (CropRect{78, 0, 180, 596}));
  EXPECT_THROW(cli::parse_crop("1:2:3", "--crop"), ConfigError);
  const auto d = cli::parse_size("180x596", "--size");
  EXPECT_EQ(d, (Dims{596, 180}));
  EXPECT_THROW(cli::parse_size("0x5", "--size"), ConfigError);
}

TEST(CliParse, RangeErrorNamesFlag) {
  try {
    cli::parse_range("1:0", "--c-pos");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("--c-pos"), std::string::npos);
  }
}

TEST(CliParse, SeedFallsBackToEnvironment) {
  ::setenv("V2V_SEED", "1234", 1);
  EXPECT_EQ(cli::seed_from_env(7), 1234u);
  ::setenv("V2V_SEED", "", 1);
  EXPECT_EQ(cli::seed_from_env(7), 7u);
  ::unsetenv("V2V_SEED");
  EXPECT_EQ(cli::seed_from_env(7), 7u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"simulate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(CliSimulate, ConstantGrayGivesZeroVoxels) {
  testing::TempDir dir;
  write_raw(dir / "gray.raw", 11, 6 * 4, 128);
  const auto r = run({"simulate", "--input", (dir / "gray.raw").string(), "--raw-width", "6",
                      "--raw-height", "4", "--bins", "5", "--voxels", "2", "--sigma-bg", "0:0",
                      "--hot-frac", "0", "--output", (dir / "out").string(), "--workers", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto voxels = read_voxels(dir / "out" / "gray" / "0.v2vx");
  ASSERT_EQ(voxels.size(), 2u);
  for (const auto& v : voxels) {
    EXPECT_EQ(v.bins(), 5);
    EXPECT_EQ(v.dims(), (Dims{6, 4}));
    for (const auto x : v.values()) EXPECT_EQ(x, 0);
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "manifest.json"));
  EXPECT_NE(r.out.find("samples=1"), std::string::npos) << r.out;
}

TEST(CliSimulate, ZeroThresholdIsUsageError) {
  testing::TempDir dir;
  write_raw(dir / "gray.raw", 11, 4, 128);
  const auto r = run({"simulate", "--input", (dir / "gray.raw").string(), "--raw-width", "2",
                      "--raw-height", "2", "--bins", "5", "--voxels", "2", "--c-pos", "0:0",
                      "--output", (dir / "out").string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--c-pos"), std::string::npos) << r.err;
}

TEST(CliSimulate, RawInputWithoutDimsIsUsageError) {
  testing::TempDir dir;
  write_raw(dir / "gray.raw", 11, 4, 128);
  const auto r = run({"simulate", "--input", (dir / "gray.raw").string(), "--output",
                      (dir / "out").string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST(CliSimulate, TruncatedRawIsDataError) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "short.raw", std::ios::binary);
    out << std::string(9, 'a');
  }
  const auto r = run({"simulate", "--input", (dir / "short.raw").string(), "--raw-width", "2",
                      "--raw-height", "2", "--bins", "2", "--voxels", "1", "--output",
                      (dir / "out").string()});
  EXPECT_EQ(r.code, cli::kExitRuntime);
  EXPECT_NE(r.err.find("offset 8"), std::string::npos) << r.err;
}

TEST(CliConvert, DiscreteBinsConservePolarity) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "ev.txt");
    out << "0.0 0 0 1\n0.1 1 0 1\n0.45 0 0 -1\n0.9 1 1 1\n1.0 0 1 -1\n";
  }
  const auto r = run({"convert-events", "--events", (dir / "ev.txt").string(), "--width", "2",
                      "--height", "2", "--bins", "5", "--out", (dir / "v.v2vx").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto v = read_voxels(dir / "v.v2vx");
  ASSERT_EQ(v.size(), 1u);
  int total = 0;
  for (const auto x : v[0].values()) total += x;
  EXPECT_EQ(total, 1);
  EXPECT_EQ(v[0].at(0, 0, 0), 1);  // 0.0
  EXPECT_EQ(v[0].at(2, 0, 0), -1);  // 0.45
  EXPECT_EQ(v[0].at(4, 0, 1), -1);  // 1.0
}

TEST(CliConvert, InterpolatedSingleEvent) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "ev.txt");
    out << "2.0 0 0 1\n2.3 0 0 -1\n3.0 0 0 1\n";
  }
  const auto r = run({"convert-events", "--events", (dir / "ev.txt").string(), "--repr",
                      "interpolated", "--out", (dir / "v.v2vx").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir / "v.v2vx", std::ios::binary);
  const auto v = read_voxels_real(in);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].at(0, 0, 0), 1.0);
  EXPECT_NEAR(v[0].at(1, 0, 0), -0.8, 1e-6);
  EXPECT_NEAR(v[0].at(2, 0, 0), -0.2, 1e-6);
  EXPECT_EQ(v[0].at(4, 0, 0), 1.0);
}

TEST(CliConvert, BadPolarityReportsLine) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "ev.txt");
    out << "0.1 0 0 1\n0.2 0 0 2\n";
  }
  const auto r = run({"convert-events", "--events", (dir / "ev.txt").string(), "--out",
                      (dir / "v.v2vx").string()});
  EXPECT_EQ(r.code, cli::kExitRuntime);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(CliConvert, WindowsWriteOneFileEach) {
  testing::TempDir dir;
  EventStream s;
  s.dims = Dims{2, 2};
  for (int i = 0; i <= 40; ++i) s.records.push_back({i * 0.25, 1, 1, 1});
  write_events(s, dir / "ev.bin", EventFormat::binary);
  const auto r = run({"convert-events", "--events", (dir / "ev.bin").string(), "--format", "bin",
                      "--windows", "4", "--out", (dir / "vox").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  int total = 0;
  for (int w = 0; w < 4; ++w) {
    const auto v = read_voxels(dir / "vox" / (std::to_string(w) + ".v2vx"));
    for (const auto x : v.at(0).values()) total += x;
  }
  EXPECT_EQ(total, 41);
}

TEST(CliOracle, ExactRegimesPass) {
  for (const std::string regime : {"equal-thresholds", "monotonic"}) {
    const auto r = run({"oracle-check", "--regime", regime, "--trials", "50"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("max_abs_deviation=0"), std::string::npos) << r.out;
  }
  const auto free = run({"oracle-check", "--regime", "free", "--trials", "50"});
  EXPECT_EQ(free.code, 0);
  EXPECT_NE(free.out.find("exactness_asserted=no"), std::string::npos) << free.out;
  EXPECT_EQ(run({"oracle-check", "--regime", "sometimes"}).code, cli::kExitUsage);
}

TEST(CliStats, MissingManifestIsUsageError) {
  testing::TempDir dir;
  const auto r = run({"stats", "--manifest", (dir / "none.json").string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST(CliStats, ReportsManifestWrittenBySimulate) {
  testing::TempDir dir;
  write_raw(dir / "clip.raw", 21, 12, 60);
  ASSERT_EQ(run({"simulate", "--input", (dir / "clip.raw").string(), "--raw-width", "4",
                 "--raw-height", "3", "--bins", "2", "--voxels", "5", "--output",
                 (dir / "out").string()})
                .code,
            0);
  const auto r = run({"stats", "--manifest", (dir / "out" / "manifest.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("sequences=1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("prestacked_bytes=480\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("source_bytes=252\n"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace v2v
