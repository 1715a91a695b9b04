#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "v2v/ingest.hpp"
#include "v2v/pipeline.hpp"
#include "v2v/verify.hpp"

namespace v2v::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name. Reports go to `out`, progress and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct InputOptions {
  std::string input;  // directory, raw file, or "-" for stdin
  std::optional<int> raw_width;
  std::optional<int> raw_height;
  std::string pattern = "*";
  double frame_rate = 30.0;
  std::string scene_id;  // raw input only; defaults to the file stem or "stdin"
};

struct SimulateOptions {
  InputOptions input;
  std::string output;
  SampleConfig sample;
  int epochs = 1;
  std::uint64_t seed = 0;
  std::optional<CropRect> crop;
  unsigned workers = 1;
};

struct ConvertOptions {
  std::string events;
  std::string format = "text";
  int bins = 5;
  std::string repr = "discrete";
  std::optional<double> t0;
  std::optional<double> t1;
  int windows = 1;
  std::optional<int> width;
  std::optional<int> height;
  bool sort = false;
  std::string out;
};

struct BenchOptions {
  InputOptions input;
  SlicePlan plan;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::uint64_t> source_bytes;
};

struct StatsOptions {
  std::string manifest;
  std::optional<int> bins;
  std::optional<int> voxels;
};

// Each command throws ConfigError for bad options and DataError for bad data.
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_convert_events(const ConvertOptions& options, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const OracleCheckConfig& config, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

// Option parsing helpers; errors name `flag`.
Range parse_range(const std::string& text, const std::string& flag);
CropRect parse_crop(const std::string& text, const std::string& flag);
Dims parse_size(const std::string& text, const std::string& flag);
std::uint64_t seed_from_env(std::uint64_t fallback);

struct LoadedScene {
  FrameSequence sequence;
  std::uint64_t source_bytes = 0;
};

/// A directory of images is one scene; a directory of directories is one
/// scene per subdirectory; a file or "-" is raw frames.
std::vector<LoadedScene> load_scenes(const InputOptions& options);

}  // namespace v2v::cli
