#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "cli/cli.hpp"
#include "v2v/errors.hpp"

namespace v2v::cli {
namespace {

double parse_double(std::string_view text, const std::string& flag) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
    throw ConfigError(flag + ": cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, const std::string& flag) {
  int v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
    throw ConfigError(flag + ": cannot parse integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Range parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  Range r;
  if (colon == std::string::npos) {
    r.lo = r.hi = parse_double(text, flag);
  } else {
    r.lo = parse_double(std::string_view(text).substr(0, colon), flag);
    r.hi = parse_double(std::string_view(text).substr(colon + 1), flag);
  }
  if (r.lo > r.hi) throw ConfigError(flag + ": range lower bound exceeds upper bound");
  return r;
}

CropRect parse_crop(const std::string& text, const std::string& flag) {
  int parts[4] = {};
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const auto colon = text.find(':', start);
    if ((i < 3) == (colon == std::string::npos)) {
      throw ConfigError(flag + ": expected top:left:height:width");
    }
    const auto end = i < 3 ? colon : text.size();
    parts[i] = parse_int(std::string_view(text).substr(start, end - start), flag);
    start = end + 1;
  }
  if (parts[0] < 0 || parts[1] < 0 || parts[2] < 1 || parts[3] < 1) {
    throw ConfigError(flag + ": offsets must be >= 0 and sizes >= 1");
  }
  return {parts[0], parts[1], parts[2], parts[3]};
}

Dims parse_size(const std::string& text, const std::string& flag) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError(flag + ": expected HxW");
  const int h = parse_int(std::string_view(text).substr(0, x), flag);
  const int w = parse_int(std::string_view(text).substr(x + 1), flag);
  if (h < 1 || w < 1) throw ConfigError(flag + ": sizes must be >= 1");
  return {w, h};
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("V2V_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  std::uint64_t v = 0;
  const std::string_view text(env);
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
    throw ConfigError("V2V_SEED: cannot parse '" + std::string(text) + "'");
  }
  return v;
}

std::vector<LoadedScene> load_scenes(const InputOptions& options) {
  namespace fs = std::filesystem;
  std::vector<LoadedScene> scenes;

  const bool raw = options.raw_width || options.raw_height;
  if (raw) {
    if (!options.raw_width || !options.raw_height) {
      throw ConfigError("--raw-width and --raw-height must be given together");
    }
    const Dims dims{*options.raw_width, *options.raw_height};
    if (!dims.valid()) throw ConfigError("--raw-width/--raw-height must be >= 1");
    LoadedScene scene;
    if (options.input == "-") {
      scene.sequence = read_frames_raw(std::cin, dims, options.frame_rate);
      scene.sequence.scene_id = options.scene_id.empty() ? "stdin" : options.scene_id;
    } else {
      std::ifstream in(options.input, std::ios::binary);
      if (!in) throw DataError("--input: cannot open " + options.input);
      scene.sequence = read_frames_raw(in, dims, options.frame_rate);
      scene.sequence.scene_id =
          options.scene_id.empty() ? fs::path(options.input).stem().string() : options.scene_id;
    }
    scene.source_bytes = scene.sequence.frames.size() * dims.size();
    scenes.push_back(std::move(scene));
    return scenes;
  }

  if (options.input == "-") throw ConfigError("--input -: raw mode needs --raw-width/--raw-height");
  const fs::path root(options.input);
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw ConfigError("--input: " + options.input + " is not a directory (use --raw-width/--raw-height for raw files)");
  }

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) dirs.push_back(root);

  for (const auto& dir : dirs) {
    LoadedScene scene;
    const auto files = list_frame_files(dir, options.pattern);
    for (const auto& f : files) scene.source_bytes += fs::file_size(f);
    scene.sequence = read_frames_dir(dir, options.pattern, options.frame_rate);
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

}  // namespace v2v::cli
