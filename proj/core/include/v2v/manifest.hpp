#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "v2v/pipeline.hpp"
#include "v2v/types.hpp"

namespace v2v {

struct SceneEntry {
  std::string scene_id;
  std::uint64_t frame_count = 0;
  int width = 0;
  int height = 0;
  double frame_rate = 30.0;
  std::uint64_t source_bytes = 0;

  friend bool operator==(const SceneEntry&, const SceneEntry&) = default;
};

struct DatasetManifest {
  std::vector<SceneEntry> scenes;
  std::optional<SlicePlan> plan;  // recorded by the writer; informational

  void validate() const;
};

/// Raw f32 bytes of one pre-stacked training sequence: V*B*H*W*4.
std::uint64_t prestacked_bytes_per_sequence(const SlicePlan& plan, Dims dims) noexcept;

struct StatsReport {
  std::uint64_t scenes = 0;
  std::uint64_t total_frames = 0;
  double total_duration_s = 0.0;
  std::vector<Dims> resolutions;        // distinct, sorted
  std::uint64_t sequences = 0;          // full V*B+1 windows under the plan
  std::uint64_t sequences_by_frames = 0;  // total frames / V, the event-dataset normalization
  std::uint64_t source_bytes = 0;
  std::uint64_t prestacked_bytes = 0;
  double ratio = 0.0;        // source / prestacked
  double compression = 0.0;  // prestacked / source
};

StatsReport stats(const DatasetManifest& manifest, const SlicePlan& plan);

/// key=value lines, one per field.
std::string format_report(const StatsReport& report, const SlicePlan& plan);

/// Three significant digits, as printed in reports.
std::string format_sig3(double value);

std::string manifest_to_json(const DatasetManifest& manifest, const SlicePlan& plan);
DatasetManifest parse_manifest(std::string_view json, const std::string& origin = "manifest");

void save_manifest(const DatasetManifest& manifest, const SlicePlan& plan,
                   const std::filesystem::path& path);
/// ConfigError when the file is missing, DataError when it is malformed.
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace v2v
