#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "v2v/ingest.hpp"
#include "v2v/rng.hpp"
#include "v2v/sensor.hpp"
#include "v2v/types.hpp"

namespace v2v {

/// A training sequence is `voxels` consecutive voxels of `bins` bins each.
/// Adjacent bins share their boundary frame, so a window spans
/// voxels * bins + 1 frames.
struct SlicePlan {
  int bins = 5;
  int voxels = 40;
  int stride = 0;  // frames between window starts; 0 means the window length

  int window_length() const noexcept { return voxels * bins + 1; }
  int effective_stride() const noexcept { return stride > 0 ? stride : window_length(); }
  void validate() const;
};

struct FrameWindow {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  friend bool operator==(const FrameWindow&, const FrameWindow&) = default;
};

/// Full windows only; leftover frames at the end are dropped.
std::vector<FrameWindow> plan_slices(std::size_t frame_count, const SlicePlan& plan);

enum class ParamMode { randomized, fixed };

ParamMode parse_param_mode(std::string_view name);

/// `fixed` draws sensor parameters, initial residual and noise from
/// epoch-independent keys, so a sequence converts identically every epoch.
struct ParamPolicy {
  ParamMode mode = ParamMode::randomized;
  ParamRanges ranges;
};

struct DegradePolicy {
  double probability = 0.0;
  Range scale{1.0, 3.0};

  void validate() const;
};

struct SampleConfig {
  SlicePlan plan;
  ParamPolicy policy;
  ConversionConfig conversion;
  DegradePolicy degrade;
};

/// Names one window of one scene for RNG purposes.
struct SequenceId {
  std::uint64_t global_seed = 0;
  std::uint64_t scene = 0;  // usually hash_name(scene_id)
  std::uint64_t window = 0;
};

RngKey sequence_key(const SequenceId& id, std::uint64_t epoch, StreamTag tag) noexcept;

struct Sample {
  std::vector<DiscreteVoxel> voxels;
  std::vector<Frame> frames;  // frame at every voxel boundary, voxels + 1 of them
  SensorParams params;
  double degrade_scale = 1.0;
};

Sample build_sample(std::span<const Frame> window, const SampleConfig& config, std::uint64_t epoch,
                    const SequenceId& id);

/// Uniform top-left corner for a crop of `size` inside `dims`.
CropRect sample_crop_rect(Dims dims, Dims size, const RngKey& key);

DiscreteVoxel crop(const DiscreteVoxel& voxel, const CropRect& rect);

/// Crops every voxel and frame of `sample` with one random rectangle.
Sample sample_crop(const Sample& sample, Dims size, const RngKey& key);

}  // namespace v2v
