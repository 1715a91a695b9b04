#include "v2v/pipeline.hpp"

#include <cmath>
#include <string>

#include "v2v/errors.hpp"

namespace v2v {

void SlicePlan::validate() const {
  if (bins < 1) throw ConfigError("bins must be >= 1");
  if (voxels < 1) throw ConfigError("voxels per sequence must be >= 1");
  if (stride < 0) throw ConfigError("stride must be >= 0");
}

std::vector<FrameWindow> plan_slices(std::size_t frame_count, const SlicePlan& plan) {
  plan.validate();
  const auto length = static_cast<std::size_t>(plan.window_length());
  const auto stride = static_cast<std::size_t>(plan.effective_stride());
  std::vector<FrameWindow> windows;
  for (std::size_t start = 0; start + length <= frame_count; start += stride) {
    windows.push_back({start, start + length});
  }
  return windows;
}

ParamMode parse_param_mode(std::string_view name) {
  if (name == "random" || name == "randomized") return ParamMode::randomized;
  if (name == "fixed") return ParamMode::fixed;
  throw ConfigError("unknown parameter policy '" + std::string(name) + "' (expected random|fixed)");
}

void DegradePolicy::validate() const {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ConfigError("degradation probability must lie in [0,1]");
  }
  if (!(scale.lo >= 1.0) || !(scale.lo <= scale.hi) || !std::isfinite(scale.hi)) {
    throw ConfigError("degradation scale range must satisfy 1 <= lo <= hi");
  }
}

RngKey sequence_key(const SequenceId& id, std::uint64_t epoch, StreamTag tag) noexcept {
  RngKey key;
  key.global_seed = id.global_seed;
  key.scene_id = mix64(id.scene ^ mix64(id.window));
  key.epoch = epoch;
  key.stream_tag = tag;
  return key;
}

Sample build_sample(std::span<const Frame> window, const SampleConfig& config, std::uint64_t epoch,
                    const SequenceId& id) {
  config.plan.validate();
  config.conversion.validate();
  config.degrade.validate();
  const int bins = config.plan.bins;
  const int voxels = config.plan.voxels;
  if (window.size() != static_cast<std::size_t>(config.plan.window_length())) {
    throw DataError("build_sample: window has " + std::to_string(window.size()) +
                    " frames, expected " + std::to_string(config.plan.window_length()));
  }
  const Dims dims = window.front().dims();
  for (const auto& f : window) require_same_dims(f.dims(), dims, "build_sample");

  Sample sample;

  // Degradation is an augmentation of the video itself and follows the real
  // epoch under both policies.
  std::vector<Frame> degraded;
  std::span<const Frame> frames = window;
  if (config.degrade.probability > 0.0) {
    CounterRng rng(sequence_key(id, epoch, StreamTag::degrade));
    if (rng.uniform() < config.degrade.probability) {
      sample.degrade_scale = rng.uniform(config.degrade.scale.lo, config.degrade.scale.hi);
      degraded.reserve(window.size());
      for (const auto& f : window) degraded.push_back(degrade_dynamic_range(f, sample.degrade_scale));
      frames = degraded;
    }
  }

  const std::uint64_t sensor_epoch = config.policy.mode == ParamMode::fixed ? 0 : epoch;
  sample.params = sample_params(config.policy.ranges, dims,
                                sequence_key(id, sensor_epoch, StreamTag::params));
  ResidualState residual =
      init_residual(sample.params, dims, sequence_key(id, sensor_epoch, StreamTag::init));

  std::vector<LogLuminance> logs;
  logs.reserve(frames.size());
  for (const auto& f : frames) logs.push_back(to_log_luminance(f, config.conversion));

  const RngKey noise = sequence_key(id, sensor_epoch, StreamTag::noise);
  sample.voxels.reserve(static_cast<std::size_t>(voxels));
  for (int v = 0; v < voxels; ++v) {
    const auto first = static_cast<std::size_t>(v) * static_cast<std::size_t>(bins);
    auto slice = std::span<const LogLuminance>(logs).subspan(first, static_cast<std::size_t>(bins) + 1);
    auto result = v2v_voxel(slice, sample.params, residual, noise.with_frame(first));
    sample.voxels.push_back(std::move(result.voxel));
    residual = std::move(result.final_state);
  }

  sample.frames.reserve(static_cast<std::size_t>(voxels) + 1);
  for (int v = 0; v <= voxels; ++v) {
    sample.frames.push_back(frames[static_cast<std::size_t>(v) * static_cast<std::size_t>(bins)]);
  }
  return sample;
}

CropRect sample_crop_rect(Dims dims, Dims size, const RngKey& key) {
  if (!size.valid() || size.width > dims.width || size.height > dims.height) {
    throw ConfigError("crop size " + to_string(size) + " does not fit in " + to_string(dims));
  }
  if (key.stream_tag != StreamTag::crop) throw ConfigError("sample_crop: expected rng stream 'crop'");
  CounterRng rng(key);
  CropRect rect;
  rect.top = static_cast<int>(rng.below(static_cast<std::uint64_t>(dims.height - size.height) + 1));
  rect.left = static_cast<int>(rng.below(static_cast<std::uint64_t>(dims.width - size.width) + 1));
  rect.height = size.height;
  rect.width = size.width;
  return rect;
}

DiscreteVoxel crop(const DiscreteVoxel& voxel, const CropRect& rect) {
  if (rect.top < 0 || rect.left < 0 || rect.height < 1 || rect.width < 1 ||
      rect.top + rect.height > voxel.height() || rect.left + rect.width > voxel.width()) {
    throw ConfigError("voxel crop exceeds " + to_string(voxel.dims()));
  }
  DiscreteVoxel out(voxel.bins(), Dims{rect.width, rect.height}, 0);
  for (int b = 0; b < voxel.bins(); ++b) {
    for (int y = 0; y < rect.height; ++y) {
      for (int x = 0; x < rect.width; ++x) out.at(b, x, y) = voxel.at(b, rect.left + x, rect.top + y);
    }
  }
  return out;
}

Sample sample_crop(const Sample& sample, Dims size, const RngKey& key) {
  if (sample.frames.empty()) throw DataError("sample_crop: empty sample");
  const CropRect rect = sample_crop_rect(sample.frames.front().dims(), size, key);
  Sample out;
  out.params = sample.params;
  out.degrade_scale = sample.degrade_scale;
  out.voxels.reserve(sample.voxels.size());
  for (const auto& v : sample.voxels) out.voxels.push_back(crop(v, rect));
  out.frames.reserve(sample.frames.size());
  for (const auto& f : sample.frames) out.frames.push_back(crop(f, rect));
  return out;
}

}  // namespace v2v
