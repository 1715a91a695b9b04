#pragma once

#include <cstdint>
#include <span>

#include "v2v/rng.hpp"
#include "v2v/types.hpp"

namespace v2v {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Bounds the per-sequence sensor parameter draw.
struct ParamRanges {
  Range c_plus{0.1, 1.0};
  Range c_minus{0.1, 1.0};
  Range sigma_bg{0.0, 0.05};
  Range hot_pixel_fraction{0.0, 0.0005};
  Range hot_pixel_magnitude{0.1, 1.0};

  void validate() const;  // throws ConfigError
};

/// Frame-to-log conversion settings.
struct ConversionConfig {
  double gamma = 2.2;
  double log_eps = 0.01;

  void validate() const;
};

SensorParams sample_params(const ParamRanges& ranges, Dims dims, const RngKey& key);

LinearLuminance reverse_gamma(const Frame& frame, double gamma);
LogLuminance log_luminance(const LinearLuminance& lum, double eps);
LogLuminance to_log_luminance(const Frame& frame, const ConversionConfig& config);

LogDelta log_difference(const LogLuminance& next, const LogLuminance& prev);

/// Residual drawn i.i.d. uniform on [-c_minus, c_plus].
ResidualState init_residual(const SensorParams& params, Dims dims, const RngKey& key);

/// Per-pixel N(0, sigma^2) background noise for one frame step. Pixel i
/// reads Philox block i, so the grid is independent of how it is computed.
LogDelta sample_noise(double sigma, Dims dims, const RngKey& key);

/// Events triggered by `delta` against `threshold` (both positive-valued
/// quotient), i.e. max(0, floor(delta / threshold)) with quotients within
/// 1e-12 of an integer snapped to it first.
std::int32_t trigger_count(double delta, double threshold) noexcept;

struct StepResult {
  CountGrid n_plus;
  CountGrid n_minus;
  ResidualState residual;
};

/// One frame step with the noise grid supplied by the caller.
StepResult step_with_noise(const ResidualState& residual, const LogDelta& dlog,
                           const LogDelta& noise, const SensorParams& params);

/// One frame step; noise is drawn from `key` (tag noise, frame_index set by caller).
StepResult step(const ResidualState& residual, const LogDelta& dlog, const SensorParams& params,
                const RngKey& key);

struct VoxelResult {
  DiscreteVoxel voxel;
  ResidualState final_state;
};

/// Converts B+1 log frames into one B-bin discrete voxel. Step i (1-based)
/// draws its noise with `noise_key.with_frame(noise_key.frame_index + i)`.
VoxelResult v2v_voxel(std::span<const LogLuminance> log_frames, const SensorParams& params,
                      const ResidualState& initial, const RngKey& noise_key);

VoxelResult v2v_voxel(std::span<const Frame> frames, const ConversionConfig& config,
                      const SensorParams& params, const ResidualState& initial,
                      const RngKey& noise_key);

}  // namespace v2v
