#include "v2v/sensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "v2v/errors.hpp"

namespace v2v {
namespace {

void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw ConfigError(std::string(name) + " range must be finite with lo <= hi");
  }
}

void require_tag(const RngKey& key, StreamTag want, const char* op) {
  if (key.stream_tag != want) {
    throw ConfigError(std::string(op) + ": expected rng stream '" + to_string(want) + "', got '" +
                      to_string(key.stream_tag) + "'");
  }
}

}  // namespace

void ParamRanges::validate() const {
  check_range(c_plus, "c_plus");
  check_range(c_minus, "c_minus");
  check_range(sigma_bg, "sigma_bg");
  check_range(hot_pixel_fraction, "hot_pixel_fraction");
  check_range(hot_pixel_magnitude, "hot_pixel_magnitude");
  if (!(c_plus.lo > 0.0)) throw ConfigError("c_plus threshold must be > 0");
  if (!(c_minus.lo > 0.0)) throw ConfigError("c_minus threshold must be > 0");
  if (sigma_bg.lo < 0.0) throw ConfigError("sigma_bg must be >= 0");
  if (hot_pixel_fraction.lo < 0.0 || hot_pixel_fraction.hi >= 1.0) {
    throw ConfigError("hot_pixel_fraction must lie in [0, 1)");
  }
  if (!(hot_pixel_magnitude.lo > 0.0)) throw ConfigError("hot_pixel_magnitude must be > 0");
}

void ConversionConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be > 0");
  if (!(log_eps > 0.0) || !std::isfinite(log_eps)) throw ConfigError("log eps must be > 0");
}

SensorParams sample_params(const ParamRanges& ranges, Dims dims, const RngKey& key) {
  ranges.validate();
  require_tag(key, StreamTag::params, "sample_params");
  if (!dims.valid()) throw ConfigError("sample_params: invalid dims " + to_string(dims));

  CounterRng rng(key);
  SensorParams p;
  p.c_plus = rng.uniform(ranges.c_plus.lo, ranges.c_plus.hi);
  p.c_minus = rng.uniform(ranges.c_minus.lo, ranges.c_minus.hi);
  p.sigma_bg = rng.uniform(ranges.sigma_bg.lo, ranges.sigma_bg.hi);
  const double fraction = rng.uniform(ranges.hot_pixel_fraction.lo, ranges.hot_pixel_fraction.hi);

  const std::uint64_t total = dims.size();
  const auto count = std::min<std::uint64_t>(
      total, static_cast<std::uint64_t>(std::nearbyint(fraction * static_cast<double>(total))));

  // Floyd's sampling without replacement, then canonical order.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count);
  for (std::uint64_t j = total - count; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());

  p.hot_pixels.dims = dims;
  p.hot_pixels.entries.reserve(indices.size());
  for (const auto idx : indices) {
    const double mag = rng.uniform(ranges.hot_pixel_magnitude.lo, ranges.hot_pixel_magnitude.hi);
    const bool negative = (rng() >> 63) != 0;
    p.hot_pixels.entries.push_back({static_cast<int>(idx % static_cast<std::uint64_t>(dims.width)),
                                    static_cast<int>(idx / static_cast<std::uint64_t>(dims.width)),
                                    negative ? -mag : mag});
  }
  p.validate();
  return p;
}

LinearLuminance reverse_gamma(const Frame& frame, double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
  // 256-entry table keeps the mapping exactly monotonic and cheap.
  std::array<double, 256> table{};
  for (int v = 0; v < 256; ++v) table[v] = std::pow(static_cast<double>(v) / 255.0, gamma);
  table[0] = 0.0;
  table[255] = 1.0;

  LinearLuminance out(frame.dims());
  const auto src = frame.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = table[src[i]];
  return out;
}

LogLuminance log_luminance(const LinearLuminance& lum, double eps) {
  if (!(eps > 0.0)) throw ConfigError("log eps must be > 0");
  LogLuminance out(lum.dims());
  const auto src = lum.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::log(src[i] + eps);
  return out;
}

LogLuminance to_log_luminance(const Frame& frame, const ConversionConfig& config) {
  config.validate();
  return log_luminance(reverse_gamma(frame, config.gamma), config.log_eps);
}

LogDelta log_difference(const LogLuminance& next, const LogLuminance& prev) {
  require_same_dims(next.dims(), prev.dims(), "log_difference");
  LogDelta out(next.dims());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = next[i] - prev[i];
  return out;
}

ResidualState init_residual(const SensorParams& params, Dims dims, const RngKey& key) {
  params.validate();
  require_tag(key, StreamTag::init, "init_residual");
  const CounterRng rng(key);
  ResidualState out(dims);
  const double span = params.c_plus + params.c_minus;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = -params.c_minus + span * rng.uniform_at(i);
  }
  return out;
}

LogDelta sample_noise(double sigma, Dims dims, const RngKey& key) {
  require_tag(key, StreamTag::noise, "sample_noise");
  LogDelta out(dims, 0.0);
  if (sigma == 0.0) return out;
  const CounterRng rng(key);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigma * rng.normal_at(i);
  return out;
}

std::int32_t trigger_count(double delta, double threshold) noexcept {
  double q = delta / threshold;
  const double nearest = std::nearbyint(q);
  if (std::fabs(q - nearest) <= kQuotientSnap) q = nearest;
  if (!(q >= 1.0)) return 0;
  return static_cast<std::int32_t>(std::floor(q));
}

StepResult step_with_noise(const ResidualState& residual, const LogDelta& dlog,
                           const LogDelta& noise, const SensorParams& params) {
  require_same_dims(residual.dims(), dlog.dims(), "step");
  require_same_dims(residual.dims(), noise.dims(), "step");
  if (!params.hot_pixels.entries.empty()) {
    require_same_dims(residual.dims(), params.hot_pixels.dims, "step (hot pixels)");
  }

  const Dims dims = residual.dims();
  StepResult out{CountGrid(dims, 0), CountGrid(dims, 0), ResidualState(dims)};
  for (std::size_t i = 0; i < residual.size(); ++i) {
    out.residual[i] = residual[i] + dlog[i] + noise[i];
  }
  for (const auto& hp : params.hot_pixels.entries) out.residual(hp.x, hp.y) += hp.magnitude;

  for (std::size_t i = 0; i < residual.size(); ++i) {
    const double total = out.residual[i];
    const std::int32_t up = trigger_count(total, params.c_plus);
    const std::int32_t down = trigger_count(-total, params.c_minus);
    out.n_plus[i] = up;
    out.n_minus[i] = down;
    out.residual[i] = total - params.c_plus * up + params.c_minus * down;
  }
  return out;
}

StepResult step(const ResidualState& residual, const LogDelta& dlog, const SensorParams& params,
                const RngKey& key) {
  return step_with_noise(residual, dlog, sample_noise(params.sigma_bg, residual.dims(), key),
                         params);
}

VoxelResult v2v_voxel(std::span<const LogLuminance> log_frames, const SensorParams& params,
                      const ResidualState& initial, const RngKey& noise_key) {
  if (log_frames.size() < 2) {
    throw DataError("v2v_voxel needs B+1 >= 2 frames, got " + std::to_string(log_frames.size()));
  }
  params.validate();
  const int bins = static_cast<int>(log_frames.size()) - 1;
  const Dims dims = initial.dims();
  for (const auto& f : log_frames) require_same_dims(f.dims(), dims, "v2v_voxel");

  VoxelResult out{DiscreteVoxel(bins, dims, 0), initial};
  for (int b = 0; b < bins; ++b) {
    const auto dlog = log_difference(log_frames[b + 1], log_frames[b]);
    const auto key = noise_key.with_frame(noise_key.frame_index + static_cast<std::uint64_t>(b) + 1);
    auto result = step(out.final_state, dlog, params, key);
    auto plane = out.voxel.plane(b);
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = result.n_plus[i] - result.n_minus[i];
    out.final_state = std::move(result.residual);
  }
  return out;
}

VoxelResult v2v_voxel(std::span<const Frame> frames, const ConversionConfig& config,
                      const SensorParams& params, const ResidualState& initial,
                      const RngKey& noise_key) {
  std::vector<LogLuminance> logs;
  logs.reserve(frames.size());
  for (const auto& f : frames) logs.push_back(to_log_luminance(f, config));
  return v2v_voxel(std::span<const LogLuminance>(logs), params, initial, noise_key);
}

}  // namespace v2v
