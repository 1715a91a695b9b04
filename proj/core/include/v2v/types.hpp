#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace v2v {

/// Threshold quotients this close to an integer count as that integer.
inline constexpr double kQuotientSnap = 1e-12;

struct Dims {
  int width = 0;
  int height = 0;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool valid() const noexcept { return width >= 1 && height >= 1; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(Dims dims);

// Throws DataError when the two grids disagree in shape.
void require_same_dims(Dims a, Dims b, const char* what);

/// Row-major 2-D grid. The tag parameter keeps frames, log-luminance,
/// residuals and count grids from being mixed up at call sites.
template <typename T, typename Tag>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  explicit Grid(Dims dims, T fill = T{}) : dims_(dims), values_(dims.size(), fill) {
    check_dims();
  }
  Grid(Dims dims, std::vector<T> values) : dims_(dims), values_(std::move(values)) {
    check_dims();
    if (values_.size() != dims_.size()) throw_size_mismatch(values_.size(), dims_.size());
  }

  Dims dims() const noexcept { return dims_; }
  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  std::size_t size() const noexcept { return values_.size(); }

  T& operator()(int x, int y) { return values_[index(x, y)]; }
  const T& operator()(int x, int y) const { return values_[index(x, y)]; }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }
  void check_dims() const;
  [[noreturn]] static void throw_size_mismatch(std::size_t got, std::size_t want);

  Dims dims_{};
  std::vector<T> values_;
};

struct FrameTag;
struct LinearLuminanceTag;
struct LogLuminanceTag;
struct LogDeltaTag;
struct ResidualTag;
struct CountTag;

/// 8-bit grayscale intensities.
using Frame = Grid<std::uint8_t, FrameTag>;
/// Irradiance proxy in [0,1].
using LinearLuminance = Grid<double, LinearLuminanceTag>;
using LogLuminance = Grid<double, LogLuminanceTag>;
/// Per-pixel additive change in log-luminance units (frame differences, noise).
using LogDelta = Grid<double, LogDeltaTag>;
/// Accumulated log-luminance change since each pixel's last event.
using ResidualState = Grid<double, ResidualTag>;
using CountGrid = Grid<std::int32_t, CountTag>;

extern template class Grid<std::uint8_t, FrameTag>;
extern template class Grid<double, LinearLuminanceTag>;
extern template class Grid<double, LogLuminanceTag>;
extern template class Grid<double, LogDeltaTag>;
extern template class Grid<double, ResidualTag>;
extern template class Grid<std::int32_t, CountTag>;

struct FrameSequence {
  std::vector<Frame> frames;
  double frame_rate = 30.0;
  std::string scene_id;

  Dims dims() const { return frames.empty() ? Dims{} : frames.front().dims(); }
  // At least two frames, all of one size.
  void validate() const;
};

struct HotPixel {
  int x = 0;
  int y = 0;
  double magnitude = 0.0;  // log-luminance units added every frame

  friend bool operator==(const HotPixel&, const HotPixel&) = default;
};

/// Sparse per-pixel offset map. Pixels not listed are zero.
struct HotPixelMap {
  Dims dims{};
  std::vector<HotPixel> entries;

  void validate() const;
  LogDelta to_dense() const;

  friend bool operator==(const HotPixelMap&, const HotPixelMap&) = default;
};

struct SensorParams {
  double c_plus = 0.2;
  double c_minus = 0.2;
  double sigma_bg = 0.0;
  HotPixelMap hot_pixels;

  void validate() const;

  friend bool operator==(const SensorParams&, const SensorParams&) = default;
};

/// Dense B×H×W volume stored bin-major then row-major.
template <typename T, typename Tag>
class Volume {
 public:
  using value_type = T;

  Volume() = default;
  Volume(int bins, Dims dims, T fill = T{});

  int bins() const noexcept { return bins_; }
  Dims dims() const noexcept { return dims_; }
  int height() const noexcept { return dims_.height; }
  int width() const noexcept { return dims_.width; }
  std::size_t plane_size() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return data_.size(); }

  T& at(int bin, int x, int y) { return data_[offset(bin, x, y)]; }
  const T& at(int bin, int x, int y) const { return data_[offset(bin, x, y)]; }

  std::span<T> plane(int bin) {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(bin) * plane_size(), plane_size());
  }
  std::span<const T> plane(int bin) const {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(bin) * plane_size(),
                                             plane_size());
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  friend bool operator==(const Volume&, const Volume&) = default;

 private:
  std::size_t offset(int bin, int x, int y) const noexcept {
    return (static_cast<std::size_t>(bin) * static_cast<std::size_t>(dims_.height) +
            static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  int bins_ = 0;
  Dims dims_{};
  std::vector<T> data_;
};

struct DiscreteVoxelTag;
struct InterpolatedVoxelTag;

/// Net signed event count per bin and pixel.
using DiscreteVoxel = Volume<std::int32_t, DiscreteVoxelTag>;
using InterpolatedVoxel = Volume<double, InterpolatedVoxelTag>;

extern template class Volume<std::int32_t, DiscreteVoxelTag>;
extern template class Volume<double, InterpolatedVoxelTag>;

struct EventRecord {
  double t = 0.0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::int8_t p = 1;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// Total order used whenever event lists are merged: time, then row, column, polarity.
bool event_less(const EventRecord& a, const EventRecord& b) noexcept;

struct EventStream {
  Dims dims{};
  std::vector<EventRecord> records;

  // Sorted by t, coordinates in bounds, p in {-1,+1}, finite t. With
  // `unit_time`, also 0 <= t <= 1.
  void validate(bool unit_time) const;

  friend bool operator==(const EventStream&, const EventStream&) = default;
};

}  // namespace v2v
