#include "v2v/types.hpp"

#include <cmath>
#include <string>

#include "v2v/errors.hpp"

namespace v2v {

std::string to_string(Dims dims) {
  return std::to_string(dims.width) + "x" + std::to_string(dims.height);
}

void require_same_dims(Dims a, Dims b, const char* what) {
  if (a != b) {
    throw DataError(std::string(what) + ": dimension mismatch (" + to_string(a) + " vs " +
                    to_string(b) + ")");
  }
}

template <typename T, typename Tag>
void Grid<T, Tag>::check_dims() const {
  if (!dims_.valid()) throw DataError("grid dimensions must be positive, got " + to_string(dims_));
}

template <typename T, typename Tag>
void Grid<T, Tag>::throw_size_mismatch(std::size_t got, std::size_t want) {
  throw DataError("grid data has " + std::to_string(got) + " values, expected " +
                  std::to_string(want));
}

template class Grid<std::uint8_t, FrameTag>;
template class Grid<double, LinearLuminanceTag>;
template class Grid<double, LogLuminanceTag>;
template class Grid<double, LogDeltaTag>;
template class Grid<double, ResidualTag>;
template class Grid<std::int32_t, CountTag>;

template <typename T, typename Tag>
Volume<T, Tag>::Volume(int bins, Dims dims, T fill) : bins_(bins), dims_(dims) {
  if (bins < 1 || !dims.valid()) {
    throw DataError("volume dimensions must be positive, got " + std::to_string(bins) + "x" +
                    to_string(dims));
  }
  data_.assign(static_cast<std::size_t>(bins) * dims.size(), fill);
}

template class Volume<std::int32_t, DiscreteVoxelTag>;
template class Volume<double, InterpolatedVoxelTag>;

void FrameSequence::validate() const {
  if (frames.size() < 2) {
    throw DataError("frame sequence needs at least 2 frames, got " + std::to_string(frames.size()));
  }
  const Dims first = frames.front().dims();
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].dims() != first) {
      throw DataError("frame " + std::to_string(i) + " is " + to_string(frames[i].dims()) +
                      ", expected " + to_string(first));
    }
  }
}

void HotPixelMap::validate() const {
  for (const auto& e : entries) {
    if (e.x < 0 || e.y < 0 || e.x >= dims.width || e.y >= dims.height) {
      throw ConfigError("hot pixel (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                        ") outside " + to_string(dims));
    }
    if (e.magnitude == 0.0 || !std::isfinite(e.magnitude)) {
      throw ConfigError("hot pixel magnitude must be finite and nonzero");
    }
  }
}

LogDelta HotPixelMap::to_dense() const {
  LogDelta dense(dims, 0.0);
  for (const auto& e : entries) dense(e.x, e.y) += e.magnitude;
  return dense;
}

void SensorParams::validate() const {
  if (!(c_plus > 0.0) || !std::isfinite(c_plus)) throw ConfigError("c_plus must be > 0");
  if (!(c_minus > 0.0) || !std::isfinite(c_minus)) throw ConfigError("c_minus must be > 0");
  if (!(sigma_bg >= 0.0) || !std::isfinite(sigma_bg)) throw ConfigError("sigma_bg must be >= 0");
  hot_pixels.validate();
}

bool event_less(const EventRecord& a, const EventRecord& b) noexcept {
  if (a.t != b.t) return a.t < b.t;
  if (a.y != b.y) return a.y < b.y;
  if (a.x != b.x) return a.x < b.x;
  return a.p < b.p;
}

void EventStream::validate(bool unit_time) const {
  double prev = -INFINITY;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string where = "event " + std::to_string(i);
    if (!std::isfinite(r.t)) throw ParseError(i, where + ": non-finite timestamp");
    if (unit_time && (r.t < 0.0 || r.t > 1.0)) {
      throw ParseError(i, where + ": timestamp " + std::to_string(r.t) + " outside [0,1]");
    }
    if (r.x >= dims.width || r.y >= dims.height) {
      throw ParseError(i, where + ": coordinate (" + std::to_string(r.x) + "," +
                              std::to_string(r.y) + ") outside " + to_string(dims));
    }
    if (r.p != 1 && r.p != -1) throw ParseError(i, where + ": polarity must be -1 or +1");
    if (r.t < prev) throw ParseError(i, where + ": timestamps not sorted");
    prev = r.t;
  }
}

}  // namespace v2v
