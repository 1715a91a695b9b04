#include "v2v/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "v2v/errors.hpp"

namespace v2v {
namespace {

void require_unit_times(const EventStream& stream) {
  for (std::size_t i = 0; i < stream.records.size(); ++i) {
    const double t = stream.records[i].t;
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ParseError(i, "event " + std::to_string(i) + ": timestamp " + std::to_string(t) +
                              " outside [0,1]");
    }
  }
}

void require_in_bounds(const EventStream& stream) {
  for (std::size_t i = 0; i < stream.records.size(); ++i) {
    const auto& r = stream.records[i];
    if (r.x >= stream.dims.width || r.y >= stream.dims.height) {
      throw ParseError(i, "event " + std::to_string(i) + ": coordinate outside " +
                              to_string(stream.dims));
    }
  }
}

// Pushes t towards the nearest value that bins into `bin`.
double align_to_bin(double t, int bin, int bins) {
  while (bin_index(t, bins) > bin) t = std::nextafter(t, -INFINITY);
  while (bin_index(t, bins) < bin) t = std::nextafter(t, INFINITY);
  return t;
}

}  // namespace

int bin_index(double t, int bins) noexcept {
  const double scaled = t * static_cast<double>(bins);
  int b = scaled <= 0.0 ? 0 : static_cast<int>(std::min(scaled, static_cast<double>(bins - 1)));
  const double denom = static_cast<double>(bins);
  if (b > 0 && t < static_cast<double>(b) / denom) {
    --b;
  } else if (b + 1 < bins && t >= static_cast<double>(b + 1) / denom) {
    ++b;
  }
  return b;
}

EventStream oracle_simulate(std::span<const LogLuminance> log_frames, const SensorParams& params,
                            const ResidualState& initial,
                            std::span<const LogDelta> perturbations) {
  if (log_frames.size() < 2) throw DataError("oracle_simulate needs at least 2 frames");
  params.validate();
  const int bins = static_cast<int>(log_frames.size()) - 1;
  const Dims dims = initial.dims();
  for (const auto& f : log_frames) require_same_dims(f.dims(), dims, "oracle_simulate");
  if (!perturbations.empty()) {
    if (perturbations.size() != static_cast<std::size_t>(bins)) {
      throw DataError("oracle_simulate: expected one perturbation grid per step");
    }
    for (const auto& p : perturbations) require_same_dims(p.dims(), dims, "oracle_simulate");
  }
  if (dims.width > 65536 || dims.height > 65536) {
    throw DataError("oracle_simulate: grid too large for 16-bit event coordinates");
  }
  const LogDelta hot = params.hot_pixels.entries.empty() ? LogDelta(dims, 0.0)
                                                         : params.hot_pixels.to_dense();

  // Same integer-snapping convention as the frame-step trigger count.
  const double up_tol = kQuotientSnap * params.c_plus;
  const double down_tol = kQuotientSnap * params.c_minus;

  EventStream out;
  out.dims = dims;
  for (int y = 0; y < dims.height; ++y) {
    for (int x = 0; x < dims.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * dims.width + x;
      // Signal relative to frame 0; the reference sits `initial` below it.
      double signal = 0.0;
      double reference = -initial[idx];
      double last_t = -1.0;
      for (int i = 0; i < bins; ++i) {
        double delta = log_frames[i + 1][idx] - log_frames[i][idx] + hot[idx];
        if (!perturbations.empty()) delta += perturbations[i][idx];
        const double start = signal;
        const double end = signal + delta;

        auto emit = [&](double level, std::int8_t polarity) {
          double frac = delta != 0.0 ? (level - start) / delta : 0.0;
          frac = std::clamp(frac, 0.0, 1.0);
          double t = (static_cast<double>(i) + frac) / static_cast<double>(bins);
          if (t <= last_t) t = std::nextafter(last_t, INFINITY);
          t = align_to_bin(t, i, bins);
          last_t = t;
          out.records.push_back(
              {t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), polarity});
        };

        auto fire_up = [&] {
          while (end - (reference + params.c_plus) >= -up_tol) {
            reference += params.c_plus;
            emit(reference, 1);
          }
        };
        auto fire_down = [&] {
          while ((reference - params.c_minus) - end >= -down_tol) {
            reference -= params.c_minus;
            emit(reference, -1);
          }
        };
        if (delta >= 0.0) {
          fire_up();
          fire_down();
        } else {
          fire_down();
          fire_up();
        }
        signal = end;
      }
    }
  }
  std::sort(out.records.begin(), out.records.end(), event_less);
  return out;
}

DiscreteVoxel discrete_voxel_from_events(const EventStream& stream, int bins) {
  if (bins < 1) throw ConfigError("bins must be >= 1");
  require_unit_times(stream);
  require_in_bounds(stream);
  DiscreteVoxel voxel(bins, stream.dims, 0);
  for (const auto& e : stream.records) voxel.at(bin_index(e.t, bins), e.x, e.y) += e.p;
  return voxel;
}

InterpolatedVoxel interpolated_voxel_from_events(const EventStream& stream, int bins) {
  if (bins < 2) throw ConfigError("interpolated voxel needs bins >= 2");
  require_unit_times(stream);
  require_in_bounds(stream);
  InterpolatedVoxel voxel(bins, stream.dims, 0.0);
  const double last = static_cast<double>(bins - 1);
  for (const auto& e : stream.records) {
    const double pos = last * e.t;
    const int lower = std::min(static_cast<int>(pos), bins - 1);
    const double upper_weight = pos - static_cast<double>(lower);
    voxel.at(lower, e.x, e.y) += e.p * (1.0 - upper_weight);
    if (lower + 1 < bins && upper_weight > 0.0) {
      voxel.at(lower + 1, e.x, e.y) += e.p * upper_weight;
    }
  }
  return voxel;
}

CountGrid event_stack(const EventStream& stream, double t1, double t2) {
  if (!(t1 < t2)) throw ConfigError("event_stack: requires t1 < t2");
  require_in_bounds(stream);
  CountGrid grid(stream.dims, 0);
  for (const auto& e : stream.records) {
    if (e.t >= t1 && e.t < t2) grid(e.x, e.y) += e.p;
  }
  return grid;
}

EventStream normalize_window(const EventStream& stream, double t0, double t1) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t0 < t1)) {
    throw ConfigError("event window requires finite t0 < t1");
  }
  EventStream out;
  out.dims = stream.dims;
  const double span = t1 - t0;
  for (const auto& e : stream.records) {
    if (e.t < t0 || e.t > t1) continue;
    EventRecord r = e;
    r.t = std::clamp((e.t - t0) / span, 0.0, 1.0);
    out.records.push_back(r);
  }
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const EventRecord& a, const EventRecord& b) { return a.t < b.t; });
  return out;
}

}  // namespace v2v
