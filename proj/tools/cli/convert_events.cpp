#include <filesystem>
#include <ostream>
#include <string>

#include "cli/cli.hpp"
#include "v2v/errors.hpp"
#include "v2v/event_io.hpp"
#include "v2v/events.hpp"
#include "v2v/voxel_io.hpp"

namespace v2v::cli {

int cmd_convert_events(const ConvertOptions& o, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (o.events.empty()) throw ConfigError("--events is required");
  if (o.out.empty()) throw ConfigError("--out is required");
  if (o.windows < 1) throw ConfigError("--windows must be >= 1");
  const bool discrete = o.repr == "discrete";
  if (!discrete && o.repr != "interpolated") {
    throw ConfigError("--repr: expected discrete|interpolated, got '" + o.repr + "'");
  }
  if (o.bins < (discrete ? 1 : 2)) {
    throw ConfigError(std::string("--bins: must be >= ") + (discrete ? "1" : "2"));
  }
  if (o.width.has_value() != o.height.has_value()) {
    throw ConfigError("--width and --height must be given together");
  }

  EventReadOptions read_options;
  read_options.sort_unsorted = o.sort;
  if (o.width) {
    if (*o.width < 1 || *o.height < 1) throw ConfigError("--width/--height must be >= 1");
    read_options.dims = Dims{*o.width, *o.height};
  }
  const EventStream stream = read_events(fs::path(o.events), parse_event_format(o.format), read_options);

  double t0 = 0.0;
  double t1 = 1.0;
  if (o.t0) {
    t0 = *o.t0;
  } else if (!stream.records.empty()) {
    t0 = stream.records.front().t;
  }
  if (o.t1) {
    t1 = *o.t1;
  } else if (!stream.records.empty()) {
    t1 = stream.records.back().t;
  }
  if (!(t0 < t1)) throw ConfigError("--t0/--t1: window must satisfy t0 < t1");

  if (o.windows > 1) fs::create_directories(o.out);
  const double span = (t1 - t0) / o.windows;
  for (int w = 0; w < o.windows; ++w) {
    const double lo = t0 + span * w;
    const double hi = w + 1 == o.windows ? t1 : t0 + span * (w + 1);
    EventStream slice;
    slice.dims = stream.dims;
    for (const auto& e : stream.records) {
      const bool inside = e.t >= lo && (e.t < hi || (w + 1 == o.windows && e.t == hi));
      if (inside) slice.records.push_back(e);
    }
    const EventStream normalized = normalize_window(slice, lo, hi);
    const fs::path path = o.windows == 1 ? fs::path(o.out) : fs::path(o.out) / (std::to_string(w) + ".v2vx");
    if (discrete) {
      const DiscreteVoxel voxel = discrete_voxel_from_events(normalized, o.bins);
      write_voxels(std::span<const DiscreteVoxel>(&voxel, 1), path);
    } else {
      const InterpolatedVoxel voxel = interpolated_voxel_from_events(normalized, o.bins);
      write_voxels(std::span<const InterpolatedVoxel>(&voxel, 1), path);
    }
  }
  err << "convert-events: " << stream.records.size() << " event(s) into " << o.windows
      << " window(s)\n";
  out << "events=" << stream.records.size() << '\n';
  out << "width=" << stream.dims.width << '\n';
  out << "height=" << stream.dims.height << '\n';
  out << "windows=" << o.windows << '\n';
  out << "bins=" << o.bins << '\n';
  out << "repr=" << o.repr << '\n';
  return kExitOk;
}

}  // namespace v2v::cli
