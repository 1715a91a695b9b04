#include "v2v/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "v2v/errors.hpp"

namespace v2v {

using nlohmann::json;

void DatasetManifest::validate() const {
  for (const auto& s : scenes) {
    if (s.scene_id.empty()) throw DataError("manifest scene with empty scene_id");
    if (s.width < 1 || s.height < 1) throw DataError("manifest scene '" + s.scene_id + "' has invalid resolution");
    if (!(s.frame_rate > 0.0) || !std::isfinite(s.frame_rate)) {
      throw DataError("manifest scene '" + s.scene_id + "' has invalid frame_rate");
    }
  }
}

std::uint64_t prestacked_bytes_per_sequence(const SlicePlan& plan, Dims dims) noexcept {
  return static_cast<std::uint64_t>(plan.voxels) * static_cast<std::uint64_t>(plan.bins) *
         dims.size() * 4;
}

StatsReport stats(const DatasetManifest& manifest, const SlicePlan& plan) {
  manifest.validate();
  plan.validate();
  StatsReport r;
  std::set<std::pair<int, int>> resolutions;
  for (const auto& s : manifest.scenes) {
    const Dims dims{s.width, s.height};
    const auto seqs = plan_slices(s.frame_count, plan).size();
    r.scenes += 1;
    r.total_frames += s.frame_count;
    r.total_duration_s += static_cast<double>(s.frame_count) / s.frame_rate;
    r.sequences += seqs;
    r.source_bytes += s.source_bytes;
    r.prestacked_bytes += seqs * prestacked_bytes_per_sequence(plan, dims);
    resolutions.emplace(s.width, s.height);
  }
  r.sequences_by_frames = r.total_frames / static_cast<std::uint64_t>(plan.voxels);
  for (const auto& [w, h] : resolutions) r.resolutions.push_back({w, h});
  if (r.prestacked_bytes > 0) {
    r.ratio = static_cast<double>(r.source_bytes) / static_cast<double>(r.prestacked_bytes);
  }
  if (r.source_bytes > 0) {
    r.compression = static_cast<double>(r.prestacked_bytes) / static_cast<double>(r.source_bytes);
  }
  return r;
}

std::string format_sig3(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

std::string format_report(const StatsReport& r, const SlicePlan& plan) {
  std::ostringstream out;
  out << "scenes=" << r.scenes << '\n';
  out << "total_frames=" << r.total_frames << '\n';
  char dur[64];
  std::snprintf(dur, sizeof dur, "%.3f", r.total_duration_s);
  out << "total_duration_s=" << dur << '\n';
  std::snprintf(dur, sizeof dur, "%.3f", r.total_duration_s / 3600.0);
  out << "total_duration_h=" << dur << '\n';
  out << "resolutions=";
  for (std::size_t i = 0; i < r.resolutions.size(); ++i) {
    out << (i ? "," : "") << r.resolutions[i].height << 'x' << r.resolutions[i].width;
  }
  out << '\n';
  out << "bins=" << plan.bins << '\n';
  out << "voxels=" << plan.voxels << '\n';
  out << "window_frames=" << plan.window_length() << '\n';
  out << "sequences=" << r.sequences << '\n';
  out << "sequences_frames_div_voxels=" << r.sequences_by_frames << '\n';
  out << "source_bytes=" << r.source_bytes << '\n';
  out << "prestacked_bytes=" << r.prestacked_bytes << '\n';
  out << "ratio=" << format_sig3(r.ratio) << '\n';
  out << "compression=" << format_sig3(r.compression) << '\n';
  return out.str();
}

std::string manifest_to_json(const DatasetManifest& manifest, const SlicePlan& plan) {
  const StatsReport r = stats(manifest, plan);
  json doc;
  doc["format"] = "v2v-manifest";
  doc["version"] = 1;
  doc["plan"] = {{"bins", plan.bins},
                 {"voxels", plan.voxels},
                 {"stride", plan.effective_stride()},
                 {"window_frames", plan.window_length()}};
  json scenes = json::array();
  for (const auto& s : manifest.scenes) {
    scenes.push_back({{"scene_id", s.scene_id},
                      {"frame_count", s.frame_count},
                      {"width", s.width},
                      {"height", s.height},
                      {"frame_rate", s.frame_rate},
                      {"source_bytes", s.source_bytes}});
  }
  doc["scenes"] = std::move(scenes);
  doc["derived"] = {{"total_duration_s", r.total_duration_s},
                    {"sequence_count", r.sequences},
                    {"source_bytes", r.source_bytes},
                    {"prestacked_bytes", r.prestacked_bytes}};
  return doc.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text, const std::string& origin) {
  DatasetManifest m;
  try {
    const json doc = json::parse(text);
    for (const auto& s : doc.at("scenes")) {
      SceneEntry e;
      e.scene_id = s.at("scene_id").get<std::string>();
      e.frame_count = s.at("frame_count").get<std::uint64_t>();
      e.width = s.at("width").get<int>();
      e.height = s.at("height").get<int>();
      e.frame_rate = s.value("frame_rate", 30.0);
      e.source_bytes = s.value("source_bytes", std::uint64_t{0});
      m.scenes.push_back(std::move(e));
    }
    if (doc.contains("plan")) {
      SlicePlan p;
      const auto& jp = doc.at("plan");
      p.bins = jp.at("bins").get<int>();
      p.voxels = jp.at("voxels").get<int>();
      const int stride = jp.value("stride", 0);
      p.stride = stride == p.window_length() ? 0 : stride;
      m.plan = p;
    }
  } catch (const json::exception& e) {
    throw DataError(origin + ": malformed manifest: " + e.what());
  }
  try {
    m.validate();
  } catch (const DataError& e) {
    throw DataError(origin + ": " + e.what());
  }
  return m;
}

void save_manifest(const DatasetManifest& manifest, const SlicePlan& plan,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot create " + path.string());
  out << manifest_to_json(manifest, plan);
  if (!out) throw DataError("failed writing " + path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("manifest not found: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.string());
}

}  // namespace v2v
