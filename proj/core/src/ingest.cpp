#include "v2v/ingest.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "v2v/errors.hpp"
#include "v2v/image_io.hpp"

namespace v2v {

std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir,
                                                    std::string_view pattern) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError(dir.string() + ": not a directory");

  const std::string glob(pattern);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (::fnmatch(glob.c_str(), name.c_str(), 0) != 0) continue;
    if (!is_supported_image(entry.path())) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

FrameSequence read_frames_dir(const std::filesystem::path& dir, std::string_view pattern,
                              double frame_rate) {
  const auto files = list_frame_files(dir, pattern);
  if (files.empty()) {
    throw DataError(dir.string() + ": no images matching '" + std::string(pattern) + "'");
  }

  FrameSequence seq;
  seq.frame_rate = frame_rate;
  auto name = dir.filename();
  if (name.empty()) name = dir.parent_path().filename();
  seq.scene_id = name.string();
  seq.frames.reserve(files.size());
  for (const auto& f : files) {
    Frame frame = read_image(f);
    if (!seq.frames.empty() && frame.dims() != seq.frames.front().dims()) {
      throw DataError(f.string() + ": resolution " + to_string(frame.dims()) + " differs from " +
                      to_string(seq.frames.front().dims()));
    }
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

RawFrameReader::RawFrameReader(std::istream& in, Dims dims) : in_(&in), dims_(dims) {
  if (!dims.valid()) throw ConfigError("raw frame dimensions must be positive");
}

std::optional<Frame> RawFrameReader::next() {
  std::vector<std::uint8_t> buffer(dims_.size());
  in_->read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
  const auto got = static_cast<std::uint64_t>(in_->gcount());
  if (got == 0) return std::nullopt;
  if (got < buffer.size()) {
    throw DataError("raw stream ends with a partial frame at byte offset " +
                    std::to_string(offset_) + " (" + std::to_string(got) + " of " +
                    std::to_string(buffer.size()) + " bytes)");
  }
  offset_ += got;
  return Frame(dims_, std::move(buffer));
}

FrameSequence read_frames_raw(std::istream& in, Dims dims, double frame_rate) {
  RawFrameReader reader(in, dims);
  FrameSequence seq;
  seq.frame_rate = frame_rate;
  while (auto frame = reader.next()) seq.frames.push_back(std::move(*frame));
  if (seq.frames.size() < 2) {
    throw DataError("raw stream holds " + std::to_string(seq.frames.size()) +
                    " frame(s); at least 2 are required");
  }
  return seq;
}

Frame crop(const Frame& frame, const CropRect& rect) {
  if (rect.top < 0 || rect.left < 0 || rect.height < 1 || rect.width < 1 ||
      rect.top + rect.height > frame.height() || rect.left + rect.width > frame.width()) {
    throw ConfigError("crop " + std::to_string(rect.top) + ":" + std::to_string(rect.left) + ":" +
                      std::to_string(rect.height) + ":" + std::to_string(rect.width) +
                      " exceeds frame " + to_string(frame.dims()));
  }
  Frame out(Dims{rect.width, rect.height});
  for (int y = 0; y < rect.height; ++y) {
    for (int x = 0; x < rect.width; ++x) out(x, y) = frame(rect.left + x, rect.top + y);
  }
  return out;
}

FrameSequence crop(const FrameSequence& seq, const CropRect& rect) {
  FrameSequence out;
  out.frame_rate = seq.frame_rate;
  out.scene_id = seq.scene_id;
  out.frames.reserve(seq.frames.size());
  for (const auto& f : seq.frames) out.frames.push_back(crop(f, rect));
  return out;
}

Frame degrade_dynamic_range(const Frame& frame, double scale) {
  if (!(scale >= 1.0) || !std::isfinite(scale)) {
    throw ConfigError("degradation scale must be >= 1, got " + std::to_string(scale));
  }
  std::array<std::uint8_t, 256> table{};
  for (int v = 0; v < 256; ++v) {
    const double stretched = (static_cast<double>(v) - 127.5) * scale + 127.5;
    table[v] = static_cast<std::uint8_t>(std::nearbyint(std::clamp(stretched, 0.0, 255.0)));
  }
  Frame out(frame.dims());
  const auto src = frame.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = table[src[i]];
  return out;
}

}  // namespace v2v
