#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string_view>
#include <vector>

#include "v2v/types.hpp"

namespace v2v {

/// Supported images in `dir` whose filename matches the glob `pattern`,
/// sorted by filename.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir,
                                                    std::string_view pattern = "*");

/// Reads every supported image in `dir` whose filename matches the glob
/// `pattern`, ordered lexicographically by filename.
FrameSequence read_frames_dir(const std::filesystem::path& dir, std::string_view pattern = "*",
                              double frame_rate = 30.0);

/// Pulls fixed-size 8-bit frames off a byte stream one at a time.
class RawFrameReader {
 public:
  RawFrameReader(std::istream& in, Dims dims);

  /// Next frame, or nullopt at a clean end of stream. A partial trailing
  /// frame throws DataError naming its byte offset.
  std::optional<Frame> next();

  std::uint64_t bytes_read() const noexcept { return offset_; }

 private:
  std::istream* in_;
  Dims dims_;
  std::uint64_t offset_ = 0;
};

FrameSequence read_frames_raw(std::istream& in, Dims dims, double frame_rate = 30.0);

struct CropRect {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;

  friend bool operator==(const CropRect&, const CropRect&) = default;
};

Frame crop(const Frame& frame, const CropRect& rect);
FrameSequence crop(const FrameSequence& seq, const CropRect& rect);

/// Contrast stretch about mid-gray: clip((F - 127.5) * s + 127.5, 0, 255),
/// rounded half-to-even. Requires s >= 1.
Frame degrade_dynamic_range(const Frame& frame, double scale);

}  // namespace v2v
