#include "v2v/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "v2v/errors.hpp"

#ifdef V2V_HAVE_PNG
#include <png.h>
#endif

namespace v2v {
namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

class PnmParser {
 public:
  PnmParser(std::vector<char> bytes, std::string name) : bytes_(std::move(bytes)), name_(std::move(name)) {}

  Frame parse() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') fail("not a PNM file");
    const char kind = bytes_[1];
    pos_ = 2;
    const bool ascii = kind == '2' || kind == '3';
    const bool color = kind == '3' || kind == '6';
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
      fail(std::string("unsupported PNM variant P") + kind);
    }
    const long width = header_int();
    const long height = header_int();
    const long maxval = header_int();
    if (width < 1 || height < 1 || width > 1 << 16 || height > 1 << 16) fail("bad dimensions");
    if (maxval < 1 || maxval > 255) fail("only 8-bit PNM (maxval <= 255) is supported");

    const Dims dims{static_cast<int>(width), static_cast<int>(height)};
    const std::size_t channels = color ? 3 : 1;
    std::vector<std::uint8_t> samples(dims.size() * channels);
    if (ascii) {
      for (auto& s : samples) s = scale(header_int(), maxval);
    } else {
      ++pos_;  // single whitespace after maxval
      if (bytes_.size() < pos_ + samples.size()) fail("truncated pixel data");
      for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = scale(static_cast<unsigned char>(bytes_[pos_ + i]), maxval);
      }
    }
    if (!color) return Frame(dims, std::move(samples));
    std::vector<std::uint8_t> gray(dims.size());
    for (std::size_t i = 0; i < gray.size(); ++i) {
      gray[i] = luma_bt601(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
    }
    return Frame(dims, std::move(gray));
  }

 private:

  static std::uint8_t scale(long v, long maxval) {
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>(std::nearbyint(255.0 * static_cast<double>(v) / static_cast<double>(maxval)));
  }

  long header_int() {
    for (;;) {
      while (pos_ < bytes_.size() && std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
      if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("malformed header");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1L << 20) fail("header value too large");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const { throw DataError(name_ + ": " + what); }

  std::vector<char> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

#ifdef V2V_HAVE_PNG
Frame read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw DataError(path.string() + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const Dims dims{static_cast<int>(image.width), static_cast<int>(image.height)};
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&image, &background, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw DataError(path.string() + ": " + msg);
  }
  if (!color) return Frame(dims, std::move(buffer));
  std::vector<std::uint8_t> gray(dims.size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = luma_bt601(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]);
  }
  return Frame(dims, std::move(gray));
}
#endif

}  // namespace

std::uint8_t luma_bt601(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::clamp(std::nearbyint(y), 0.0, 255.0));
}

bool is_supported_image(const std::filesystem::path& path) {
  const auto ext = lower_ext(path);
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return true;
#ifdef V2V_HAVE_PNG
  if (ext == ".png") return true;
#endif
  return false;
}

Frame read_image(const std::filesystem::path& path) {
  const auto ext = lower_ext(path);
#ifdef V2V_HAVE_PNG
  if (ext == ".png") return read_png(path);
#endif
  if (ext != ".pgm" && ext != ".ppm" && ext != ".pnm") {
    throw DataError(path.string() + ": unsupported image format");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return PnmParser(std::move(bytes), path.string()).parse();
}

void write_pgm(const Frame& frame, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot create " + path.string());
  out << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  const auto v = frame.values();
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

void write_ppm(const std::filesystem::path& path, Dims dims, std::span<const std::uint8_t> rgb) {
  if (rgb.size() != dims.size() * 3) throw DataError("write_ppm: expected 3 bytes per pixel");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot create " + path.string());
  out << "P6\n" << dims.width << ' ' << dims.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace v2v
