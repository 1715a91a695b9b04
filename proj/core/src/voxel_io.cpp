#include "v2v/voxel_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "v2v/errors.hpp"

namespace v2v {
namespace {

constexpr std::array<char, 4> kMagic = {'V', '2', 'V', 'X'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kDtypeF32 = 1;

void put_u16(char* p, std::uint16_t v) {
  p[0] = static_cast<char>(v & 0xFF);
  p[1] = static_cast<char>(v >> 8);
}
void put_u32(char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
}
std::uint16_t get_u16(const char* p) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(p[0]) |
                                    (static_cast<unsigned char>(p[1]) << 8));
}
std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

struct Header {
  int bins = 0;
  Dims dims{};
};

void write_header(std::ostream& out, int bins, Dims dims) {
  std::array<char, kVoxelHeaderBytes> h{};
  std::copy(kMagic.begin(), kMagic.end(), h.begin());
  put_u16(h.data() + 4, kVersion);
  put_u16(h.data() + 6, kDtypeF32);
  put_u32(h.data() + 8, static_cast<std::uint32_t>(bins));
  put_u32(h.data() + 12, static_cast<std::uint32_t>(dims.height));
  put_u32(h.data() + 16, static_cast<std::uint32_t>(dims.width));
  out.write(h.data(), h.size());
}

// False at a clean end of stream.
bool read_header(std::istream& in, std::size_t record, Header& header) {
  std::array<char, kVoxelHeaderBytes> h{};
  in.read(h.data(), h.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got == 0) return false;
  const std::string where = "voxel record " + std::to_string(record);
  if (got < h.size()) throw ParseError(record, where + ": truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), h.begin())) {
    throw ParseError(record, where + ": bad magic (expected V2VX)");
  }
  if (get_u16(h.data() + 4) != kVersion) throw ParseError(record, where + ": unsupported version");
  if (get_u16(h.data() + 6) != kDtypeF32) throw ParseError(record, where + ": unsupported dtype");
  const auto bins = get_u32(h.data() + 8);
  const auto height = get_u32(h.data() + 12);
  const auto width = get_u32(h.data() + 16);
  if (bins == 0 || height == 0 || width == 0 || bins > (1u << 20) || height > (1u << 16) ||
      width > (1u << 16)) {
    throw ParseError(record, where + ": invalid dimensions");
  }
  header.bins = static_cast<int>(bins);
  header.dims = {static_cast<int>(width), static_cast<int>(height)};
  return true;
}

template <typename T>
void write_payload(std::ostream& out, std::span<const T> values) {
  std::vector<char> bytes(values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    put_u32(bytes.data() + 4 * i, std::bit_cast<std::uint32_t>(static_cast<float>(values[i])));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

template <typename Vox, typename Convert>
std::vector<Vox> read_records(std::istream& in, Convert convert) {
  std::vector<Vox> out;
  Header header;
  std::vector<char> bytes;
  while (read_header(in, out.size(), header)) {
    Vox voxel(header.bins, header.dims);
    bytes.resize(voxel.size() * 4);
    in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
      throw ParseError(out.size(), "voxel record " + std::to_string(out.size()) +
                                       ": truncated payload (" + std::to_string(in.gcount()) +
                                       " of " + std::to_string(bytes.size()) + " bytes)");
    }
    auto values = voxel.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = convert(std::bit_cast<float>(get_u32(bytes.data() + 4 * i)), out.size());
    }
    out.push_back(std::move(voxel));
  }
  return out;
}

}  // namespace

std::uint64_t voxel_payload_bytes(int bins, Dims dims) noexcept {
  return static_cast<std::uint64_t>(bins) * dims.size() * 4;
}

void write_voxels(std::span<const DiscreteVoxel> voxels, std::ostream& out) {
  for (const auto& v : voxels) {
    for (const auto c : v.values()) {
      if (c > kMaxExactCount || c < -kMaxExactCount) {
        throw DataError("voxel count " + std::to_string(c) + " is not exactly representable in f32");
      }
    }
  }
  for (const auto& v : voxels) {
    write_header(out, v.bins(), v.dims());
    write_payload<std::int32_t>(out, v.values());
  }
  if (!out) throw DataError("failed writing voxel data");
}

void write_voxels(std::span<const DiscreteVoxel> voxels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot create " + path.string());
  write_voxels(voxels, out);
}

std::vector<DiscreteVoxel> read_voxels(std::istream& in) {
  return read_records<DiscreteVoxel>(in, [](float f, std::size_t record) {
    if (!std::isfinite(f) || f != std::nearbyint(f) || std::fabs(f) > kMaxExactCount) {
      throw ParseError(record, "voxel record " + std::to_string(record) + ": non-integral count");
    }
    return static_cast<std::int32_t>(f);
  });
}

std::vector<DiscreteVoxel> read_voxels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_voxels(in);
}

void write_voxels(std::span<const InterpolatedVoxel> voxels, std::ostream& out) {
  for (const auto& v : voxels) {
    write_header(out, v.bins(), v.dims());
    write_payload<double>(out, v.values());
  }
  if (!out) throw DataError("failed writing voxel data");
}

void write_voxels(std::span<const InterpolatedVoxel> voxels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot create " + path.string());
  write_voxels(voxels, out);
}

std::vector<InterpolatedVoxel> read_voxels_real(std::istream& in) {
  return read_records<InterpolatedVoxel>(in, [](float f, std::size_t) { return static_cast<double>(f); });
}

}  // namespace v2v
