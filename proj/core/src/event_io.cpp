#include "v2v/event_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "v2v/errors.hpp"

namespace v2v {
namespace {

constexpr std::array<char, 4> kMagic = {'E', 'V', 'T', '1'};
constexpr std::size_t kHeaderBytes = 16;
constexpr std::size_t kRecordBytes = 13;

template <typename T>
void put_le(char* dst, T value) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) dst[i] = static_cast<char>((u >> (8 * i)) & 0xFF);
}

template <typename T>
T get_le(const char* src) {
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    u |= static_cast<U>(static_cast<unsigned char>(src[i])) << (8 * i);
  }
  return static_cast<T>(u);
}

void finish(EventStream& stream, const EventReadOptions& options) {
  if (options.sort_unsorted) {
    std::stable_sort(stream.records.begin(), stream.records.end(),
                     [](const EventRecord& a, const EventRecord& b) { return a.t < b.t; });
  }
  stream.validate(false);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

EventStream read_text(std::istream& in, const EventReadOptions& options) {
  EventStream stream;
  std::string line;
  std::uint64_t line_no = 0;
  int max_x = -1;
  int max_y = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    const char* p = body.data();
    const char* end = body.data() + body.size();
    auto skip_ws = [&] {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
    };
    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError(line_no, "line " + std::to_string(line_no) + ": " + what);
    };

    double t = 0.0;
    long x = 0, y = 0, pol = 0;
    auto r = std::from_chars(p, end, t);
    if (r.ec != std::errc{}) throw fail("malformed timestamp");
    p = r.ptr;
    skip_ws();
    r = std::from_chars(p, end, x);
    if (r.ec != std::errc{}) throw fail("malformed x coordinate");
    p = r.ptr;
    skip_ws();
    r = std::from_chars(p, end, y);
    if (r.ec != std::errc{}) throw fail("malformed y coordinate");
    p = r.ptr;
    skip_ws();
    r = std::from_chars(p, end, pol);
    if (r.ec != std::errc{}) throw fail("malformed polarity");
    p = r.ptr;
    skip_ws();
    if (p != end) throw fail("trailing characters");

    if (!std::isfinite(t)) throw fail("non-finite timestamp");
    if (x < 0 || y < 0 || x > 65535 || y > 65535) throw fail("coordinate out of range");
    if (pol != 1 && pol != -1) throw fail("polarity must be -1 or 1, got " + std::to_string(pol));
    if (options.dims && (x >= options.dims->width || y >= options.dims->height)) {
      throw fail("coordinate (" + std::to_string(x) + "," + std::to_string(y) + ") outside " +
                 to_string(*options.dims));
    }
    if (!options.sort_unsorted && !stream.records.empty() && t < stream.records.back().t) {
      throw fail("timestamps not sorted");
    }
    max_x = std::max(max_x, static_cast<int>(x));
    max_y = std::max(max_y, static_cast<int>(y));
    stream.records.push_back({t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                              static_cast<std::int8_t>(pol)});
  }
  stream.dims = options.dims ? *options.dims : Dims{std::max(max_x + 1, 1), std::max(max_y + 1, 1)};
  finish(stream, options);
  return stream;
}

EventStream read_binary(std::istream& in, const EventReadOptions& options) {
  std::array<char, kHeaderBytes> header{};
  if (!in.read(header.data(), header.size())) throw ParseError(0, "truncated event file header");
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) {
    throw ParseError(0, "bad event file magic (expected EVT1)");
  }
  EventStream stream;
  stream.dims = {get_le<std::uint16_t>(header.data() + 4), get_le<std::uint16_t>(header.data() + 6)};
  if (!stream.dims.valid()) throw ParseError(0, "event file header has zero dimensions");
  if (options.dims && *options.dims != stream.dims) {
    throw ParseError(0, "event file is " + to_string(stream.dims) + ", expected " +
                            to_string(*options.dims));
  }
  const auto count = get_le<std::uint32_t>(header.data() + 8);
  stream.records.reserve(count);

  std::array<char, kRecordBytes> rec{};
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!in.read(rec.data(), rec.size())) {
      throw ParseError(i, "record " + std::to_string(i) + ": truncated (header promises " +
                              std::to_string(count) + ")");
    }
    EventRecord e;
    e.t = std::bit_cast<double>(get_le<std::uint64_t>(rec.data()));
    e.x = get_le<std::uint16_t>(rec.data() + 8);
    e.y = get_le<std::uint16_t>(rec.data() + 10);
    e.p = static_cast<std::int8_t>(rec[12]);
    if (!std::isfinite(e.t)) throw ParseError(i, "record " + std::to_string(i) + ": non-finite timestamp");
    if (e.x >= stream.dims.width || e.y >= stream.dims.height) {
      throw ParseError(i, "record " + std::to_string(i) + ": coordinate outside " +
                              to_string(stream.dims));
    }
    if (e.p != 1 && e.p != -1) {
      throw ParseError(i, "record " + std::to_string(i) + ": polarity must be -1 or 1");
    }
    if (!options.sort_unsorted && !stream.records.empty() && e.t < stream.records.back().t) {
      throw ParseError(i, "record " + std::to_string(i) + ": timestamps not sorted");
    }
    stream.records.push_back(e);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError(count, "trailing bytes after " + std::to_string(count) + " records");
  }
  finish(stream, options);
  return stream;
}

}  // namespace

EventFormat parse_event_format(std::string_view name) {
  if (name == "text" || name == "txt") return EventFormat::text;
  if (name == "bin" || name == "binary") return EventFormat::binary;
  throw ConfigError("unknown event format '" + std::string(name) + "' (expected text|bin)");
}

EventStream read_events(std::istream& in, EventFormat format, const EventReadOptions& options) {
  return format == EventFormat::text ? read_text(in, options) : read_binary(in, options);
}

EventStream read_events(const std::filesystem::path& path, EventFormat format,
                        const EventReadOptions& options) {
  std::ifstream in(path, format == EventFormat::binary ? std::ios::binary : std::ios::in);
  if (!in) throw DataError("cannot open event file " + path.string());
  return read_events(in, format, options);
}

void write_events(const EventStream& stream, std::ostream& out, EventFormat format) {
  stream.validate(false);
  if (format == EventFormat::text) {
    std::array<char, 64> buf{};
    for (const auto& e : stream.records) {
      auto r = std::to_chars(buf.data(), buf.data() + buf.size(), e.t);
      out.write(buf.data(), r.ptr - buf.data());
      out << ' ' << e.x << ' ' << e.y << ' ' << static_cast<int>(e.p) << '\n';
    }
  } else {
    if (stream.dims.width > 65535 || stream.dims.height > 65535) {
      throw DataError("binary event format limits dimensions to 65535");
    }
    if (stream.records.size() > 0xFFFFFFFFULL) throw DataError("too many events for binary format");
    std::array<char, kHeaderBytes> header{};
    std::copy(kMagic.begin(), kMagic.end(), header.begin());
    put_le(header.data() + 4, static_cast<std::uint16_t>(stream.dims.width));
    put_le(header.data() + 6, static_cast<std::uint16_t>(stream.dims.height));
    put_le(header.data() + 8, static_cast<std::uint32_t>(stream.records.size()));
    out.write(header.data(), header.size());
    std::array<char, kRecordBytes> rec{};
    for (const auto& e : stream.records) {
      put_le(rec.data(), std::bit_cast<std::uint64_t>(e.t));
      put_le(rec.data() + 8, e.x);
      put_le(rec.data() + 10, e.y);
      rec[12] = static_cast<char>(e.p);
      out.write(rec.data(), rec.size());
    }
  }
  if (!out) throw DataError("failed writing event stream");
}

void write_events(const EventStream& stream, const std::filesystem::path& path, EventFormat format) {
  std::ofstream out(path, format == EventFormat::binary ? std::ios::binary : std::ios::out);
  if (!out) throw DataError("cannot create event file " + path.string());
  write_events(stream, out, format);
}

}  // namespace v2v
