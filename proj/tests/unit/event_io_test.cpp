#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <sstream>
#include <string>

#include "support/temp_dir.hpp"
#include "v2v/errors.hpp"
#include "v2v/event_io.hpp"
#include "v2v/rng.hpp"

namespace v2v {
namespace {

EventStream read_text(const std::string& text, EventReadOptions opts = {}) {
  std::istringstream in(text);
  return read_events(in, EventFormat::text, opts);
}

std::string to_bytes(const EventStream& s, EventFormat f) {
  std::ostringstream out;
  write_events(s, out, f);
  return out.str();
}

EventStream from_bytes(const std::string& bytes, EventFormat f, EventReadOptions opts = {}) {
  std::istringstream in(bytes);
  return read_events(in, f, opts);
}

TEST(EventFormat, ParsesNames) {
  EXPECT_EQ(parse_event_format("text"), EventFormat::text);
  EXPECT_EQ(parse_event_format("txt"), EventFormat::text);
  EXPECT_EQ(parse_event_format("bin"), EventFormat::binary);
  EXPECT_EQ(parse_event_format("binary"), EventFormat::binary);
  EXPECT_THROW(parse_event_format("hdf5"), ConfigError);
}

TEST(TextEvents, ParsesOneLine) {
  const auto s = read_text("0.5 3 7 -1\n");
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0], (EventRecord{0.5, 3, 7, -1}));
  EXPECT_EQ(s.dims, (Dims{4, 8}));
}

TEST(TextEvents, SkipsBlankAndCommentLines) {
  const auto s = read_text("# t x y p\n\n0.1 0 0 1\n  \n0.2\t1 1 -1\n");
  EXPECT_EQ(s.records.size(), 2u);
}

TEST(TextEvents, BadPolarityReportsLine) {
  try {
    read_text("0.1 0 0 1\n0.2 1 1 2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.record(), 2u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(TextEvents, MalformedFieldsAreRejected) {
  EXPECT_THROW(read_text("abc 0 0 1\n"), ParseError);
  EXPECT_THROW(read_text("0.1 0 0\n"), ParseError);
  EXPECT_THROW(read_text("0.1 0 0 1 9\n"), ParseError);
  EXPECT_THROW(read_text("0.1 -1 0 1\n"), ParseError);
  EXPECT_THROW(read_text("inf 0 0 1\n"), ParseError);
}

TEST(TextEvents, OutOfBoundsWithDeclaredDims) {
  EventReadOptions opts;
  opts.dims = Dims{4, 4};
  EXPECT_THROW(read_text("0.1 4 0 1\n", opts), ParseError);
  EXPECT_NO_THROW(read_text("0.1 3 3 1\n", opts));
}

TEST(TextEvents, UnsortedNeedsSortFlag) {
  const std::string text = "0.5 0 0 1\n0.1 1 0 -1\n";
  EXPECT_THROW(read_text(text), ParseError);
  EventReadOptions opts;
  opts.sort_unsorted = true;
  const auto s = read_text(text, opts);
  ASSERT_EQ(s.records.size(), 2u);
  EXPECT_EQ(s.records[0].t, 0.1);
  EXPECT_EQ(s.records[1].t, 0.5);
}

TEST(BinaryEvents, RecordLayoutIsThirteenBytes) {
  EventStream s;
  s.dims = Dims{640, 480};
  s.records.push_back({0.25, 513, 2, -1});
  const auto bytes = to_bytes(s, EventFormat::binary);
  ASSERT_EQ(bytes.size(), 16u + 13u);
  EXPECT_EQ(bytes.substr(0, 4), "EVT1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 0x80);  // 640 = 0x0280
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 0x02);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1);
  double t = 0.0;
  std::memcpy(&t, bytes.data() + 16, 8);
  EXPECT_EQ(t, 0.25);
  EXPECT_EQ(static_cast<unsigned char>(bytes[24]), 0x01);  // 513 = 0x0201
  EXPECT_EQ(static_cast<unsigned char>(bytes[25]), 0x02);
  EXPECT_EQ(static_cast<unsigned char>(bytes[26]), 2);
  EXPECT_EQ(static_cast<signed char>(bytes[28]), -1);
}

TEST(BinaryEvents, CorruptFilesAreRejected) {
  EventStream s;
  s.dims = Dims{8, 8};
  s.records = {{0.1, 1, 1, 1}, {0.2, 2, 2, -1}};
  const auto good = to_bytes(s, EventFormat::binary);

  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(from_bytes(bad_magic, EventFormat::binary), ParseError);

  try {
    from_bytes(good.substr(0, good.size() - 3), EventFormat::binary);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.record(), 1u);
  }
  EXPECT_THROW(from_bytes(good + "x", EventFormat::binary), ParseError);
  EXPECT_THROW(from_bytes(good.substr(0, 10), EventFormat::binary), ParseError);

  auto bad_pol = good;
  bad_pol[16 + 12] = 3;
  EXPECT_THROW(from_bytes(bad_pol, EventFormat::binary), ParseError);
}

TEST(EventRoundTrip, BothFormatsPreserveRecords) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CounterRng rng({seed, 0, 0, StreamTag::params, 0});
    EventStream s;
    s.dims = Dims{static_cast<int>(1 + rng.below(300)), static_cast<int>(1 + rng.below(300))};
    const auto n = rng.below(500);
    for (std::uint64_t i = 0; i < n; ++i) {
      s.records.push_back({rng.uniform(-1e3, 1e6),
                           static_cast<std::uint16_t>(rng.below(s.dims.width)),
                           static_cast<std::uint16_t>(rng.below(s.dims.height)),
                           static_cast<std::int8_t>(rng.below(2) ? 1 : -1)});
    }
    std::sort(s.records.begin(), s.records.end(), event_less);
    EXPECT_EQ(from_bytes(to_bytes(s, EventFormat::binary), EventFormat::binary), s);
    EventReadOptions opts;
    opts.dims = s.dims;
    EXPECT_EQ(from_bytes(to_bytes(s, EventFormat::text), EventFormat::text, opts), s);
  }
}

TEST(EventRoundTrip, FilesOnDisk) {
  testing::TempDir dir;
  EventStream s;
  s.dims = Dims{3, 3};
  s.records = {{0.0, 0, 0, 1}, {1.0 / 3.0, 2, 1, -1}};
  write_events(s, dir.path() / "e.bin", EventFormat::binary);
  EXPECT_EQ(read_events(dir.path() / "e.bin", EventFormat::binary), s);
  EXPECT_THROW(read_events(dir.path() / "missing.bin", EventFormat::binary), DataError);
}

}  // namespace
}  // namespace v2v
