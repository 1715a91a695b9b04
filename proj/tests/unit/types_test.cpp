#include <gtest/gtest.h>

#include "v2v/errors.hpp"
#include "v2v/sensor.hpp"
#include "v2v/types.hpp"

namespace v2v {
namespace {

TEST(Grid, RejectsWrongDataLength) {
  EXPECT_THROW(Frame(Dims{2, 2}, std::vector<std::uint8_t>(3)), DataError);
  EXPECT_THROW(Frame(Dims{0, 2}), DataError);
  const Frame f(Dims{3, 2}, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});
  EXPECT_EQ(f(2, 1), 6);
  EXPECT_EQ(f(0, 1), 4);
}

TEST(FrameSequence, NeedsTwoFramesOfOneSize) {
  FrameSequence seq;
  seq.frames.emplace_back(Dims{2, 2});
  EXPECT_THROW(seq.validate(), DataError);
  seq.frames.emplace_back(Dims{2, 3});
  EXPECT_THROW(seq.validate(), DataError);
  seq.frames.back() = Frame(Dims{2, 2});
  EXPECT_NO_THROW(seq.validate());
}

TEST(SensorParams, ValidatesPositivity) {
  SensorParams p;
  EXPECT_NO_THROW(p.validate());
  p.c_plus = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p.c_plus = 0.1;
  p.sigma_bg = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p.sigma_bg = 0.0;
  p.hot_pixels.dims = {2, 2};
  p.hot_pixels.entries.push_back({2, 0, 0.5});
  EXPECT_THROW(p.validate(), ConfigError);
  p.hot_pixels.entries.back() = {1, 1, 0.0};
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(ValueSemantics, SteppingACopyLeavesTheOriginal) {
  ResidualState original(Dims{2, 1}, 0.05);
  const ResidualState snapshot = original;
  ResidualState copy = original;
  LogDelta dlog(Dims{2, 1}, 0.3);
  SensorParams p;
  p.c_plus = p.c_minus = 0.1;
  auto result = step(copy, dlog, p, RngKey{0, 0, 0, StreamTag::noise, 1});
  copy = result.residual;
  EXPECT_EQ(original, snapshot);
  EXPECT_NE(copy, original);
}

TEST(EventStream, ValidateReportsOffendingRecord) {
  EventStream s;
  s.dims = {4, 4};
  s.records = {{0.1, 0, 0, 1}, {0.05, 1, 1, -1}};
  try {
    s.validate(true);
    FAIL() << "unsorted stream accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.record(), 1u);
  }
  s.records = {{1.5, 0, 0, 1}};
  EXPECT_NO_THROW(s.validate(false));
  EXPECT_THROW(s.validate(true), ParseError);
}

}  // namespace
}  // namespace v2v
