#pragma once

#include <cstdint>
#include <string_view>

#include "v2v/types.hpp"

namespace v2v {

enum class OracleRegime {
  equal_thresholds,  // c_plus == c_minus, unconstrained walks
  monotonic,         // independent thresholds, per-pixel monotonic walks
  free,              // independent thresholds, unconstrained walks
};

OracleRegime parse_oracle_regime(std::string_view name);
const char* to_string(OracleRegime regime) noexcept;

struct OracleCheckConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  Dims size{8, 8};
  int frames = 6;             // B + 1
  OracleRegime regime = OracleRegime::equal_thresholds;
  double step_sigma = 0.5;    // std-dev of per-frame log-luminance steps
  double sigma_bg = 0.0;      // background noise, shared by both paths
  unsigned workers = 1;

  void validate() const;
};

struct OracleCheckReport {
  std::uint64_t trials = 0;
  std::uint64_t bins_compared = 0;
  std::uint64_t mismatched_bins = 0;
  std::int64_t max_abs_deviation = 0;
  std::uint64_t events = 0;
  bool exact_regime = false;

  /// Exactness regimes pass only with zero deviation; the free regime
  /// is informational and always passes.
  bool passed() const noexcept { return !exact_regime || max_abs_deviation == 0; }
};

/// Randomized comparison of the frame-step voxel path against the event
/// oracle binned into a discrete voxel.
OracleCheckReport run_oracle_check(const OracleCheckConfig& config);

}  // namespace v2v
