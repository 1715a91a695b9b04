#include "v2v/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "v2v/errors.hpp"
#include "v2v/events.hpp"
#include "v2v/parallel.hpp"
#include "v2v/rng.hpp"
#include "v2v/sensor.hpp"

namespace v2v {

OracleRegime parse_oracle_regime(std::string_view name) {
  if (name == "equal-thresholds" || name == "equal") return OracleRegime::equal_thresholds;
  if (name == "monotonic") return OracleRegime::monotonic;
  if (name == "free") return OracleRegime::free;
  throw ConfigError("unknown regime '" + std::string(name) +
                    "' (expected equal-thresholds|monotonic|free)");
}

const char* to_string(OracleRegime regime) noexcept {
  switch (regime) {
    case OracleRegime::equal_thresholds: return "equal-thresholds";
    case OracleRegime::monotonic: return "monotonic";
    case OracleRegime::free: return "free";
  }
  return "unknown";
}

void OracleCheckConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!size.valid()) throw ConfigError("size must be positive");
  if (frames < 2) throw ConfigError("frames must be >= 2");
  if (!(step_sigma >= 0.0)) throw ConfigError("step sigma must be >= 0");
  if (!(sigma_bg >= 0.0)) throw ConfigError("sigma_bg must be >= 0");
}

namespace {

struct TrialOutcome {
  std::uint64_t mismatched = 0;
  std::int64_t max_dev = 0;
  std::uint64_t events = 0;
};

TrialOutcome run_trial(const OracleCheckConfig& config, std::uint64_t trial) {
  RngKey key{config.seed, trial, 0, StreamTag::params, 0};
  CounterRng rng(key);

  SensorParams params;
  params.c_plus = rng.uniform(0.1, 1.0);
  params.c_minus =
      config.regime == OracleRegime::equal_thresholds ? params.c_plus : rng.uniform(0.1, 1.0);
  params.sigma_bg = config.sigma_bg;
  params.hot_pixels.dims = config.size;

  const Dims dims = config.size;
  std::vector<LogLuminance> logs;
  logs.reserve(static_cast<std::size_t>(config.frames));
  logs.emplace_back(dims);
  std::vector<double> direction(dims.size(), 1.0);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    logs[0][i] = rng.uniform(std::log(0.01), 0.0);
    direction[i] = (rng() >> 63) ? 1.0 : -1.0;
  }
  for (int f = 1; f < config.frames; ++f) {
    LogLuminance next = logs.back();
    for (std::size_t i = 0; i < dims.size(); ++i) {
      double stepv = config.step_sigma * rng.normal();
      if (config.regime == OracleRegime::monotonic) stepv = direction[i] * std::fabs(stepv);
      next[i] += stepv;
    }
    logs.push_back(std::move(next));
  }

  const ResidualState initial = init_residual(params, dims, key.with_tag(StreamTag::init));
  const RngKey noise_key = key.with_tag(StreamTag::noise);
  const auto fast = v2v_voxel(std::span<const LogLuminance>(logs), params, initial, noise_key);

  std::vector<LogDelta> noise;
  if (params.sigma_bg > 0.0) {
    for (int b = 0; b < config.frames - 1; ++b) {
      noise.push_back(sample_noise(params.sigma_bg, dims,
                                   noise_key.with_frame(noise_key.frame_index + b + 1)));
    }
  }
  const EventStream events = oracle_simulate(logs, params, initial, noise);
  const DiscreteVoxel reference = discrete_voxel_from_events(events, config.frames - 1);

  TrialOutcome out;
  out.events = events.records.size();
  const auto a = fast.voxel.values();
  const auto b = reference.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t dev = std::llabs(static_cast<std::int64_t>(a[i]) - b[i]);
    if (dev != 0) ++out.mismatched;
    out.max_dev = std::max(out.max_dev, dev);
  }
  return out;
}

}  // namespace

OracleCheckReport run_oracle_check(const OracleCheckConfig& config) {
  config.validate();
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
  parallel_for(outcomes.size(), config.workers,
               [&](std::size_t t) { outcomes[t] = run_trial(config, t); });

  OracleCheckReport report;
  report.exact_regime = config.regime != OracleRegime::free;
  report.trials = outcomes.size();
  report.bins_compared = outcomes.size() * static_cast<std::uint64_t>(config.frames - 1) * config.size.size();
  for (const auto& o : outcomes) {
    report.mismatched_bins += o.mismatched;
    report.max_abs_deviation = std::max(report.max_abs_deviation, o.max_dev);
    report.events += o.events;
  }
  return report;
}

}  // namespace v2v
