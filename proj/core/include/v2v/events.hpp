#pragma once

#include <span>

#include "v2v/types.hpp"

namespace v2v {

/// Bin holding timestamp t under half-open bins [b/B, (b+1)/B); t == 1
/// lands in the last bin. Boundaries are compared as the doubles b/B, so
/// any t the function maps to bin b satisfies b/B <= t < (b+1)/B exactly.
int bin_index(double t, int bins) noexcept;

/// Reference event simulator: log luminance is interpolated linearly between
/// frames (frame i at t = i/B) and an event fires at every exact crossing of
/// reference + c_plus or reference - c_minus; the reference then moves by
/// that threshold. `perturbations`, when given, holds one grid per step
/// (noise drawn elsewhere) that is spread over the step like the frame
/// difference; hot pixels are added every step the same way.
EventStream oracle_simulate(std::span<const LogLuminance> log_frames, const SensorParams& params,
                            const ResidualState& initial,
                            std::span<const LogDelta> perturbations = {});

DiscreteVoxel discrete_voxel_from_events(const EventStream& stream, int bins);

InterpolatedVoxel interpolated_voxel_from_events(const EventStream& stream, int bins);

/// Net polarity per pixel over events with t1 <= t < t2.
CountGrid event_stack(const EventStream& stream, double t1, double t2);

/// Keeps events with t0 <= t <= t1 and rescales their timestamps to [0,1].
EventStream normalize_window(const EventStream& stream, double t0, double t1);

}  // namespace v2v
