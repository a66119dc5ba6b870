#pragma once

#include <span>
#include <vector>

#include "micropush/core/vec2.hpp"
#include "micropush/planning/polyline.hpp"

namespace micropush::bench {

/// Mean point-to-polyline distance of the trajectory [same unit as input].
/// Zero for an empty trajectory.
double mean_tracking_error(std::span<const Vec2> trajectory, const planning::Polyline& path);

/// Sum of segment lengths of a point sequence.
double arc_length(std::span<const Vec2> trajectory);

/// E = sum_t |omega_t - omega_{t-1}|; zero for fewer than two commands.
double actuation_variation(std::span<const double> omega);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for k successes out of n trials.
Interval wilson_interval(int k, int n, double z = 1.96);

/// Median of the values (mean of the middle two for even counts); NaN when empty.
double median(std::vector<double> v);
double mean(std::span<const double> v);

}  // namespace micropush::bench
