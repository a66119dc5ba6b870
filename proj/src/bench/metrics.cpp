#include "micropush/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace micropush::bench {

double mean_tracking_error(std::span<const Vec2> trajectory, const planning::Polyline& path) {
  if (trajectory.empty()) return 0.0;
  double sum = 0.0;
  for (const Vec2& p : trajectory) sum += planning::point_polyline_distance(p, path);
  return sum / static_cast<double>(trajectory.size());
}

double arc_length(std::span<const Vec2> trajectory) {
  double s = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) s += distance(trajectory[i - 1], trajectory[i]);
  return s;
}

double actuation_variation(std::span<const double> omega) {
  double s = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i) s += std::abs(omega[i] - omega[i - 1]);
  return s;
}

Interval wilson_interval(int k, int n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double nn = n;
  const double p = k / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(std::span<const double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace micropush::bench
