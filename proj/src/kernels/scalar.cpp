// Reference kernels. The AVX2 variants must reproduce these operation by
// operation; keep the arithmetic order in sync when editing either side.

#include <cmath>

#include "variants.hpp"

namespace micropush::kernels::detail {

namespace {

inline double segment_dist2(double ax, double ay, double ex, double ey, double len2, double px,
                            double py) {
  const double dx = px - ax;
  const double dy = py - ay;
  double t = (dx * ex + dy * ey) / len2;
  t = len2 > 0.0 ? t : 0.0;
  t = t > 0.0 ? t : 0.0;
  t = t < 1.0 ? t : 1.0;
  const double rx = px - (ax + t * ex);
  const double ry = py - (ay + t * ey);
  return rx * rx + ry * ry;
}

void disk_gaps(double cx, double cy, double r, const double* xs, const double* ys,
               const double* rs, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = xs[k] - cx;
    const double dy = ys[k] - cy;
    out[k] = std::sqrt(dx * dx + dy * dy) - (r + rs[k]);
  }
}

void points_segment_dist2(double ax, double ay, double bx, double by, const double* px,
                          const double* py, double* out, std::size_t n) {
  const double ex = bx - ax;
  const double ey = by - ay;
  const double len2 = ex * ex + ey * ey;
  for (std::size_t k = 0; k < n; ++k) out[k] = segment_dist2(ax, ay, ex, ey, len2, px[k], py[k]);
}

double point_segments_min_dist2(double px, double py, const double* ax, const double* ay,
                                const double* bx, const double* by, std::size_t n,
                                std::size_t* argmin) {
  double best = INFINITY;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ex = bx[k] - ax[k];
    const double ey = by[k] - ay[k];
    const double len2 = ex * ex + ey * ey;
    const double d2 = segment_dist2(ax[k], ay[k], ex, ey, len2, px, py);
    if (d2 < best) {
      best = d2;
      best_k = k;
    }
  }
  if (argmin) *argmin = best_k;
  return best;
}

void mark_disk_row(double cx, double cy, double r2, double row_y, std::uint8_t* out,
                   std::size_t n) {
  const double dy = row_y - cy;
  const double dy2 = dy * dy;
  for (std::size_t x = 0; x < n; ++x) {
    const double dx = (static_cast<double>(x) + 0.5) - cx;
    if (dx * dx + dy2 <= r2) out[x] = 1;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{&disk_gaps, &points_segment_dist2, &point_segments_min_dist2,
                             &mark_disk_row};
  return t;
}

}  // namespace micropush::kernels::detail
