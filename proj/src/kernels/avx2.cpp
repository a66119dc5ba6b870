// AVX2 variants. Compiled with -mavx2 (and no FMA) into this translation unit
// only; reached solely through the dispatch table after a CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "variants.hpp"

namespace micropush::kernels::detail {

namespace {

inline __m256d segment_dist2_v(__m256d ax, __m256d ay, __m256d ex, __m256d ey, __m256d len2,
                               __m256d px, __m256d py) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d dx = _mm256_sub_pd(px, ax);
  const __m256d dy = _mm256_sub_pd(py, ay);
  __m256d t = _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(dx, ex), _mm256_mul_pd(dy, ey)), len2);
  t = _mm256_blendv_pd(zero, t, _mm256_cmp_pd(len2, zero, _CMP_GT_OQ));
  t = _mm256_max_pd(t, zero);
  t = _mm256_min_pd(t, one);
  const __m256d rx = _mm256_sub_pd(px, _mm256_add_pd(ax, _mm256_mul_pd(t, ex)));
  const __m256d ry = _mm256_sub_pd(py, _mm256_add_pd(ay, _mm256_mul_pd(t, ey)));
  return _mm256_add_pd(_mm256_mul_pd(rx, rx), _mm256_mul_pd(ry, ry));
}

void disk_gaps(double cx, double cy, double r, const double* xs, const double* ys,
               const double* rs, double* out, std::size_t n) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  const __m256d vr = _mm256_set1_pd(r);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + k), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + k), vcy);
    const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    _mm256_storeu_pd(out + k, _mm256_sub_pd(d, _mm256_add_pd(vr, _mm256_loadu_pd(rs + k))));
  }
  for (; k < n; ++k) {
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
  const __m256d vax = _mm256_set1_pd(ax), vay = _mm256_set1_pd(ay);
  const __m256d vex = _mm256_set1_pd(ex), vey = _mm256_set1_pd(ey);
  const __m256d vlen2 = _mm256_set1_pd(len2);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out + k, segment_dist2_v(vax, vay, vex, vey, vlen2, _mm256_loadu_pd(px + k),
                                              _mm256_loadu_pd(py + k)));
  }
  if (k < n) {
    alignas(32) double tx[4] = {0, 0, 0, 0}, ty[4] = {0, 0, 0, 0}, to[4];
    for (std::size_t i = k; i < n; ++i) {
      tx[i - k] = px[i];
      ty[i - k] = py[i];
    }
    _mm256_store_pd(to, segment_dist2_v(vax, vay, vex, vey, vlen2, _mm256_load_pd(tx),
                                        _mm256_load_pd(ty)));
    for (std::size_t i = k; i < n; ++i) out[i] = to[i - k];
  }
}

double point_segments_min_dist2(double px, double py, const double* ax, const double* ay,
                                const double* bx, const double* by, std::size_t n,
                                std::size_t* argmin) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  double best = INFINITY;
  std::size_t best_k = 0;
  alignas(32) double lanes[4];
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vax = _mm256_loadu_pd(ax + k);
    const __m256d vay = _mm256_loadu_pd(ay + k);
    const __m256d ex = _mm256_sub_pd(_mm256_loadu_pd(bx + k), vax);
    const __m256d ey = _mm256_sub_pd(_mm256_loadu_pd(by + k), vay);
    const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    _mm256_store_pd(lanes, segment_dist2_v(vax, vay, ex, ey, len2, vpx, vpy));
    for (int i = 0; i < 4; ++i) {
      if (lanes[i] < best) {
        best = lanes[i];
        best_k = k + static_cast<std::size_t>(i);
      }
    }
  }
  for (; k < n; ++k) {
    const double ex = bx[k] - ax[k];
    const double ey = by[k] - ay[k];
    const double len2 = ex * ex + ey * ey;
    const double dx = px - ax[k];
    const double dy = py - ay[k];
    double t = (dx * ex + dy * ey) / len2;
    t = len2 > 0.0 ? t : 0.0;
    t = t > 0.0 ? t : 0.0;
    t = t < 1.0 ? t : 1.0;
    const double rx = px - (ax[k] + t * ex);
    const double ry = py - (ay[k] + t * ey);
    const double d2 = rx * rx + ry * ry;
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
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vdy2 = _mm256_set1_pd(dy2);
  const __m256d vr2 = _mm256_set1_pd(r2);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d step = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  std::size_t x = 0;
  for (; x + 4 <= n; x += 4) {
    const __m256d xs = _mm256_add_pd(_mm256_add_pd(_mm256_set1_pd(static_cast<double>(x)), step), half);
    const __m256d dx = _mm256_sub_pd(xs, vcx);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), vdy2);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, vr2, _CMP_LE_OQ));
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) out[x + static_cast<std::size_t>(i)] = 1;
  }
  for (; x < n; ++x) {
    const double dx = (static_cast<double>(x) + 0.5) - cx;
    if (dx * dx + dy2 <= r2) out[x] = 1;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{&disk_gaps, &points_segment_dist2, &point_segments_min_dist2,
                             &mark_disk_row};
  return t;
}

}  // namespace micropush::kernels::detail
