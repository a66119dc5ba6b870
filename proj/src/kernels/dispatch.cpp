#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "variants.hpp"

namespace micropush::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(MICROPUSH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("MICROPUSH_ISA")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  return isa == Isa::Scalar || (isa == Isa::Avx2 && cpu_has_avx2());
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
#if defined(MICROPUSH_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_table();
#endif
  (void)isa;
  return detail::scalar_table();
}

const KernelTable& active_table() { return table(active_isa()); }

void disk_gaps(double cx, double cy, double r, std::span<const double> xs,
               std::span<const double> ys, std::span<const double> rs, std::span<double> out) {
  active_table().disk_gaps(cx, cy, r, xs.data(), ys.data(), rs.data(), out.data(), xs.size());
}

void points_segment_dist2(double ax, double ay, double bx, double by, std::span<const double> px,
                          std::span<const double> py, std::span<double> out) {
  active_table().points_segment_dist2(ax, ay, bx, by, px.data(), py.data(), out.data(),
                                      px.size());
}

double point_segments_min_dist2(double px, double py, const SegmentsSoA& segs,
                                std::size_t* argmin) {
  return active_table().point_segments_min_dist2(px, py, segs.ax.data(), segs.ay.data(),
                                                 segs.bx.data(), segs.by.data(), segs.size(),
                                                 argmin);
}

void mark_disk_row(double cx, double cy, double r, double row_y, std::span<std::uint8_t> row) {
  active_table().mark_disk_row(cx, cy, r * r, row_y, row.data(), row.size());
}

}  // namespace micropush::kernels
