#pragma once

// Data-parallel inner loops shared by the simulator, the planners and the
// metrics. Every kernel has a scalar reference implementation and, on x86-64,
// an AVX2 variant picked at runtime. The variants use only IEEE-exact lane
// operations (add, sub, mul, div, sqrt, min, max) in the same order as the
// scalar code, so their results are bitwise identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace micropush::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// The variant the dispatching entry points currently use. Chosen once from
/// CPU features; MICROPUSH_ISA=scalar in the environment forces the reference.
Isa active_isa();
/// Overrides the dispatch choice (tests, benchmarks). Throws if unavailable.
void set_active_isa(Isa isa);

/// Structure-of-arrays view of a polyline's segments: segment k runs from
/// (ax[k], ay[k]) to (bx[k], by[k]).
struct SegmentsSoA {
  std::span<const double> ax, ay, bx, by;
  std::size_t size() const { return ax.size(); }
};

/// Variant table. All pointers of one table belong to the same ISA.
struct KernelTable {
  /// out[k] = |p_k - c| - (r + rs[k]), the surface gap between a disk at c and disk k.
  void (*disk_gaps)(double cx, double cy, double r, const double* xs, const double* ys,
                    const double* rs, double* out, std::size_t n);
  /// out[k] = squared distance from point k to segment a-b.
  void (*points_segment_dist2)(double ax, double ay, double bx, double by, const double* px,
                               const double* py, double* out, std::size_t n);
  /// Minimum over segments of the squared distance from (px, py); writes the arg-min.
  double (*point_segments_min_dist2)(double px, double py, const double* ax, const double* ay,
                                     const double* bx, const double* by, std::size_t n,
                                     std::size_t* argmin);
  /// Sets out[x] = 1 for pixels x in [0, n) of one raster row whose centers
  /// (x + 0.5, row_y) lie within distance r of (cx, cy). Never clears.
  void (*mark_disk_row)(double cx, double cy, double r2, double row_y, std::uint8_t* out,
                        std::size_t n);
};

const KernelTable& table(Isa isa);
const KernelTable& active_table();

// Dispatching conveniences over std::span.

void disk_gaps(double cx, double cy, double r, std::span<const double> xs,
               std::span<const double> ys, std::span<const double> rs, std::span<double> out);

void points_segment_dist2(double ax, double ay, double bx, double by, std::span<const double> px,
                          std::span<const double> py, std::span<double> out);

double point_segments_min_dist2(double px, double py, const SegmentsSoA& segs,
                                std::size_t* argmin = nullptr);

void mark_disk_row(double cx, double cy, double r, double row_y, std::span<std::uint8_t> row);

}  // namespace micropush::kernels
