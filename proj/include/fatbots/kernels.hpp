#pragma once

#include <cstddef>
#include <string_view>

// Batch clearance kernels used by the visibility sweep. The scalar versions are
// the reference; the AVX2 versions must agree with them to rounding.
namespace fatbots::kernels {

struct SegmentSoA {
  const double* px;
  const double* py;
  const double* qx;
  const double* qy;
  std::size_t count;
};

struct PointSoA {
  const double* x;
  const double* y;
  std::size_t count;
};

// out[s] = min over c of distance(center c, segment s); +inf when no centers.
void segment_clearance_scalar(SegmentSoA segs, PointSoA centers, double* out);
void segment_clearance_avx2(SegmentSoA segs, PointSoA centers, double* out);

// Runtime-dispatched entry point.
void segment_clearance(SegmentSoA segs, PointSoA centers, double* out);

bool avx2_supported();
// "avx2" or "scalar"; FATBOTS_SIMD=scalar forces the reference path.
std::string_view active_variant();

}  // namespace fatbots::kernels
