#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "fatbots/kernels.hpp"

namespace fatbots::kernels {

void segment_clearance_scalar(SegmentSoA segs, PointSoA centers, double* out) {
  for (std::size_t s = 0; s < segs.count; ++s) {
    const double ax = segs.px[s], ay = segs.py[s];
    const double dx = segs.qx[s] - ax, dy = segs.qy[s] - ay;
    const double l2 = dx * dx + dy * dy;
    const double inv = l2 > 0 ? 1.0 / l2 : 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.count; ++c) {
      const double wx = centers.x[c] - ax, wy = centers.y[c] - ay;
      double t = (wx * dx + wy * dy) * inv;
      t = std::min(std::max(t, 0.0), 1.0);
      const double ex = wx - t * dx, ey = wy - t * dy;
      best = std::min(best, ex * ex + ey * ey);
    }
    out[s] = std::sqrt(best);
  }
}

#if defined(__x86_64__) || defined(__i386__)
bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
bool avx2_supported() { return false; }
void segment_clearance_avx2(SegmentSoA segs, PointSoA centers, double* out) {
  segment_clearance_scalar(segs, centers, out);
}
#endif

namespace {
using Kernel = void (*)(SegmentSoA, PointSoA, double*);

Kernel pick() {
  const char* env = std::getenv("FATBOTS_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return segment_clearance_scalar;
  return avx2_supported() ? segment_clearance_avx2 : segment_clearance_scalar;
}

Kernel selected() {
  static const Kernel k = pick();
  return k;
}
}  // namespace

void segment_clearance(SegmentSoA segs, PointSoA centers, double* out) { selected()(segs, centers, out); }

std::string_view active_variant() {
  return selected() == segment_clearance_avx2 && avx2_supported() ? "avx2" : "scalar";
}

}  // namespace fatbots::kernels
