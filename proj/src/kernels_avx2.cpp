// Built with -mavx2 -mfma; only reached after the runtime cpu check.
#include <immintrin.h>

#include <cmath>
#include <limits>

#include "fatbots/kernels.hpp"

namespace fatbots::kernels {

void segment_clearance_avx2(SegmentSoA segs, PointSoA centers, double* out) {
  const std::size_t full = segs.count & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t s = 0; s < full; s += 4) {
    const __m256d ax = _mm256_loadu_pd(segs.px + s);
    const __m256d ay = _mm256_loadu_pd(segs.py + s);
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(segs.qx + s), ax);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(segs.qy + s), ay);
    // no fma here: keeps rounding identical to the scalar reference
    const __m256d l2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d nz = _mm256_cmp_pd(l2, zero, _CMP_GT_OQ);
    const __m256d inv = _mm256_and_pd(nz, _mm256_div_pd(one, l2));
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < centers.count; ++c) {
      const __m256d wx = _mm256_sub_pd(_mm256_set1_pd(centers.x[c]), ax);
      const __m256d wy = _mm256_sub_pd(_mm256_set1_pd(centers.y[c]), ay);
      __m256d t = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(wx, dx), _mm256_mul_pd(wy, dy)), inv);
      t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
      const __m256d ex = _mm256_sub_pd(wx, _mm256_mul_pd(t, dx));
      const __m256d ey = _mm256_sub_pd(wy, _mm256_mul_pd(t, dy));
      best = _mm256_min_pd(best, _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
    }
    _mm256_storeu_pd(out + s, _mm256_sqrt_pd(best));
  }
  if (full < segs.count) {
    SegmentSoA tail{segs.px + full, segs.py + full, segs.qx + full, segs.qy + full, segs.count - full};
    segment_clearance_scalar(tail, centers, out + full);
  }
}

}  // namespace fatbots::kernels
