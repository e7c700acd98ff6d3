#include <arm_neon.h>

#include <algorithm>

#include "credal/kernels.hpp"

namespace credal::kernels::neon {

double sum(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double clamp_sum(const double* lo, const double* hi, std::size_t n, double level) {
  const float64x2_t c = vdupq_n_f64(level);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vmaxq_f64(c, vld1q_f64(lo + i));
    v = vminq_f64(v, vld1q_f64(hi + i));
    acc = vaddq_f64(acc, v);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += std::min(std::max(level, lo[i]), hi[i]);
  return s;
}

void min_max_update(const double* row, double* lo, double* hi, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r = vld1q_f64(row + i);
    vst1q_f64(lo + i, vminq_f64(vld1q_f64(lo + i), r));
    vst1q_f64(hi + i, vmaxq_f64(vld1q_f64(hi + i), r));
  }
  for (; i < n; ++i) {
    lo[i] = std::min(lo[i], row[i]);
    hi[i] = std::max(hi[i], row[i]);
  }
}

void accumulate(const double* row, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(row + i)));
  for (; i < n; ++i) acc[i] += row[i];
}

}  // namespace credal::kernels::neon
