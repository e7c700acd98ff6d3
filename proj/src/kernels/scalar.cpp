#include "credal/kernels.hpp"

#include <algorithm>

namespace credal::kernels::scalar {

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double clamp_sum(const double* lo, const double* hi, std::size_t n, double level) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::min(std::max(level, lo[i]), hi[i]);
  return s;
}

void min_max_update(const double* row, double* lo, double* hi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::min(lo[i], row[i]);
    hi[i] = std::max(hi[i], row[i]);
  }
}

void accumulate(const double* row, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += row[i];
}

}  // namespace credal::kernels::scalar
