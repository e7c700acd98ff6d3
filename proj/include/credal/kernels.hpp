#pragma once

// Data-parallel inner loops used by the interval and entropy code.
//
// Every kernel has a scalar reference implementation plus SIMD variants
// (AVX2 on x86-64, NEON on aarch64). The variant is chosen once at runtime
// from CPU features; tests can pin a variant with force_isa() and check it
// against the scalar reference.

#include <cstddef>
#include <string_view>

namespace credal::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  // sum of x[0..n)
  double (*sum)(const double* x, std::size_t n);
  // sum_k clamp(level, lo[k], hi[k])
  double (*clamp_sum)(const double* lo, const double* hi, std::size_t n, double level);
  // lo[k] = min(lo[k], row[k]); hi[k] = max(hi[k], row[k])
  void (*min_max_update)(const double* row, double* lo, double* hi, std::size_t n);
  // acc[k] += row[k]
  void (*accumulate)(const double* row, double* acc, std::size_t n);
};

bool isa_supported(Isa isa) noexcept;

/// Best supported ISA on this CPU.
Isa detected_isa() noexcept;

/// ISA currently in use.
Isa active_isa() noexcept;

/// Pins the kernel table to `isa`. Returns false (and changes nothing) if the
/// CPU or build does not support it.
bool force_isa(Isa isa) noexcept;

/// Kernel table for a specific ISA, or nullptr when unsupported.
const KernelTable* table_for(Isa isa) noexcept;

/// Kernel table currently in use.
const KernelTable& active() noexcept;

namespace scalar {
double sum(const double* x, std::size_t n);
double clamp_sum(const double* lo, const double* hi, std::size_t n, double level);
void min_max_update(const double* row, double* lo, double* hi, std::size_t n);
void accumulate(const double* row, double* acc, std::size_t n);
}  // namespace scalar

namespace avx2 {
double sum(const double* x, std::size_t n);
double clamp_sum(const double* lo, const double* hi, std::size_t n, double level);
void min_max_update(const double* row, double* lo, double* hi, std::size_t n);
void accumulate(const double* row, double* acc, std::size_t n);
}  // namespace avx2

namespace neon {
double sum(const double* x, std::size_t n);
double clamp_sum(const double* lo, const double* hi, std::size_t n, double level);
void min_max_update(const double* row, double* lo, double* hi, std::size_t n);
void accumulate(const double* row, double* acc, std::size_t n);
}  // namespace neon

}  // namespace credal::kernels
