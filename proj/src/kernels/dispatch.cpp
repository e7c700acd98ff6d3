#include <atomic>

#include "credal/kernels.hpp"

namespace credal::kernels {

namespace {

constexpr KernelTable kScalar{scalar::sum, scalar::clamp_sum, scalar::min_max_update,
                              scalar::accumulate};
#if defined(CREDAL_HAVE_AVX2)
constexpr KernelTable kAvx2{avx2::sum, avx2::clamp_sum, avx2::min_max_update, avx2::accumulate};
#endif
#if defined(CREDAL_HAVE_NEON)
constexpr KernelTable kNeon{neon::sum, neon::clamp_sum, neon::min_max_update, neon::accumulate};
#endif

struct Selection {
  const KernelTable* table;
  Isa isa;
};

Selection initial_selection() noexcept {
  const Isa isa = detected_isa();
  return {table_for(isa), isa};
}

std::atomic<const KernelTable*>& active_table() noexcept {
  static std::atomic<const KernelTable*> table{initial_selection().table};
  return table;
}

std::atomic<Isa>& active_isa_slot() noexcept {
  static std::atomic<Isa> isa{initial_selection().isa};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CREDAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(CREDAL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

const KernelTable* table_for(Isa isa) noexcept {
  if (!isa_supported(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar: return &kScalar;
#if defined(CREDAL_HAVE_AVX2)
    case Isa::Avx2: return &kAvx2;
#endif
#if defined(CREDAL_HAVE_NEON)
    case Isa::Neon: return &kNeon;
#endif
    default: return nullptr;
  }
}

Isa active_isa() noexcept { return active_isa_slot().load(std::memory_order_acquire); }

bool force_isa(Isa isa) noexcept {
  const KernelTable* table = table_for(isa);
  if (table == nullptr) return false;
  active_table().store(table, std::memory_order_release);
  active_isa_slot().store(isa, std::memory_order_release);
  return true;
}

const KernelTable& active() noexcept { return *active_table().load(std::memory_order_acquire); }

}  // namespace credal::kernels
