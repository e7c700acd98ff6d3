#include <cmath>
#include <random>
#include <vector>

#include "credal/kernels.hpp"
#include "doctest.h"

using namespace credal::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<Isa> simd_variants() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar is always available and detection is consistent") {
  CHECK(isa_supported(Isa::Scalar));
  CHECK(table_for(Isa::Scalar) != nullptr);
  CHECK(isa_supported(detected_isa()));
  MESSAGE("detected isa: " << to_string(detected_isa()));
}

TEST_CASE("force_isa switches the active table") {
  const Isa before = active_isa();
  CHECK(force_isa(Isa::Scalar));
  CHECK(active_isa() == Isa::Scalar);
  CHECK(&active() == table_for(Isa::Scalar));
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!isa_supported(isa)) {
      CHECK_FALSE(force_isa(isa));
      CHECK(active_isa() == Isa::Scalar);
      CHECK(table_for(isa) == nullptr);
    }
  }
  CHECK(force_isa(before));
}

TEST_CASE("SIMD kernels match the scalar reference") {
  std::mt19937_64 rng(11);
  const KernelTable& ref = *table_for(Isa::Scalar);
  for (Isa isa : simd_variants()) {
    const KernelTable& simd = *table_for(isa);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 100, 1000, 1001}) {
      CAPTURE(n);
      const auto x = random_vec(rng, n);
      // reassociated reduction: equal up to rounding
      const double s_ref = ref.sum(x.data(), n);
      const double s_simd = simd.sum(x.data(), n);
      CHECK(std::abs(s_ref - s_simd) <= 1e-14 * std::max(1.0, std::abs(s_ref)));

      auto lo = random_vec(rng, n);
      auto hi = random_vec(rng, n);
      for (std::size_t k = 0; k < n; ++k) {
        if (lo[k] > hi[k]) std::swap(lo[k], hi[k]);
      }
      for (double level : {-1.0, 0.0, 0.25, 0.5, 0.9, 2.0}) {
        const double a = ref.clamp_sum(lo.data(), hi.data(), n, level);
        const double b = simd.clamp_sum(lo.data(), hi.data(), n, level);
        CHECK(std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a)));
      }

      // elementwise kernels are exact
      auto lo1 = lo, hi1 = hi, lo2 = lo, hi2 = hi;
      ref.min_max_update(x.data(), lo1.data(), hi1.data(), n);
      simd.min_max_update(x.data(), lo2.data(), hi2.data(), n);
      CHECK(lo1 == lo2);
      CHECK(hi1 == hi2);

      auto acc1 = lo, acc2 = lo;
      ref.accumulate(x.data(), acc1.data(), n);
      simd.accumulate(x.data(), acc2.data(), n);
      CHECK(acc1 == acc2);
    }
  }
}

TEST_CASE("clamp_sum is non-decreasing in the level") {
  std::mt19937_64 rng(5);
  auto lo = random_vec(rng, 37);
  auto hi = random_vec(rng, 37);
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo[k] > hi[k]) std::swap(lo[k], hi[k]);
  }
  const KernelTable& t = active();
  double prev = t.clamp_sum(lo.data(), hi.data(), lo.size(), -0.5);
  for (double c = -0.5; c <= 1.5; c += 0.01) {
    const double v = t.clamp_sum(lo.data(), hi.data(), lo.size(), c);
    CHECK(v >= prev);
    prev = v;
  }
}
