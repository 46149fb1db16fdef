#include "skalab/kernels.hpp"

#include <atomic>
#include <bit>
#include <cassert>

namespace skalab::kernels {

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#if SKALAB_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

namespace {

std::atomic<int> forced{-1};

}  // namespace

Isa active_isa() noexcept {
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

void force_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept { forced.store(-1, std::memory_order_relaxed); }

namespace scalar {

std::uint64_t popcount(Words a) noexcept {
  std::uint64_t n = 0;
  for (std::uint64_t w : a) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

std::uint64_t and_popcount(Words a, Words b) noexcept {
  assert(a.size() == b.size());
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return n;
}

}  // namespace scalar

std::uint64_t popcount(Words a) noexcept {
#if SKALAB_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::popcount(a);
#endif
  return scalar::popcount(a);
}

std::uint64_t and_popcount(Words a, Words b) noexcept {
#if SKALAB_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::and_popcount(a, b);
#endif
  return scalar::and_popcount(a, b);
}

}  // namespace skalab::kernels
