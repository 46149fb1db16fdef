#pragma once

// Bitset population-count kernels used by the incidence-graph routines.
// A scalar reference implementation is always built; an AVX2 variant is built
// on x86-64 and selected at runtime when the CPU supports it.

#include <cstdint>
#include <span>
#include <string_view>

namespace skalab::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

bool avx2_available() noexcept;

/// Currently dispatched implementation (best available unless forced).
Isa active_isa() noexcept;

/// Pins dispatch to `isa` (falls back to scalar if unavailable). Test hook.
void force_isa(Isa isa) noexcept;
void reset_isa() noexcept;

using Words = std::span<const std::uint64_t>;

std::uint64_t popcount(Words a) noexcept;
/// popcount(a & b); spans must have equal length.
std::uint64_t and_popcount(Words a, Words b) noexcept;

namespace scalar {
std::uint64_t popcount(Words a) noexcept;
std::uint64_t and_popcount(Words a, Words b) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SKALAB_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::uint64_t popcount(Words a) noexcept;
std::uint64_t and_popcount(Words a, Words b) noexcept;
}  // namespace avx2
#else
#define SKALAB_HAVE_AVX2_KERNELS 0
#endif

}  // namespace skalab::kernels
