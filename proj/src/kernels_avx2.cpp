// Compiled with -mavx2; only entered after a runtime CPU check.

#include <immintrin.h>

#include <bit>
#include <cassert>

#include "skalab/kernels.hpp"

namespace skalab::kernels::avx2 {

namespace {

// Nibble-lookup popcount (Mula): per-byte counts via pshufb, then summed into
// four 64-bit lanes with psadbw.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

template <bool WithAnd>
std::uint64_t count(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    if constexpr (WithAnd) v = _mm256_and_si256(v, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), zero));
  }
  std::uint64_t n = horizontal_sum(acc);
  for (; i < words; ++i) {
    const std::uint64_t w = WithAnd ? (a[i] & b[i]) : a[i];
    n += static_cast<std::uint64_t>(std::popcount(w));
  }
  return n;
}

}  // namespace

std::uint64_t popcount(Words a) noexcept { return count<false>(a.data(), nullptr, a.size()); }

std::uint64_t and_popcount(Words a, Words b) noexcept {
  assert(a.size() == b.size());
  return count<true>(a.data(), b.data(), a.size());
}

}  // namespace skalab::kernels::avx2
