#include "opacity/bits.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC target("avx2")
#elif defined(__clang__)
#pragma clang attribute push(__attribute__((target("avx2"))), apply_to = function)
#endif

#include <immintrin.h>

#include <bit>

namespace opacity::bits {
namespace {

constexpr std::size_t kLanes = 4;  // 64-bit words per __m256i

void or_into_avx2(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    auto d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    auto s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

bool intersects_avx2(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    auto va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    auto vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(va, vb)) return true;
  }
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool any_and_not_avx2(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    auto va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    auto vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // testc(x, y) == 1 iff (~x & y) == 0
    if (!_mm256_testc_si256(vb, va)) return true;
  }
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

// Nibble lookup popcount (Mula et al.), horizontal sum via sad_epu8.
std::size_t popcount_avx2(const Word* a, std::size_t words) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    auto v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    auto lo = _mm256_and_si256(v, low_mask);
    auto hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    auto cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

const Kernels kAvx2{Backend::avx2, or_into_avx2, intersects_avx2, any_and_not_avx2,
                    popcount_avx2};

}  // namespace

const Kernels* avx2_kernels() {
  return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

}  // namespace opacity::bits

#if defined(__clang__)
#pragma clang attribute pop
#endif

#else

namespace opacity::bits {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace opacity::bits

#endif
