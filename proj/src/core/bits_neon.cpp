#include "opacity/bits.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <bit>

namespace opacity::bits {
namespace {

void or_into_neon(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2)
    vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

bool intersects_neon(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) return true;
  }
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool any_and_not_neon(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint64x2_t v = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) return true;
  }
  for (; i < words; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

std::size_t popcount_neon(const Word* a, std::size_t words) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
    total += vaddvq_u8(bytes);
  }
  for (; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

const Kernels kNeon{Backend::neon, or_into_neon, intersects_neon, any_and_not_neon,
                    popcount_neon};

}  // namespace

const Kernels* neon_kernels() { return &kNeon; }

}  // namespace opacity::bits

#else

namespace opacity::bits {
const Kernels* neon_kernels() { return nullptr; }
}  // namespace opacity::bits

#endif
