#include "opacity/bits.hpp"

#include <bit>

namespace opacity::bits {
namespace {

void or_into_scalar(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

bool intersects_scalar(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool any_and_not_scalar(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

std::size_t popcount_scalar(const Word* a, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i]);
  return total;
}

const Kernels kScalar{Backend::scalar, or_into_scalar, intersects_scalar,
                      any_and_not_scalar, popcount_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace opacity::bits
