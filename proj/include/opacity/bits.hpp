#pragma once

// Word-level bitset kernels behind StateSet. A scalar reference
// implementation is always built; SIMD variants are compiled per target and
// picked at runtime from what the CPU reports.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace opacity::bits {

using Word = std::uint64_t;

enum class Backend { scalar, avx2, neon };

struct Kernels {
  Backend backend;
  // dst[i] |= src[i] for i < words
  void (*or_into)(Word* dst, const Word* src, std::size_t words);
  // any(a[i] & b[i])
  bool (*intersects)(const Word* a, const Word* b, std::size_t words);
  // any(a[i] & ~b[i]), i.e. a is not a subset of b
  bool (*any_and_not)(const Word* a, const Word* b, std::size_t words);
  std::size_t (*popcount)(const Word* a, std::size_t words);
};

const Kernels& scalar_kernels();
// Returns nullptr when the backend was not compiled in or the CPU lacks it.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

/// The kernels every StateSet operation goes through.
const Kernels& active();

/// Overrides the runtime choice; returns false if `b` is unavailable here.
bool select(Backend b);

std::vector<Backend> available_backends();
std::string_view name(Backend b);

}  // namespace opacity::bits
