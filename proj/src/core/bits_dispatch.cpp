#include "opacity/bits.hpp"

#include <atomic>

namespace opacity::bits {
namespace {

const Kernels* detect() {
  if (const auto* k = avx2_kernels()) return k;
  if (const auto* k = neon_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> current{detect()};
  return current;
}

const Kernels* lookup(Backend b) {
  switch (b) {
    case Backend::scalar: return &scalar_kernels();
    case Backend::avx2: return avx2_kernels();
    case Backend::neon: return neon_kernels();
  }
  return nullptr;
}

}  // namespace

const Kernels& active() { return *slot().load(std::memory_order_relaxed); }

bool select(Backend b) {
  const Kernels* k = lookup(b);
  if (!k) return false;
  slot().store(k, std::memory_order_relaxed);
  return true;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
    if (lookup(b)) out.push_back(b);
  return out;
}

std::string_view name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

}  // namespace opacity::bits
