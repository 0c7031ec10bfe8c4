#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace barnes::kernels {
namespace {

const KernelSet kScalar{"scalar", &detail::ap_power_sum_scalar};

#if defined(BARNES_ZETA_HAVE_AVX2)
const KernelSet kAvx2{"avx2", &detail::ap_power_sum_avx2};

bool cpu_has_avx2_fma() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelSet& select_kernels() {
  if (const char* env = std::getenv("BARNES_ZETA_SIMD")) {
    if (std::string_view(env) == "scalar") return kScalar;
  }
  if (const KernelSet* k = avx2_kernels()) return *k;
  return kScalar;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(BARNES_ZETA_HAVE_AVX2)
  static const bool supported = cpu_has_avx2_fma();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = select_kernels();
  return chosen;
}

}  // namespace barnes::kernels
