#pragma once

#include <complex>
#include <cstdint>

namespace barnes::kernels {

using cplx = std::complex<double>;

struct PowerSum {
  cplx sum{};
  double abs_sum = 0.0;  // sum of term magnitudes, for rounding estimates
};

// Sum over j in [0, count) of
//   exp(2 pi i frac(j * cycles)) * (a + j * step)^{-s}
// with the principal logarithm of a + j * step. Points on the cut are the
// caller's responsibility.
using ApPowerSumFn = PowerSum (*)(cplx a, cplx step, std::int64_t count, cplx s, double cycles);

struct KernelSet {
  const char* name;
  ApPowerSumFn ap_power_sum;
};

const KernelSet& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelSet* avx2_kernels();

// Chosen once per process. BARNES_ZETA_SIMD=scalar forces the reference path.
const KernelSet& active_kernels();

inline PowerSum ap_power_sum(cplx a, cplx step, std::int64_t count, cplx s, double cycles = 0.0) {
  return active_kernels().ap_power_sum(a, step, count, s, cycles);
}

}  // namespace barnes::kernels
