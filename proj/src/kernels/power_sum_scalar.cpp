#include <cmath>

#include "kernels_internal.hpp"

namespace barnes::kernels::detail {

PowerSum ap_power_sum_scalar(cplx a, cplx step, std::int64_t count, cplx s, double cycles) {
  constexpr double kTwoPi = 6.28318530717958647692;
  const double sr = s.real();
  const double si = s.imag();
  double acc_re = 0.0, acc_im = 0.0, acc_abs = 0.0;
  for (std::int64_t j = 0; j < count; ++j) {
    const double jd = static_cast<double>(j);
    const double zr = std::fma(jd, step.real(), a.real());
    const double zi = std::fma(jd, step.imag(), a.imag());
    const double lr = 0.5 * std::log(zr * zr + zi * zi);
    const double li = std::atan2(zi, zr);
    const double er = -sr * lr + si * li;
    double ei = -sr * li - si * lr;
    if (cycles != 0.0) {
      const double p = jd * cycles;
      const double f = (p - std::nearbyint(p)) + std::fma(jd, cycles, -p);
      ei += kTwoPi * f;
    }
    const double mag = std::exp(er);
    acc_re += mag * std::cos(ei);
    acc_im += mag * std::sin(ei);
    acc_abs += mag;
  }
  return {{acc_re, acc_im}, acc_abs};
}

}  // namespace barnes::kernels::detail
