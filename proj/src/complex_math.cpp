#include "barnes_zeta/complex_math.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace barnes {
namespace {

constexpr std::array<double, 30> kB2k = {
    1.6666666666666667e-1,  -3.3333333333333333e-2, 2.380952380952381e-2,
    -3.3333333333333333e-2, 7.5757575757575758e-2,  -2.5311355311355311e-1,
    1.1666666666666667,     -7.092156862745098,     5.4971177944862155e+1,
    -5.2912424242424242e+2, 6.1921231884057971e+3,  -8.6580253113553114e+4,
    1.4255171666666667e+6,  -2.7298231067816092e+7, 6.0158087390064237e+8,
    -1.5116315767092157e+10, 4.2961464306116667e+11, -1.3711655205088333e+13,
    4.8833231897359317e+14, -1.9296579341940068e+16, 8.4169304757368262e+17,
    -4.0338071854059455e+19, 2.1150748638081992e+21, -1.2086626522296526e+23,
    7.5008667460769644e+24, -5.0387781014810689e+26, 3.6528776484818123e+28,
    -2.8498769302450882e+30, 2.3865427499683628e+32, -2.1399949257225334e+34,
};

constexpr std::array<double, 30> kB2kOverFact = {
    8.3333333333333333e-2,  -1.3888888888888889e-3, 3.3068783068783069e-5,
    -8.2671957671957672e-7, 2.0876756987868099e-8,  -5.2841901386874932e-10,
    1.3382536530684679e-11, -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18, -1.3954464685812523e-19,
    3.5347070396294675e-21, -8.9535174270375469e-23, 2.2679524523376831e-24,
    -5.7447906688722024e-26, 1.4551724756148649e-27, -3.6859949406653102e-29,
    9.3367342570950447e-31, -2.3650224157006299e-32, 5.9906717624821343e-34,
    -1.5174548844682903e-35, 3.8437581254541882e-37, -9.736353072646691e-39,
    2.466247044200681e-40,  -6.2470767418207437e-42, 1.5824030244644914e-43,
    -4.008273685948936e-45, 1.0153075855569556e-46, -2.5718041582418717e-48,
};

constexpr double kStirlingRadius = 15.0;
constexpr int kStirlingTerms = 12;
constexpr double kLogPi = 1.14472988584940017414;

// log Gamma(z) for Re(z) >= 0.5 by upward shift and the Stirling series.
cplx log_gamma_right(cplx z) {
  cplx shift_product(1.0, 0.0);
  while (std::abs(z) < kStirlingRadius) {
    shift_product *= z;
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series(0.0, 0.0);
  cplx pw = inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += kB2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * kLogTwoPi + series - std::log(shift_product);
}

// log sin(pi z) without overflow for large |Im z|; branch is irrelevant to callers.
cplx log_sin_pi(cplx z) {
  const double re = z.real() - 2.0 * std::nearbyint(z.real() / 2.0);
  const cplx zr(re, z.imag());
  const cplx ipz = cplx(0.0, kPi) * zr;
  if (zr.imag() > 1.0) {
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
    return -ipz + std::log(std::exp(2.0 * ipz) - 1.0) - std::log(cplx(0.0, 2.0));
  }
  if (zr.imag() < -1.0) {
    // sin(pi z) = e^{i pi z} (1 - e^{-2 i pi z}) / (2i)
    return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) - std::log(cplx(0.0, 2.0));
  }
  return std::log(std::sin(kPi * zr));
}

}  // namespace

double arg_rot(cplx z, double theta) {
  if (theta == 0.0) return std::arg(z);
  const cplx rotated = z * std::polar(1.0, -theta);
  return std::arg(rotated) + theta;
}

cplx log_rot(cplx z, double theta) { return {std::log(std::abs(z)), arg_rot(z, theta)}; }

cplx pow_neg(cplx z, cplx s, double theta) { return std::exp(-s * log_rot(z, theta)); }

cplx cispi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r <= -1.0) r += 2.0;
  if (r == 0.0) return {1.0, 0.0};
  if (r == 1.0) return {-1.0, 0.0};
  if (r == 0.5) return {0.0, 1.0};
  if (r == -0.5) return {0.0, -1.0};
  return {std::cos(kPi * r), std::sin(kPi * r)};
}

cplx cis2pi_frac(double n, double x) {
  const double p = n * x;
  const double err = std::fma(n, x, -p);
  const double f = (p - std::nearbyint(p)) + err;
  return cispi(2.0 * f);
}

cplx complex_log_gamma(cplx z) {
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
  return kLogPi - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cplx complex_gamma(cplx z) { return std::exp(complex_log_gamma(z)); }

cplx pochhammer(cplx s, int k) {
  cplx r(1.0, 0.0);
  for (int j = 0; j < k; ++j) r *= s + static_cast<double>(j);
  return r;
}

double bernoulli_2k_over_factorial(int k) {
  if (k < 1 || k > 30) throw std::out_of_range("bernoulli index");
  return kB2kOverFact[k - 1];
}

double bernoulli_2k(int k) {
  if (k < 1 || k > 30) throw std::out_of_range("bernoulli index");
  return kB2k[k - 1];
}

}  // namespace barnes
