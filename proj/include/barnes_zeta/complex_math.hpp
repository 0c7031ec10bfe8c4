#pragma once

#include <complex>
#include <cstdint>

#include "barnes_zeta/eval_result.hpp"

namespace barnes {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kLogTwoPi = 1.83787706640934548356;
inline constexpr double kEps = 2.220446049250313e-16;

// Argument in (theta - pi, theta + pi].
double arg_rot(cplx z, double theta);

// log z on the branch whose cut is the ray opposite to e^{i theta}.
cplx log_rot(cplx z, double theta);

// z^{-s} = exp(-s log_rot(z, theta)).
cplx pow_neg(cplx z, cplx s, double theta);

// exp(i pi x) with exact reduction of x modulo 2.
cplx cispi(double x);

// exp(2 pi i frac(n x)); the product n x is reduced with a compensated step.
cplx cis2pi_frac(double n, double x);

cplx complex_log_gamma(cplx z);
cplx complex_gamma(cplx z);

// Rising factorial (s)_k.
cplx pochhammer(cplx s, int k);

// B_{2k} / (2k)! for 1 <= k <= 30.
double bernoulli_2k_over_factorial(int k);
// B_{2k} for 1 <= k <= 30.
double bernoulli_2k(int k);

}  // namespace barnes
