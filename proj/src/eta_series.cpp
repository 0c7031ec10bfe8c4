#include "barnes_zeta/eta_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"
#include "barnes_zeta/hurwitz_lerch.hpp"

namespace barnes {
namespace {

// max over |x| <= 1/2 of |x| / |1 - e^{2 pi i x}|, attained at x = 1/2.
constexpr double kC2 = 0.25;
constexpr double kSkipLimit = 0.01;
constexpr double kBoundCap = 1e300;
constexpr int kTailCheckStride = 256;

// <n x> with the product formed by a compensated step.
double scaled_nearest(double n, double x) {
  const double p = n * x;
  const double e = std::fma(n, x, -p);
  double d = nearest_int_signed(p) + e;
  if (d <= -0.5) d += 1.0;
  if (d > 0.5) d -= 1.0;
  return d;
}

// 1 - e^{2 pi i d} = -2i sin(pi d) e^{i pi d}, accurate for small d.
cplx one_minus_cis2pi(double d) { return cplx(0.0, -2.0 * std::sin(kPi * d)) * cispi(d); }

// log(e^z - 1) without overflow; the branch is irrelevant after exponentiation.
cplx log_expm1(cplx z) {
  if (z.real() > 0.0) return z + std::log(1.0 - std::exp(-z));
  return std::log(std::exp(z) - 1.0);
}

// Phase c in n^{1-s} = |n|^{1-s} e^{i c (1-s)} for n < 0. The poles 2 pi i n / v
// are placed with arg in [-theta, 2 pi - theta), the sheet on which every
// n > 0 satisfies -theta < arg(2 pi i n / v) < -theta + pi. Writing
// (2 pi i n / v) = (2 pi i) n v^{-1} with principal arg(2 pi i) = pi / 2 and
// theta-relative arg(v) leaves the remainder for arg(n).
double negative_index_phase(cplx v, double theta) {
  const double arg_v = arg_rot(v, theta);
  const double candidates[2] = {kPi, -kPi};
  for (double c : candidates) {
    const double arg_z = kPi / 2 + c - arg_v;
    if (arg_z >= -theta && arg_z < -theta + kTwoPi) return c;
  }
  return kPi;
}

struct BranchSum {
  cplx sum{};
  double abs_sum = 0.0;
  double tail = 0.0;
  std::int64_t terms = 0;
  bool reached = false;
};

// One branch of an imaginary-ratio bilateral sum: n = sign * k, k >= 1.
BranchSum imaginary_branch(cplx beta, cplx x, cplx s, int sign, double phase, double rate,
                           const TruncationPlan& plan) {
  BranchSum b;
  const cplx one_minus_s = 1.0 - s;
  const double grow = std::max(s.real() - 1.0, 0.0);
  const cplx neg_phase = sign < 0 ? cplx(0.0, phase) * one_minus_s : cplx(0.0, 0.0);
  for (std::int64_t k = 1; k <= plan.max_index; ++k) {
    const double n = sign * static_cast<double>(k);
    const cplx num = cplx(0.0, kTwoPi * n) * x;
    const cplx den = log_expm1(cplx(0.0, kTwoPi * n) * beta);
    const cplx term = std::exp(num - den - one_minus_s * std::log(static_cast<double>(k)) - neg_phase);
    b.sum += term;
    const double mag = std::abs(term);
    b.abs_sum += mag;
    b.terms = k;
    if (k < 4) continue;
    double tail;
    if (rate > 0.0) {
      const double rho = std::exp(-kTwoPi * rate) * std::pow((k + 1.0) / k, grow);
      if (rho >= 1.0) continue;
      tail = mag * rho / (1.0 - rho);
    } else {
      if (!(s.real() < 0.0)) break;
      tail = mag * static_cast<double>(k) / -s.real();
    }
    b.tail = tail;
    if (tail < plan.target_tail) {
      b.reached = true;
      break;
    }
  }
  return b;
}

EvalResult imaginary_bilateral(cplx v, cplx w, double y1, double y2, cplx s,
                               const TruncationPlan& plan) {
  const cplx beta = w / v;
  const cplx x = y1 + beta * y2;
  const double ib = beta.imag();
  // Decay rates of the n > 0 and n < 0 branches in units of 2 pi.
  const double rate_pos = ib > 0.0 ? y2 * ib : (1.0 - y2) * -ib;
  const double rate_neg = ib > 0.0 ? (1.0 - y2) * ib : y2 * -ib;
  if ((rate_pos <= 0.0 || rate_neg <= 0.0) && !(s.real() < 0.0))
    throw DomainError("bilateral_indep: boundary shift requires Re(s) < 0");
  const double phase = negative_index_phase(v, std::arg(v));
  const BranchSum pos = imaginary_branch(beta, x, s, +1, phase, rate_pos, plan);
  const BranchSum neg = imaginary_branch(beta, x, s, -1, phase, rate_neg, plan);
  if (!pos.reached || !neg.reached)
    throw NonConvergent("bilateral_indep: tail bound not reached within max_index = " +
                        std::to_string(plan.max_index));
  EvalResult r;
  r.value = pos.sum + neg.sum;
  r.abs_err_est = pos.tail + neg.tail + 8.0 * kEps * (pos.abs_sum + neg.abs_sum);
  r.method = MethodTag::BilateralSeries;
  r.terms_used = pos.terms + neg.terms;
  return checked(r);
}

}  // namespace

void TruncationPlan::validate() const {
  if (max_index < 1) throw DomainError("TruncationPlan: max_index must be >= 1");
  if (!(target_tail > 0.0)) throw DomainError("TruncationPlan: target_tail must be positive");
  if (!(guard_epsilon > 0.0 && guard_epsilon < 0.5))
    throw DomainError("TruncationPlan: guard_epsilon must lie in (0, 1/2)");
}

double nearest_int_signed(double x) {
  double r = x - std::ceil(x - 0.5);
  if (r <= -0.5) r += 1.0;
  if (r > 0.5) r -= 1.0;
  return r;
}

EvalResult eta(const EtaParams& params, cplx s, const TruncationPlan& plan) {
  plan.validate();
  if (!(s.real() < 0.0)) throw DomainError("eta: requires Re(s) < 0");
  if (!std::isfinite(params.beta0)) throw DomainError("eta: beta0 must be finite");
  const double sigma = s.real();
  const double x = params.p1 * params.beta0 + params.p2;
  const cplx sm1 = s - 1.0;
  const std::int64_t n_max = plan.max_index;
  const std::int64_t decade_start = std::max<std::int64_t>(1, n_max / 10);

  cplx sum(0.0, 0.0);
  double abs_sum = 0.0;
  double skipped_bound = 0.0;
  std::int64_t skipped = 0;
  double inv_dist_sum = 0.0;
  std::int64_t inv_dist_count = 0;
  std::vector<cplx> checkpoints;
  const std::int64_t stride = std::max<std::int64_t>(1, (n_max - decade_start) / 4096);
  std::int64_t n_used = 0;

  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double d = scaled_nearest(nd, params.beta0);
    const double mag_pow = std::pow(nd, sigma - 1.0);
    n_used = n;
    if (std::abs(d) < plan.guard_epsilon / nd) {
      ++skipped;
      const double den = 2.0 * std::abs(std::sin(kPi * d));
      skipped_bound = den > 0.0 ? std::min(kBoundCap, skipped_bound + mag_pow / den) : kBoundCap;
    } else {
      const cplx term = cis2pi_frac(nd, x) / one_minus_cis2pi(d) * std::exp(sm1 * std::log(nd));
      sum += term;
      abs_sum += std::abs(term);
      if (n >= decade_start) {
        inv_dist_sum += 1.0 / std::abs(d);
        ++inv_dist_count;
      }
    }
    if (n >= decade_start && (n - decade_start) % stride == 0) checkpoints.push_back(sum);
    if (n % kTailCheckStride == 0 && inv_dist_count > 0) {
      const double mean_inv = inv_dist_sum / inv_dist_count;
      const double tail = kC2 * mean_inv * std::pow(nd, sigma) / -sigma;
      if (tail < plan.target_tail) break;
    }
  }
  if (static_cast<double>(skipped) > kSkipLimit * static_cast<double>(n_used))
    throw GuardSaturated("eta: " + std::to_string(skipped) + " of " + std::to_string(n_used) +
                         " indices hit the small-denominator guard");

  double oscillation = 0.0;
  for (const cplx& c : checkpoints) oscillation = std::max(oscillation, std::abs(c - sum));
  double tail = 0.0;
  if (inv_dist_count > 0) {
    const double mean_inv = inv_dist_sum / inv_dist_count;
    tail = kC2 * mean_inv * std::pow(static_cast<double>(n_used), sigma) / -sigma;
  }
  EvalResult r;
  r.value = sum;
  r.method = MethodTag::EtaSeries;
  r.terms_used = n_used;
  r.guard_skips = skipped;
  r.abs_err_est = std::min(kBoundCap, std::max(oscillation, tail) + skipped_bound + 8.0 * kEps * abs_sum);
  return checked(r);
}

EvalResult bilateral_indep(cplx v, cplx w, double y1, double y2, cplx s, const TruncationPlan& plan) {
  plan.validate();
  if (std::abs(v) == 0.0 || std::abs(w) == 0.0) throw DomainError("bilateral_indep: v, w nonzero");
  if (!(y1 >= 0.0 && y1 < 1.0 && y2 >= 0.0 && y2 < 1.0))
    throw DomainError("bilateral_indep: shifts must lie in [0, 1)");
  const cplx beta = w / v;
  if (std::abs(beta.imag()) > 1e-12 * std::abs(beta)) return imaginary_bilateral(v, w, y1, y2, s, plan);

  if (!(s.real() < 0.0)) throw DomainError("bilateral_indep: real ratio requires Re(s) < 0");
  // n > 0 gives -eta(beta, s, y2, y1); n < 0 with the selected phase c gives
  // -e^{-i c (1-s)} eta(-beta, s, y2, -y1).
  const double b = beta.real();
  const double c = negative_index_phase(v, std::arg(v));
  const EvalResult e_pos = eta({b, y2, y1}, s, plan);
  const EvalResult e_neg = eta({-b, y2, -y1}, s, plan);
  const cplx k_neg = -std::exp(cplx(0.0, -c) * (1.0 - s));
  EvalResult r;
  r.value = -e_pos.value + k_neg * e_neg.value;
  r.abs_err_est = e_pos.abs_err_est + std::abs(k_neg) * e_neg.abs_err_est;
  r.method = MethodTag::BilateralSeries;
  r.terms_used = e_pos.terms_used + e_neg.terms_used;
  r.guard_skips = e_pos.guard_skips + e_neg.guard_skips;
  return checked(r);
}

EvalResult bilateral_rational(std::int64_t p, std::int64_t q, double y1, double y2, cplx s,
                              const TruncationPlan& plan) {
  plan.validate();
  if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw DomainError("bilateral_rational: need coprime p, q >= 1");
  if (!(s.real() < 0.0)) throw DomainError("bilateral_rational: direct summation requires Re(s) < 0");
  EvalResult r;
  r.method = MethodTag::BilateralSeries;
  if (q == 1) return r;  // every index is excluded

  const double x = y1 + static_cast<double>(p) / static_cast<double>(q) * y2;
  const double c = kPi;  // negative-index phase; independent of v for real ratios
  const cplx neg_phase = std::exp(cplx(0.0, -c) * (1.0 - s));
  const double dmin = 2.0 * std::sin(kPi / static_cast<double>(q));
  const double sigma = s.real();
  const cplx sm1 = s - 1.0;
  cplx sum(0.0, 0.0);
  double abs_sum = 0.0;
  std::int64_t n_used = 0;
  double tail = 0.0;
  for (std::int64_t n = 1; n <= plan.max_index; ++n) {
    n_used = n;
    const double nd = static_cast<double>(n);
    const std::int64_t res = (n % q) * p % q;
    if (res != 0) {
      const double frac = static_cast<double>(res) / static_cast<double>(q);
      const cplx power = std::exp(sm1 * std::log(nd));
      const cplx t_pos = cis2pi_frac(nd, x) / (cispi(2.0 * frac) - 1.0) * power;
      const cplx t_neg = cis2pi_frac(-nd, x) / (cispi(-2.0 * frac) - 1.0) * power * neg_phase;
      sum += t_pos + t_neg;
      abs_sum += std::abs(t_pos) + std::abs(t_neg);
    }
    if (n % kTailCheckStride == 0) {
      tail = 2.0 * std::pow(nd, sigma) / (-sigma * dmin);
      if (tail < plan.target_tail) break;
    }
  }
  tail = 2.0 * std::pow(static_cast<double>(n_used), sigma) / (-sigma * dmin);
  r.value = sum;
  r.abs_err_est = tail + 8.0 * kEps * abs_sum;
  r.terms_used = n_used;
  return checked(r);
}

EvalResult bilateral_rational_continued(std::int64_t p, std::int64_t q, double y1, double y2, cplx s) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw DomainError("bilateral_rational: need coprime p, q >= 1");
  EvalResult r;
  r.method = MethodTag::BilateralSeries;
  if (q == 1) return r;

  const double qd = static_cast<double>(q);
  const double x = y1 + static_cast<double>(p) / qd * y2;
  const cplx u = 1.0 - s;
  const cplx q_pow = std::exp(-u * std::log(qd));  // q^{s-1}
  const cplx neg_phase = std::exp(cplx(0.0, -kPi) * u);
  cplx sum(0.0, 0.0);
  double err = 0.0;
  for (std::int64_t res = 1; res < q; ++res) {
    const double frac = static_cast<double>(res * p % q) / qd;
    const double a = static_cast<double>(res) / qd;
    // n = q j + res > 0 and n = -(q j + res) < 0.
    const cplx c_pos = q_pow * cis2pi_frac(static_cast<double>(res), x) / (cispi(2.0 * frac) - 1.0);
    const cplx c_neg =
        neg_phase * q_pow * cis2pi_frac(-static_cast<double>(res), x) / (cispi(-2.0 * frac) - 1.0);
    const EvalResult l_pos = detail::lerch_auto(u, a, qd * x);
    const EvalResult l_neg = detail::lerch_auto(u, a, -qd * x);
    sum += c_pos * l_pos.value + c_neg * l_neg.value;
    err += std::abs(c_pos) * l_pos.abs_err_est + std::abs(c_neg) * l_neg.abs_err_est;
    r.terms_used += l_pos.terms_used + l_neg.terms_used;
    r.conditioning_warning = r.conditioning_warning || l_pos.conditioning_warning ||
                             l_neg.conditioning_warning;
  }
  r.value = sum;
  r.abs_err_est = err;
  return checked(r);
}

ExpBoundSample inv_expm1_bound_check(cplx z, double eps) {
  const double m = std::nearbyint(z.imag() / kTwoPi);
  const double dist = std::abs(z - cplx(0.0, kTwoPi * m));
  if (dist < eps) throw TooCloseToPole("inv_expm1_bound_check: z is within eps of 2 pi i m");
  double lhs;
  if (z.real() > 0.0) {
    const cplx e = std::exp(-z);
    lhs = std::abs(e / (1.0 - e));
  } else {
    lhs = 1.0 / std::abs(std::exp(z) - 1.0);
  }
  return {lhs, std::exp(-std::max(z.real(), 0.0))};
}

}  // namespace barnes
