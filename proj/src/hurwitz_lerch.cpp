#include "barnes_zeta/hurwitz_lerch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"
#include "barnes_zeta/kernels/power_sum.hpp"

namespace barnes {
namespace {

constexpr double kPoleGuard = 1e-12;
constexpr int kLerchMaxOrder = 80;
constexpr std::int64_t kLerchMaxHead = std::int64_t{1} << 22;
constexpr double kSmallTwist = 1e-3;

const std::array<double, kLerchMaxOrder + 1>& inverse_factorials() {
  static const auto table = [] {
    std::array<double, kLerchMaxOrder + 1> t{};
    t[0] = 1.0;
    for (int j = 1; j <= kLerchMaxOrder; ++j) t[j] = t[j - 1] / j;
    return t;
  }();
  return table;
}

void require_not_pole(cplx s) {
  if (std::abs(s - 1.0) < kPoleGuard) throw PoleError(1);
}

double reduce_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  return r;
}

// Twisted Euler-Maclaurin with geometric damping: for z = e^{2 pi i lam},
// sum_{n>=0} z^n g(N + n) = sum_k h_k g^{(k)}(N) where 1/(1 - z e^x) =
// sum_k h_k x^k. Here lam is in [-1/2, 1/2] and nonzero.
EvalResult lerch_em(cplx s, cplx a, double lam, std::int64_t min_head) {
  const double two_pi_lam = kTwoPi * std::abs(lam);
  const double radius = 2.0 * (std::abs(s) + 30.0) / (0.5 * two_pi_lam);
  std::int64_t head = std::max(min_head, detail::head_length(a, radius));
  bool capped = false;
  if (head > kLerchMaxHead) {
    head = kLerchMaxHead;
    capped = true;
  }

  const auto direct = kernels::ap_power_sum(a, 1.0, head, s, lam);

  const cplx z = cis2pi_frac(1.0, lam);
  const cplx zn = cis2pi_frac(static_cast<double>(head), lam);
  const cplx b = a + static_cast<double>(head);
  const cplx inv_b = 1.0 / b;
  const cplx p = std::exp(-s * std::log(b));
  const auto& inv_fact = inverse_factorials();

  std::array<cplx, kLerchMaxOrder + 1> h{};
  const cplx one_minus_z = 1.0 - z;
  h[0] = 1.0 / one_minus_z;
  cplx tail = h[0] * p;
  cplx deriv = p;  // (-1)^k (s)_k b^{-s-k}
  // Coefficients can vanish by parity (lam = 1/2), so the stopping test
  // uses the envelope max(|t_k|, |t_{k-1}|): stop once it starts to grow.
  double last_mag = std::abs(tail);
  double env_prev = last_mag;
  double env_used = last_mag;
  int k_used = 0;
  int small_run = 0;
  for (int k = 1; k <= kLerchMaxOrder; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 1; j <= k; ++j) acc += h[k - j] * inv_fact[j];
    h[k] = z * acc / one_minus_z;
    deriv *= -(s + static_cast<double>(k - 1)) * inv_b;
    const cplx term = h[k] * deriv;
    const double mag = std::abs(term);
    const double env = std::max(mag, last_mag);
    if (k > 6 && env > env_prev) break;  // asymptotic: stop near the smallest terms
    tail += term;
    k_used = k;
    env_used = env;
    env_prev = env;
    last_mag = mag;
    if (env <= 1e-17 * std::abs(tail)) {
      if (++small_run == 2) break;
    } else {
      small_run = 0;
    }
  }
  const double best = env_used;

  EvalResult r;
  r.value = direct.sum + zn * tail;
  r.method = MethodTag::TwistedEulerMaclaurin;
  r.terms_used = head + k_used;
  r.abs_err_est = 2.0 * best + 8.0 * kEps * (direct.abs_sum + std::abs(tail));
  if (capped || std::abs(lam) < kSmallTwist) {
    r.conditioning_warning = true;
    r.abs_err_est = std::max(r.abs_err_est, 10.0 * best);
  }
  return checked(r);
}

}  // namespace

EMConfig EMConfig::defaults_for(cplx s) {
  EMConfig cfg;
  const double mod = std::abs(s);
  if (s.real() >= 0.0) {
    cfg.cutoff_n = std::max<std::int64_t>(50, static_cast<std::int64_t>(std::ceil(2.0 * mod)));
  } else {
    cfg.cutoff_n = static_cast<std::int64_t>(std::ceil(detail::em_radius(s, cfg.bernoulli_order)));
  }
  return cfg;
}

void EMConfig::validate() const {
  if (cutoff_n < 1) throw DomainError("EMConfig: cutoff_n must be >= 1");
  if (bernoulli_order < 1 || bernoulli_order > 30)
    throw DomainError("EMConfig: bernoulli_order must be in [1, 30]");
}

namespace detail {

double em_radius(cplx s, int order) {
  const double mod = std::abs(s);
  if (s.real() >= 0.0) return std::max(50.0, 2.0 * mod);
  // The tail terms shrink like ((|s| + 2k) / (2 pi N))^2 per order; a short
  // head limits cancellation among the growing direct terms.
  return std::max(6.0, 1.5 * (mod + 2.0 * order) / kTwoPi);
}

std::int64_t head_length(cplx a, double radius) {
  double need = -a.real();
  const double im = std::abs(a.imag());
  if (im < radius) need = std::max(need, std::sqrt(radius * radius - im * im) - a.real());
  if (need <= 0.0) return 0;
  return static_cast<std::int64_t>(std::ceil(need));
}

EvalResult hurwitz_em(cplx s, cplx a, std::int64_t n_direct, int order, bool scaled) {
  if (!scaled) require_not_pole(s);
  const auto direct = kernels::ap_power_sum(a, 1.0, n_direct, s, 0.0);
  const cplx b = a + static_cast<double>(n_direct);
  const cplx log_b = std::log(b);
  const cplx p = std::exp(-s * log_b);  // b^{-s}
  const cplx inv_b = 1.0 / b;
  const cplx inv_b2 = inv_b * inv_b;
  const cplx sm1 = s - 1.0;

  // (s-1) * [b^{1-s}/(s-1)] = b^{1-s}
  const cplx integral = scaled ? p * b : p * b / sm1;
  const cplx half = 0.5 * p;
  cplx corr(0.0, 0.0);
  cplx poch = s;     // (s)_{2k-1}
  cplx pw = p * inv_b;  // b^{-s-2k+1}
  cplx last(0.0, 0.0);
  for (int k = 1; k <= order + 1; ++k) {
    const cplx term = bernoulli_2k_over_factorial(std::min(k, 30)) * poch * pw;
    if (k <= order) {
      corr += term;
    } else {
      last = term;
    }
    poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    pw *= inv_b2;
  }
  const double denom = s.real() + 2.0 * order + 1.0;
  double factor = 10.0;
  if (denom > 0.0) factor = std::max(1.0, std::abs(s + (2.0 * order + 1.0)) / denom);

  EvalResult r;
  const cplx scale = scaled ? sm1 : cplx(1.0, 0.0);
  r.value = scale * (direct.sum + half + corr) + integral;
  r.method = MethodTag::EulerMaclaurin;
  r.terms_used = n_direct + order;
  const double trunc = std::abs(scale) * std::abs(last) * factor;
  const double round = 8.0 * kEps *
                       (std::abs(scale) * (direct.abs_sum + std::abs(half) + std::abs(corr)) +
                        std::abs(integral));
  r.abs_err_est = trunc + round;
  return checked(r);
}

EvalResult hurwitz_auto(cplx s, cplx a, bool scaled) {
  constexpr int kOrder = 12;
  const std::int64_t head = head_length(a, em_radius(s, kOrder));
  EvalResult r = hurwitz_em(s, a, head, kOrder, scaled);
  // Deep in the left half plane the head sum cancels badly; the reflected
  // Lerch sums at 1 - s converge fast there.
  if (!scaled && s.real() < -3.0 && a.imag() == 0.0 && a.real() > 0.0 && a.real() <= 1.0) {
    EvalResult fe = hurwitz_fe_rhs(s, a.real());
    if (fe.abs_err_est < r.abs_err_est) return fe;
  }
  return r;
}

EvalResult lerch_auto(cplx s, cplx a, double lambda) {
  const double frac = reduce_unit(lambda);
  if (frac == 0.0) return hurwitz_auto(s, a);
  const double lam = frac <= 0.5 ? frac : frac - 1.0;
  return lerch_em(s, a, lam, 0);
}

EvalResult periodic_zeta(cplx s, double lambda) {
  const double frac = reduce_unit(lambda);
  if (frac == 0.0) return hurwitz_auto(s, 1.0);
  EvalResult r = lerch_auto(s, 1.0, frac);
  r.value *= cis2pi_frac(1.0, frac);
  return r;
}

}  // namespace detail

EvalResult riemann_zeta(cplx s, const EMConfig& cfg) { return hurwitz_zeta(s, 1.0, cfg); }

EvalResult riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

EvalResult hurwitz_zeta(cplx s, cplx alpha, const EMConfig& cfg) {
  cfg.validate();
  if (!(alpha.real() > 0.0)) throw DomainError("hurwitz_zeta: Re(alpha) must be positive");
  require_not_pole(s);
  return detail::hurwitz_em(s, alpha, cfg.cutoff_n, cfg.bernoulli_order, false);
}

EvalResult hurwitz_zeta(cplx s, cplx alpha) {
  EvalResult r = hurwitz_zeta(s, alpha, EMConfig::defaults_for(s));
  if (s.real() < -3.0 && alpha.imag() == 0.0 && alpha.real() <= 1.0) {
    EvalResult fe = hurwitz_fe_rhs(s, alpha.real());
    if (fe.abs_err_est < r.abs_err_est) return fe;
  }
  return r;
}

EvalResult lerch_zeta(cplx s, cplx alpha, double lambda, const EMConfig& cfg) {
  cfg.validate();
  if (!(alpha.real() > 0.0)) throw DomainError("lerch_zeta: Re(alpha) must be positive");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lerch_zeta: lambda must lie in (0, 1]");
  if (lambda == 1.0) return hurwitz_zeta(s, alpha, cfg);
  const double lam = lambda <= 0.5 ? lambda : lambda - 1.0;
  return lerch_em(s, alpha, lam, cfg.cutoff_n);
}

EvalResult lerch_zeta(cplx s, cplx alpha, double lambda) {
  return lerch_zeta(s, alpha, lambda, EMConfig::defaults_for(s));
}

EvalResult hurwitz_fe_rhs(cplx s, double alpha) {
  if (!(s.real() < 0.0)) throw DomainError("hurwitz_fe_rhs: requires Re(s) < 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("hurwitz_fe_rhs: alpha must lie in (0, 1]");
  const cplx u = 1.0 - s;
  const cplx base = complex_log_gamma(u) - u * kLogTwoPi;
  const cplx half_turn = cplx(0.0, 0.5 * kPi) * u;
  const cplx c_plus = std::exp(base + half_turn);
  const cplx c_minus = std::exp(base - half_turn);
  const EvalResult f_minus = detail::periodic_zeta(u, 1.0 - alpha);
  const EvalResult f_plus = detail::periodic_zeta(u, alpha);

  EvalResult r;
  const cplx t1 = c_plus * f_minus.value;
  const cplx t2 = c_minus * f_plus.value;
  r.value = t1 + t2;
  r.method = MethodTag::HurwitzFE;
  r.terms_used = f_minus.terms_used + f_plus.terms_used;
  r.abs_err_est = std::abs(c_plus) * f_minus.abs_err_est + std::abs(c_minus) * f_plus.abs_err_est +
                  1e-14 * (std::abs(t1) + std::abs(t2));
  r.conditioning_warning = f_minus.conditioning_warning || f_plus.conditioning_warning;
  return checked(r);
}

EvalResult lerch_fe_rhs(cplx s, double alpha, double lambda) {
  if (!(s.real() < 0.0)) throw DomainError("lerch_fe_rhs: requires Re(s) < 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("lerch_fe_rhs: alpha must lie in (0, 1]");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lerch_fe_rhs: lambda must lie in (0, 1)");
  const cplx u = 1.0 - s;
  const cplx base = complex_log_gamma(u) - u * kLogTwoPi;
  const cplx half_turn = cplx(0.0, 0.5 * kPi) * u;
  const cplx c1 = std::exp(base + half_turn) * cispi(-2.0 * alpha * lambda);
  const cplx c2 = std::exp(base - half_turn) * cispi(2.0 * alpha * (1.0 - lambda));
  const EvalResult l1 = detail::lerch_auto(u, lambda, 1.0 - alpha);
  const EvalResult l2 = detail::lerch_auto(u, 1.0 - lambda, alpha);

  EvalResult r;
  const cplx t1 = c1 * l1.value;
  const cplx t2 = c2 * l2.value;
  r.value = t1 + t2;
  r.method = MethodTag::LerchFE;
  r.terms_used = l1.terms_used + l2.terms_used;
  r.abs_err_est = std::abs(c1) * l1.abs_err_est + std::abs(c2) * l2.abs_err_est +
                  1e-14 * (std::abs(t1) + std::abs(t2));
  r.conditioning_warning = l1.conditioning_warning || l2.conditioning_warning;
  return checked(r);
}

}  // namespace barnes
