#include "barnes_zeta/barnes_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"
#include "barnes_zeta/kernels/power_sum.hpp"
#include "barnes_zeta/parallel.hpp"

namespace barnes {
namespace {

constexpr double kPoleRefuse = 1e-10;
constexpr double kRemovableNear = 1e-4;
constexpr double kCircleRadius = 0.05;
constexpr int kCirclePoints = 8;
constexpr int kTailOrder = 12;

void refuse_poles(cplx s) {
  if (std::abs(s - 1.0) < kPoleRefuse) throw PoleError(1);
  if (std::abs(s - 2.0) < kPoleRefuse) throw PoleError(2);
}

// Sum of (a + j step)^{-s}, j in [0, count), on the theta branch.
kernels::PowerSum rot_power_sum(cplx a, cplx step, std::int64_t count, cplx s, double theta) {
  if (theta == 0.0) return kernels::ap_power_sum(a, step, count, s);
  const cplx rot = std::polar(1.0, -theta);
  auto ps = kernels::ap_power_sum(a * rot, step * rot, count, s);
  const cplx f = std::exp(cplx(0.0, -theta) * s);
  ps.sum *= f;
  ps.abs_sum *= std::abs(f);
  return ps;
}

// Gamma(1-s) (2 pi)^{s-1} e^{i pi (1-s)/2}.
cplx fe_prefactor(cplx s) {
  const cplx u = 1.0 - s;
  return std::exp(complex_log_gamma(u) - u * kLogTwoPi + cplx(0.0, 0.5 * kPi) * u);
}

// Gamma(1-s) has poles at s = 3, 4, ... that the series cancel; Lerch terms
// with integer parameter add one at s = 0. Close to those points the
// function is replaced by its mean over a small circle.
template <class F>
EvalResult regularized(cplx s, bool zero_singular, F&& f) {
  const double n = std::nearbyint(s.real());
  const bool singular = (n >= 3.0 || (zero_singular && n == 0.0)) && std::abs(s - n) < kRemovableNear;
  if (!singular) return f(s);
  EvalResult acc;
  double mag = 0.0;
  for (int k = 0; k < kCirclePoints; ++k) {
    const cplx z = s + std::polar(kCircleRadius, kTwoPi * (k + 0.5) / kCirclePoints);
    const EvalResult r = f(z);
    acc.value += r.value;
    acc.abs_err_est = std::max(acc.abs_err_est, r.abs_err_est);
    acc.terms_used += r.terms_used;
    acc.guard_skips += r.guard_skips;
    acc.conditioning_warning = acc.conditioning_warning || r.conditioning_warning;
    acc.method = r.method;
    mag = std::max(mag, std::abs(r.value));
  }
  acc.value /= static_cast<double>(kCirclePoints);
  acc.abs_err_est += 64.0 * kEps * mag;
  return checked(acc);
}

double reduce_unit_interval(double a) { return a - std::ceil(a) + 1.0; }

void check_rational(const BarnesParams& params, std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw DomainError("p and q must be coprime positive integers");
  const cplx pv = static_cast<double>(p) * params.v;
  const cplx qw = static_cast<double>(q) * params.w;
  if (std::abs(pv - qw) > 1e-12 * (std::abs(pv) + std::abs(qw)))
    throw DomainError("p v = q w does not hold");
}

double rational_argument(const BarnesParams& params, std::int64_t q) {
  const cplx a = static_cast<double>(q) * params.alpha / params.v;
  if (std::abs(a.imag()) > 1e-10 * std::max(1.0, std::abs(a)))
    throw ShiftOutOfRange("q alpha / v is not real");
  return a.real();
}

// P(s) [v^{-s} B(p, q, y1, y2) + w^{-s} B(q, p, y2, y1)]; zero when both
// bilateral sums are empty.
EvalResult rational_bilateral(cplx s, const BarnesParams& params, std::int64_t p, std::int64_t q,
                              const ShiftDecomposition& sh) {
  EvalResult r;
  if (p == 1 && q == 1) return r;
  const EvalResult bv = bilateral_rational_continued(p, q, sh.y1, sh.y2, s);
  const EvalResult bw = bilateral_rational_continued(q, p, sh.y2, sh.y1, s);
  const cplx pf = fe_prefactor(s);
  const cplx cv = pf * pow_neg(params.v, s, params.theta);
  const cplx cw = pf * pow_neg(params.w, s, params.theta);
  r.value = cv * bv.value + cw * bw.value;
  r.abs_err_est = std::abs(cv) * bv.abs_err_est + std::abs(cw) * bw.abs_err_est +
                  16.0 * kEps * (std::abs(cv * bv.value) + std::abs(cw * bw.value));
  r.terms_used = bv.terms_used + bw.terms_used;
  r.conditioning_warning = bv.conditioning_warning || bw.conditioning_warning;
  return r;
}

void accumulate(EvalResult& into, const EvalResult& r, cplx coeff) {
  into.value += coeff * r.value;
  into.abs_err_est += std::abs(coeff) * r.abs_err_est + 8.0 * kEps * std::abs(coeff * r.value);
  into.terms_used += r.terms_used;
  into.conditioning_warning = into.conditioning_warning || r.conditioning_warning;
}

std::int64_t tail_cutoff(cplx s, int order, double ratio) {
  return static_cast<std::int64_t>(std::ceil(0.8 * (std::abs(s) + 2.0 * order) * ratio));
}

}  // namespace

void DispatchPolicy::validate() const {
  if (!(sigma_fe < 0.0 && sigma_direct > 2.0))
    throw DomainError("DispatchPolicy: need sigma_fe < 0 < 2 < sigma_direct");
  if (!(afe_C > 1.0)) throw DomainError("DispatchPolicy: afe_C must exceed 1");
  if (afe_x && !(*afe_x >= 1.0)) throw DomainError("DispatchPolicy: afe_x must be >= 1");
  if (!(target_rel_err > 0.0)) throw DomainError("DispatchPolicy: target_rel_err must be positive");
  plan.validate();
}

EvalResult direct_double_sum(cplx s, const BarnesParams& params, std::int64_t M) {
  validate(params);
  if (!(s.real() > 2.0)) throw DomainError("direct_double_sum: requires Re(s) > 2");
  const cplx v = params.v, w = params.w, alpha = params.alpha;
  const double theta = params.theta;
  const double ratio = std::max({1.0, std::abs(w) / std::abs(v), std::abs(v) / std::abs(w)});
  M = std::max({M, tail_cutoff(s, kTailOrder, ratio), std::int64_t{8}});

  // Square block.
  std::vector<kernels::PowerSum> rows(static_cast<std::size_t>(M + 1));
  parallel_for(M + 1, [&](std::int64_t m) {
    rows[static_cast<std::size_t>(m)] = rot_power_sum(alpha + v * static_cast<double>(m), w, M + 1, s, theta);
  });
  cplx square(0.0, 0.0);
  double abs_sum = 0.0;
  for (const auto& r : rows) {
    square += r.sum;
    abs_sum += r.abs_sum;
  }

  EvalResult out;
  out.method = MethodTag::DirectSeries;
  out.value = square;
  out.terms_used = (M + 1) * (M + 1);

  // m > M, all n: Euler-Maclaurin in m, each resulting column sum over n is
  // a Hurwitz zeta at A / w.
  const cplx A = alpha + v * static_cast<double>(M + 1);
  const cplx a1 = A / w;
  const cplx sm1 = s - 1.0;
  accumulate(out, detail::hurwitz_auto(sm1, a1), pow_neg(w, sm1, theta) / (v * sm1));
  accumulate(out, detail::hurwitz_auto(s, a1), 0.5 * pow_neg(w, s, theta));
  cplx vpow = v;
  for (int j = 1; j <= kTailOrder + 1; ++j) {
    const cplx u = s + (2.0 * j - 1.0);
    const cplx coeff = bernoulli_2k_over_factorial(j) * pochhammer(s, 2 * j - 1) * vpow * pow_neg(w, u, theta);
    const EvalResult h = detail::hurwitz_auto(u, a1);
    if (j <= kTailOrder) {
      accumulate(out, h, coeff);
    } else {
      out.abs_err_est += std::abs(coeff * h.value);
    }
    vpow *= v * v;
  }

  // 0 <= m <= M, n > M: Euler-Maclaurin in n per row.
  std::vector<cplx> tails(static_cast<std::size_t>(M + 1));
  std::vector<double> tail_errs(static_cast<std::size_t>(M + 1));
  parallel_for(M + 1, [&](std::int64_t m) {
    const cplx G = alpha + v * static_cast<double>(m) + w * static_cast<double>(M + 1);
    const cplx gs = pow_neg(G, s, theta);
    const cplx inv_g = 1.0 / G;
    cplx t = gs * G / (w * sm1) + 0.5 * gs;
    cplx pw = gs * inv_g;
    cplx wpow = w;
    cplx poch = s;
    for (int j = 1; j <= kTailOrder; ++j) {
      t += bernoulli_2k_over_factorial(j) * poch * wpow * pw;
      poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
      wpow *= w * w;
      pw *= inv_g * inv_g;
    }
    tails[static_cast<std::size_t>(m)] = t;
    tail_errs[static_cast<std::size_t>(m)] =
        std::abs(bernoulli_2k_over_factorial(kTailOrder + 1) * poch * wpow * pw) + 8.0 * kEps * std::abs(t);
  });
  for (std::size_t i = 0; i < tails.size(); ++i) {
    out.value += tails[i];
    out.abs_err_est += tail_errs[i];
  }
  out.abs_err_est += 8.0 * kEps * abs_sum;
  return checked(out);
}

double approx_fe_auto_x(cplx s, double C) { return std::max(1e3, 1.2 * C * std::abs(s.imag()) / kTwoPi); }

namespace {

void check_afe_args(cplx s, const BarnesParams& params, double x, double C) {
  validate(params);
  refuse_poles(s);
  if (!(s.real() > 0.0 && s.real() < 2.0)) throw DomainError("approx_fe: requires 0 < Re(s) < 2");
  if (!(C > 1.0)) throw DomainError("approx_fe: C must exceed 1");
  if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("approx_fe: x must be >= 1");
  if (std::abs(s.imag()) > kTwoPi * x / C) throw RangeError("approx_fe: |t| exceeds 2 pi x / C");
}

// Leading part of the truncation error: half the two axis tails beyond X
// minus half the two boundary sums at X. Returns |tails| + |edges| with the
// row-X sum taken from the caller when available.
double afe_error_scale(cplx s, const BarnesParams& params, std::int64_t X, const cplx* row_x) {
  const cplx v = params.v, w = params.w, alpha = params.alpha;
  const double theta = params.theta;
  const double shift = static_cast<double>(X + 1);
  const cplx tails = 0.5 * (pow_neg(w, s, theta) * detail::hurwitz_auto(s, alpha / w + shift).value +
                            pow_neg(v, s, theta) * detail::hurwitz_auto(s, alpha / v + shift).value);
  const cplx row = row_x ? *row_x : rot_power_sum(alpha + v * static_cast<double>(X), w, X + 1, s, theta).sum;
  const cplx column = rot_power_sum(alpha + w * static_cast<double>(X), v, X + 1, s, theta).sum;
  return std::abs(tails) + 0.5 * std::abs(row + column);
}

}  // namespace

EvalResult approx_fe(cplx s, const BarnesParams& params, double x, double C) {
  check_afe_args(s, params, x, C);
  const cplx v = params.v, w = params.w, alpha = params.alpha;
  const double theta = params.theta;
  const auto X = static_cast<std::int64_t>(std::floor(x));

  std::vector<kernels::PowerSum> rows(static_cast<std::size_t>(X + 1));
  parallel_for(X + 1, [&](std::int64_t m) {
    rows[static_cast<std::size_t>(m)] = rot_power_sum(alpha + v * static_cast<double>(m), w, X + 1, s, theta);
  });
  cplx square(0.0, 0.0);
  double abs_sum = 0.0;
  for (const auto& r : rows) {
    square += r.sum;
    abs_sum += r.abs_sum;
  }
  const cplx sm2 = s - 2.0;
  const cplx main = (pow_neg(alpha + v * x, sm2, theta) + pow_neg(alpha + w * x, sm2, theta) -
                     pow_neg(alpha + v * x + w * x, sm2, theta)) /
                    (v * w * (s - 1.0) * sm2);

  EvalResult r;
  r.value = square + main;
  r.abs_err_est = 2.0 * afe_error_scale(s, params, X, &rows.back().sum) + 8.0 * kEps * (abs_sum + std::abs(main));
  r.method = MethodTag::ApproxFE;
  r.terms_used = (X + 1) * (X + 1);
  return checked(r);
}

EvalResult func_eq_indep(cplx s, const BarnesParams& params, const TruncationPlan& plan) {
  validate(params);
  refuse_poles(s);
  const ShiftDecomposition sh = decompose_shift(params);
  EvalResult r = regularized(s, false, [&](cplx z) {
    const EvalResult bv = bilateral_indep(params.v, params.w, sh.y1, sh.y2, z, plan);
    const EvalResult bw = bilateral_indep(params.w, params.v, sh.y2, sh.y1, z, plan);
    const cplx pf = fe_prefactor(z);
    EvalResult out;
    accumulate(out, bv, pf * pow_neg(params.v, z, params.theta));
    accumulate(out, bw, pf * pow_neg(params.w, z, params.theta));
    out.guard_skips = bv.guard_skips + bw.guard_skips;
    return out;
  });
  r.method = MethodTag::FuncEqIndep;
  return checked(r);
}

EvalResult func_eq_rational_hurwitz(cplx s, const BarnesParams& params, std::int64_t p, std::int64_t q,
                                    RationalForm form) {
  validate(params);
  refuse_poles(s);
  check_rational(params, p, q);
  const ShiftDecomposition sh = decompose_shift(params);
  const cplx v = params.v, alpha = params.alpha;
  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  const double a = rational_argument(params, q);
  const double arg = form == RationalForm::Corrected ? reduce_unit_interval(a) : a;
  const cplx coeff = form == RationalForm::Corrected
                         ? (pd + qd) / (2.0 * pd * v) - alpha * qd / (pd * v * v)
                         : (pd + qd) / (pd * v) - v * pd / (2.0 * qd) - v / 2.0 - alpha * qd / (pd * v * v);
  EvalResult r = regularized(s, true, [&](cplx z) {
    EvalResult out = rational_bilateral(z, params, p, q, sh);
    const cplx log_q = std::log(qd);
    const cplx c1 = coeff * std::exp((z - 1.0) * log_q) * pow_neg(v, z - 1.0, params.theta);
    const cplx c2 = std::exp((z - 1.0) * log_q) / pd * pow_neg(v, z, params.theta);
    accumulate(out, detail::hurwitz_auto(z, arg), c1);
    accumulate(out, detail::hurwitz_auto(z - 1.0, arg), c2);
    return out;
  });
  r.method = MethodTag::FuncEqRationalHurwitz;
  return checked(r);
}

EvalResult func_eq_rational_lerch(cplx s, const BarnesParams& params, std::int64_t p, std::int64_t q,
                                  RationalForm form) {
  validate(params);
  refuse_poles(s);
  check_rational(params, p, q);
  const ShiftDecomposition sh = decompose_shift(params);
  const cplx v = params.v, alpha = params.alpha;
  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  const double a = rational_argument(params, q);
  const cplx coeff = form == RationalForm::Corrected
                         ? alpha * qd / (pd * v * v) - (pd + qd) / (2.0 * pd * v)
                         : alpha * qd / (pd * v * v) - (pd + qd) / (pd * v) + v * pd / (2.0 * qd) + v / 2.0;
  // Sum over n >= 1 of e^{2 pi i n lam} n^{-u}, or the (3)-normalized
  // zeta_L(u, 1, lam) = e^{-2 pi i lam} times it.
  auto lerch = [&](cplx u, double lam) {
    EvalResult l = detail::periodic_zeta(u, lam);
    if (form == RationalForm::AsPrinted) l.value *= cis2pi_frac(-1.0, lam);
    return l;
  };
  EvalResult r = regularized(s, true, [&](cplx z) {
    EvalResult inner = rational_bilateral(z, params, p, q, sh);
    const cplx pf = fe_prefactor(z);
    // rational_bilateral already carries the prefactor; the remaining terms
    // are multiplied by it here.
    const cplx log_q = std::log(qd);
    const cplx e_pis = std::exp(cplx(0.0, kPi) * z);
    const cplx c2 = pf * std::exp((z - 1.0) * log_q) * pow_neg(v, z, params.theta) * (z - 1.0) /
                    (cplx(0.0, kTwoPi) * pd);
    accumulate(inner, lerch(2.0 - z, -a), c2);
    accumulate(inner, lerch(2.0 - z, a), c2 * e_pis);
    const cplx c1 = -pf * coeff * std::exp((z - 1.0) * log_q) * pow_neg(v, z - 1.0, params.theta);
    accumulate(inner, lerch(1.0 - z, -a), c1);
    accumulate(inner, lerch(1.0 - z, a), -c1 * e_pis);
    return inner;
  });
  r.method = MethodTag::FuncEqRationalLerch;
  return checked(r);
}

EvalResult iterated_hurwitz(cplx s, const BarnesParams& params, const EMConfig& cfg, std::int64_t outer_cutoff) {
  validate(params);
  refuse_poles(s);
  cfg.validate();
  const int K = std::min(cfg.bernoulli_order, 29);
  const std::int64_t M = outer_cutoff > 0 ? outer_cutoff : std::max<std::int64_t>(10, tail_cutoff(s, K, 1.0));
  const cplx v = params.v, w = params.w, alpha = params.alpha;
  const cplx c = v / w;

  std::vector<EvalResult> inner(static_cast<std::size_t>(M));
  parallel_for(M, [&](std::int64_t m) {
    inner[static_cast<std::size_t>(m)] = detail::hurwitz_auto(s, (alpha + v * static_cast<double>(m)) / w);
  });
  EvalResult acc;
  for (const auto& r : inner) accumulate(acc, r, 1.0);

  const cplx aM = (alpha + v * static_cast<double>(M)) / w;
  accumulate(acc, detail::hurwitz_auto(s - 1.0, aM), 1.0 / ((s - 1.0) * c));
  accumulate(acc, detail::hurwitz_auto(s, aM), 0.5);
  cplx cpow = c;
  for (int j = 1; j <= K + 1; ++j) {
    const cplx coeff = bernoulli_2k_over_factorial(j) * cpow * pochhammer(s, 2 * j - 2);
    const EvalResult h = detail::hurwitz_auto(s + (2.0 * j - 1.0), aM, true);
    if (j <= K) {
      accumulate(acc, h, coeff);
    } else {
      acc.abs_err_est += std::abs(coeff * h.value);
    }
    cpow *= c * c;
  }
  const cplx ws = pow_neg(w, s, params.theta);
  EvalResult r;
  r.value = ws * acc.value;
  r.abs_err_est = std::abs(ws) * acc.abs_err_est;
  r.terms_used = acc.terms_used;
  r.conditioning_warning = acc.conditioning_warning;
  r.method = MethodTag::IteratedHurwitz;
  return checked(r);
}

namespace {

Rational require_rational(const BarnesParams& params, const DispatchPolicy& policy) {
  const RatioClass rc = policy.ratio_class ? *policy.ratio_class : classify_ratio(params.v, params.w);
  if (const auto* r = std::get_if<Rational>(&rc)) return *r;
  throw DomainError("rational functional equation needs a rational ratio w/v");
}

bool accurate(const EvalResult& r, double target) {
  return r.abs_err_est <= target * std::abs(r.value) || r.abs_err_est <= target * 1e-300;
}

}  // namespace

EvalResult evaluate_with(MethodTag method, cplx s, const BarnesParams& params, const DispatchPolicy& policy) {
  policy.validate();
  switch (method) {
    case MethodTag::DirectSeries:
      return direct_double_sum(s, params);
    case MethodTag::ApproxFE:
      return approx_fe(s, params, policy.afe_x.value_or(approx_fe_auto_x(s, policy.afe_C)), policy.afe_C);
    case MethodTag::FuncEqIndep:
      return func_eq_indep(s, params, policy.plan);
    case MethodTag::FuncEqRationalHurwitz: {
      const Rational r = require_rational(params, policy);
      return func_eq_rational_hurwitz(s, params, r.p, r.q);
    }
    case MethodTag::FuncEqRationalLerch: {
      const Rational r = require_rational(params, policy);
      return func_eq_rational_lerch(s, params, r.p, r.q);
    }
    case MethodTag::IteratedHurwitz:
      return iterated_hurwitz(s, params);
    default:
      throw DomainError("method " + std::string(to_string(method)) + " does not evaluate the double zeta");
  }
}

EvalResult evaluate(cplx s, const BarnesParams& params, const DispatchPolicy& policy) {
  policy.validate();
  validate(params);
  refuse_poles(s);
  const double sigma = s.real();
  MethodTag preferred = MethodTag::IteratedHurwitz;
  if (sigma >= policy.sigma_direct) {
    preferred = MethodTag::DirectSeries;
  } else if (sigma <= policy.sigma_fe) {
    const RatioClass rc = policy.ratio_class ? *policy.ratio_class : classify_ratio(params.v, params.w);
    preferred = std::holds_alternative<Rational>(rc) ? MethodTag::FuncEqRationalHurwitz : MethodTag::FuncEqIndep;
  } else if (sigma > 0.0 && sigma < 2.0) {
    const double x = policy.afe_x.value_or(approx_fe_auto_x(s, policy.afe_C));
    if (std::abs(s.imag()) <= kTwoPi * x / policy.afe_C) preferred = MethodTag::ApproxFE;
  }
  if (preferred == MethodTag::IteratedHurwitz) return iterated_hurwitz(s, params);
  if (preferred == MethodTag::ApproxFE) {
    // The truncated sum costs O(x^2); run it only when its error scale,
    // measured against the oracle value, meets the target.
    EvalResult oracle = iterated_hurwitz(s, params);
    const double x = policy.afe_x.value_or(approx_fe_auto_x(s, policy.afe_C));
    const auto X = static_cast<std::int64_t>(std::floor(x));
    if (2.0 * afe_error_scale(s, params, X, nullptr) > policy.target_rel_err * std::abs(oracle.value)) return oracle;
    EvalResult afe = approx_fe(s, params, x, policy.afe_C);
    return accurate(afe, policy.target_rel_err) ? afe : oracle;
  }

  std::optional<EvalResult> first;
  try {
    first = evaluate_with(preferred, s, params, policy);
    if (accurate(*first, policy.target_rel_err)) return *first;
  } catch (const PoleError&) {
    throw;
  } catch (const Error&) {
  }
  try {
    EvalResult fallback = iterated_hurwitz(s, params);
    if (first && first->abs_err_est < fallback.abs_err_est) return *first;
    return fallback;
  } catch (const Error&) {
    if (first) return *first;
    throw;
  }
}

cplx residue_probe(const BarnesParams& params, int j, double radius) {
  if (j != 1 && j != 2) throw DomainError("residue_probe: j must be 1 or 2");
  if (!(radius > 0.0 && radius <= 0.1)) throw DomainError("residue_probe: radius must lie in (0, 0.1]");
  cplx acc(0.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    const cplx d = std::polar(radius, kPi / 4 + kPi / 2 * k);
    acc += d * iterated_hurwitz(static_cast<double>(j) + d, params).value;
  }
  return acc / 4.0;
}

}  // namespace barnes
