#include "barnes_zeta/param_domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"

namespace barnes {
namespace {

constexpr double kCollinearTol = 1e-12;
constexpr double kShiftSlack = 1e-12;
constexpr double kThetaMargin = 1e-3;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double wrap_pi(double x) { return std::remainder(x, kTwoPi); }

double clean_shift(double y) {
  if (y < 0.0 && y > -kShiftSlack) return 0.0;
  return y;
}

}  // namespace

bool in_half_plane(cplx z, const HalfPlaneSpec& spec) {
  if (!finite(z)) return false;
  return (z * std::polar(1.0, -spec.theta)).real() > 0.0;
}

void validate(const BarnesParams& p) {
  if (!finite(p.alpha) || !finite(p.v) || !finite(p.w) || !std::isfinite(p.theta))
    throw DomainError("parameters must be finite");
  if (std::abs(p.v) == 0.0 || std::abs(p.w) == 0.0) throw DomainError("v and w must be nonzero");
  const HalfPlaneSpec h{p.theta};
  if (!in_half_plane(p.alpha, h)) throw DomainError("alpha is outside H(theta)");
  if (!in_half_plane(p.v, h)) throw DomainError("v is outside H(theta)");
  if (!in_half_plane(p.w, h)) throw DomainError("w is outside H(theta)");
}

BarnesParams make_params(cplx alpha, cplx v, cplx w, std::optional<double> theta) {
  BarnesParams p{alpha, v, w, 0.0};
  if (!finite(alpha) || !finite(v) || !finite(w)) throw DomainError("parameters must be finite");
  if (std::abs(v) == 0.0 || std::abs(w) == 0.0 || std::abs(alpha) == 0.0)
    throw DomainError("alpha, v and w must be nonzero");
  if (theta) {
    p.theta = *theta;
  } else {
    const cplx mean = (alpha + v + w) / 3.0;
    if (std::abs(mean) == 0.0) throw DomainError("no half plane contains alpha, v and w");
    const double center = std::arg(mean);
    // Admissible directions form the intersection of open arcs of width pi
    // around each parameter; work relative to the mean direction.
    double lo = -kPi, hi = kPi;
    for (cplx z : {alpha, v, w}) {
      const double rel = wrap_pi(std::arg(z) - center);
      lo = std::max(lo, rel - kPi / 2);
      hi = std::min(hi, rel + kPi / 2);
    }
    if (!(lo < hi)) throw DomainError("no half plane contains alpha, v and w");
    const double margin = std::min(kThetaMargin, (hi - lo) / 4);
    p.theta = center + std::clamp(0.0, lo + margin, hi - margin);
    if (p.theta == 0.0 || std::abs(p.theta) < 1e-15) p.theta = 0.0;
  }
  validate(p);
  return p;
}

RatioClass classify_ratio(cplx v, cplx w, std::int64_t max_denominator, double tol) {
  if (std::abs(v) == 0.0 || std::abs(w) == 0.0) throw DegenerateRatio("v and w must be nonzero");
  const cplx r = w / v;
  if (!finite(r)) throw DegenerateRatio("w/v is not finite");
  if (std::abs(r.imag()) > tol) return ImaginaryRatio{r.imag()};
  const double x = r.real();
  if (!(x > 0.0)) throw DegenerateRatio("w/v is real and non-positive");

  const double scale = std::sqrt(std::abs(v) * std::abs(w));
  // Convergents p_k/q_k of x.
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p_cur = static_cast<std::int64_t>(std::floor(x)), q_cur = 1;
  double rem = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (p_cur > 0 && std::max(p_cur, q_cur) <= max_denominator) {
      const cplx resid = static_cast<double>(q_cur) * w - static_cast<double>(p_cur) * v;
      if (std::abs(resid) <= tol * scale) {
        const std::int64_t g = std::gcd(p_cur, q_cur);
        return Rational{p_cur / g, q_cur / g};
      }
    }
    if (rem <= 0.0) break;
    const double inv = 1.0 / rem;
    if (!std::isfinite(inv) || inv > 1e15) break;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    rem = inv - std::floor(inv);
    const std::int64_t p_next = a * p_cur + p_prev;
    const std::int64_t q_next = a * q_cur + q_prev;
    if (std::max(p_next, q_next) > max_denominator) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return RealIrrational{};
}

ShiftDecomposition decompose_shift(const BarnesParams& p) {
  // Work in the frame of v so that v = 1.
  const cplx a = p.alpha / p.v;
  const cplx r = p.w / p.v;
  ShiftDecomposition out;
  if (std::abs(r.imag()) > kCollinearTol * std::abs(r)) {
    // a = (1 - y1) + r (1 - y2): imaginary part fixes y2.
    const double u2 = a.imag() / r.imag();
    const double u1 = a.real() - r.real() * u2;
    out.y1 = clean_shift(1.0 - u1);
    out.y2 = clean_shift(1.0 - u2);
    out.exact = true;
  } else {
    // Collinear: a = (1 + r)(1 - y) with y1 = y2 = y.
    const double y = clean_shift(1.0 - a.real() / (1.0 + r.real()));
    out.y1 = out.y2 = y;
    out.exact = false;
    const cplx back = p.v * (1.0 - y) + p.w * (1.0 - y);
    if (std::abs(back - p.alpha) > 1e-12 * std::abs(p.alpha))
      throw ShiftOutOfRange("alpha is not a real combination of collinear v and w");
  }
  if (!(out.y1 >= 0.0 && out.y1 < 1.0 && out.y2 >= 0.0 && out.y2 < 1.0))
    throw ShiftOutOfRange("shift coordinates fall outside [0, 1)");
  return out;
}

}  // namespace barnes
