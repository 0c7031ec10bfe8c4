#pragma once

#include <cstdint>

#include "barnes_zeta/eval_result.hpp"

namespace barnes {

// Euler-Maclaurin controls. cutoff_n is the number of direct terms before the
// tail expansion; bernoulli_order is the number of B_{2k} corrections.
struct EMConfig {
  std::int64_t cutoff_n = 50;
  int bernoulli_order = 12;

  // max(50, 2|s|) for Re(s) >= 0; max(6, 1.5 (|s| + 2 order) / (2 pi)) for Re(s) < 0,
  // where the direct terms grow and a short head keeps cancellation small.
  static EMConfig defaults_for(cplx s);
  void validate() const;
};

EvalResult riemann_zeta(cplx s, const EMConfig& cfg);
EvalResult riemann_zeta(cplx s);

// Requires Re(alpha) > 0.
EvalResult hurwitz_zeta(cplx s, cplx alpha, const EMConfig& cfg);
// Same with default settings; for Re(s) < -3 and real alpha in (0, 1] the
// functional equation is used when its error estimate is smaller.
EvalResult hurwitz_zeta(cplx s, cplx alpha);

// Sum over n >= 0 of e^{2 pi i n lambda} (n + alpha)^{-s}, lambda in (0, 1].
// For lambda < 1 the cutoff is raised as needed so that the twisted tail
// expansion converges; cfg.cutoff_n acts as a lower bound.
EvalResult lerch_zeta(cplx s, cplx alpha, double lambda, const EMConfig& cfg);
EvalResult lerch_zeta(cplx s, cplx alpha, double lambda);

// Right-hand sides of the Hurwitz and Lerch functional equations, written
// with Lerch sums at 1 - s. Both require Re(s) < 0.
EvalResult hurwitz_fe_rhs(cplx s, double alpha);
EvalResult lerch_fe_rhs(cplx s, double alpha, double lambda);

namespace detail {

// Euler-Maclaurin core: sum over n >= 0 of (n + a)^{-s} with n_direct terms
// summed directly. No domain checks: every a + n must avoid the principal
// cut. With scaled = true the result is (s - 1) times the sum, which stays
// finite at s = 1.
EvalResult hurwitz_em(cplx s, cplx a, std::int64_t n_direct, int order, bool scaled);

// Smallest n >= 0 with |n + a| >= radius and Re(n + a) >= 0.
std::int64_t head_length(cplx a, double radius);

// Radius beyond which the tail expansion is accurate to double precision.
double em_radius(cplx s, int order);

// Hurwitz sum with an automatic head length; a may have Re(a) <= 0 as long
// as no a + n lies on the cut.
EvalResult hurwitz_auto(cplx s, cplx a, bool scaled = false);

// Twisted sum for any real lambda (reduced mod 1; integers give Hurwitz).
EvalResult lerch_auto(cplx s, cplx a, double lambda);

// Sum over n >= 1 of e^{2 pi i n lambda} n^{-s}.
EvalResult periodic_zeta(cplx s, double lambda);

}  // namespace detail
}  // namespace barnes
