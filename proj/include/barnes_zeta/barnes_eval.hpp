#pragma once

#include <cstdint>
#include <optional>

#include "barnes_zeta/eta_series.hpp"
#include "barnes_zeta/eval_result.hpp"
#include "barnes_zeta/hurwitz_lerch.hpp"
#include "barnes_zeta/param_domain.hpp"

namespace barnes {

struct DispatchPolicy {
  double sigma_direct = 2.5;
  double sigma_fe = -0.25;
  double afe_C = 2.0;
  std::optional<double> afe_x;
  // A route is accepted only when abs_err_est <= target_rel_err * |value|;
  // otherwise the iterated Hurwitz evaluator is used.
  double target_rel_err = 1e-6;
  // Skips classify_ratio, e.g. for parameters given symbolically.
  std::optional<RatioClass> ratio_class;
  TruncationPlan plan;

  void validate() const;
};

// Which closed-form coefficient the rational functional equations use.
// Corrected is homogeneous in (alpha, v, w) and takes the Hurwitz argument
// reduced into (0, 1]; AsPrinted reproduces the published coefficient cluster
// and the unreduced argument q alpha / v.
enum class RationalForm { Corrected, AsPrinted };

// Square block 0 <= m, n <= M summed directly, remaining tails summed by
// Euler-Maclaurin in the outer index. M is raised when needed for the tail
// expansion to converge. Requires Re(s) > 2.
EvalResult direct_double_sum(cplx s, const BarnesParams& params, std::int64_t M = 0);

// Truncated double sum over 0 <= m, n <= x plus the closed-form main term.
// abs_err_est is twice the half-weighted boundary sums, of order x^{1 - sigma}.
EvalResult approx_fe(cplx s, const BarnesParams& params, double x, double C = 2.0);

// x = max(10^3, 1.2 C |t| / (2 pi)).
double approx_fe_auto_x(cplx s, double C);

// Ratio w/v imaginary or real irrational.
EvalResult func_eq_indep(cplx s, const BarnesParams& params, const TruncationPlan& plan = {});

// Ratio p v = q w.
EvalResult func_eq_rational_hurwitz(cplx s, const BarnesParams& params, std::int64_t p, std::int64_t q,
                                    RationalForm form = RationalForm::Corrected);
EvalResult func_eq_rational_lerch(cplx s, const BarnesParams& params, std::int64_t p, std::int64_t q,
                                  RationalForm form = RationalForm::Corrected);

// w^{-s} sum over m >= 0 of zeta_H(s, (alpha + v m) / w): the first
// outer_cutoff terms directly, the rest by Euler-Maclaurin in m.
// outer_cutoff = 0 picks a cutoff from s and cfg.bernoulli_order.
EvalResult iterated_hurwitz(cplx s, const BarnesParams& params, const EMConfig& cfg = {},
                            std::int64_t outer_cutoff = 0);

// Runs one named route with default settings. Rational routes need a
// rational ratio, FuncEqIndep an independent one.
EvalResult evaluate_with(MethodTag method, cplx s, const BarnesParams& params,
                         const DispatchPolicy& policy = {});

EvalResult evaluate(cplx s, const BarnesParams& params, const DispatchPolicy& policy = {});

// Mean of (s - j) iterated_hurwitz(s) over four points of |s - j| = radius.
cplx residue_probe(const BarnesParams& params, int j, double radius = 0.01);

}  // namespace barnes
