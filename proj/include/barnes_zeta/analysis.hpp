#pragma once

#include <string>
#include <vector>

#include "barnes_zeta/barnes_eval.hpp"

namespace barnes {

struct IdentityPoint {
  cplx s;
  cplx lhs;  // evaluate(s, alpha; 1, 1)
  cplx rhs;  // (1 - alpha) zeta_H(s, alpha) + zeta_H(s - 1, alpha)
  double rel_dev = 0.0;
  MethodTag method = MethodTag::IteratedHurwitz;
  bool ok = false;
  std::string error;  // set when an evaluation threw
};

struct IdentityReport {
  double tol = 0.0;
  double max_rel_dev = 0.0;
  std::vector<IdentityPoint> points;
  std::vector<cplx> failing;
  bool passed() const { return failing.empty(); }
};

IdentityReport verify_identity_vw11(cplx alpha, const std::vector<cplx>& s_grid, double tol,
                                    const DispatchPolicy& policy = {});

struct MethodOutcome {
  MethodTag method;
  bool applicable = false;
  EvalResult result;
  std::string error;
};

struct PairCheck {
  MethodTag a;
  MethodTag b;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

struct CrossCheckReport {
  cplx s;
  std::vector<MethodOutcome> outcomes;
  std::vector<PairCheck> pairs;
  bool passed() const;
};

// Methods that throw are recorded as not applicable. Pairs pass when the
// deviation is within tol_mult times the summed error estimates.
CrossCheckReport cross_check(cplx s, const BarnesParams& params, const std::vector<MethodTag>& methods,
                             double tol_mult, const DispatchPolicy& policy = {});

struct ScanRecord {
  double t = 0.0;
  double magnitude = 0.0;
  MethodTag method = MethodTag::IteratedHurwitz;
  double err = 0.0;
  bool ok = true;
  std::string error;
};

// Log-spaced samples of |zeta_2(sigma + it)| over [t_min, t_max], both ends
// included. Failures are recorded with ok = false.
std::vector<ScanRecord> growth_scan(double sigma, double t_min, double t_max, int samples_per_decade,
                                    const BarnesParams& params, const DispatchPolicy& policy = {});

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int windows = 0;
};

// Splits [t_min, t_max] into log-equal windows, takes the largest magnitude
// in each, and fits log(max) against log(t at the max) by least squares.
ExponentFit fit_exponent(const std::vector<ScanRecord>& records, int windows);

struct MomentPoint {
  double T = 0.0;
  double value = 0.0;
};

struct MomentCurve {
  int k = 1;
  double sigma = 0.0;
  std::vector<MomentPoint> points;
};

// Trapezoid rule for the integral over [2, T] of |zeta_2(sigma + it)|^{2k}
// with about quad_points_per_unit nodes per unit length.
MomentCurve moment_integral(double sigma, int k, const std::vector<double>& T_values, const BarnesParams& params,
                            int quad_points_per_unit, const DispatchPolicy& policy = {});

struct MomentStudy {
  MomentCurve coarse;  // quad_points_per_unit
  MomentCurve fine;    // twice the density; the coarse nodes are every other fine node
  double max_rel_change = 0.0;
};

MomentStudy moment_step_halving(double sigma, int k, const std::vector<double>& T_values,
                                const BarnesParams& params, int quad_points_per_unit,
                                const DispatchPolicy& policy = {});

// Least-squares slope of log(value) against log(T); points with value <= 0
// are dropped. Needs at least four points.
ExponentFit fit_moment_growth(const MomentCurve& curve);

}  // namespace barnes
