#pragma once

#include <cstdint>

#include "barnes_zeta/eval_result.hpp"

namespace barnes {

struct EtaParams {
  double beta0;
  double p1;
  double p2;
};

struct TruncationPlan {
  std::int64_t max_index = 100000;
  double target_tail = 1e-14;
  double guard_epsilon = 1e-8;

  void validate() const;
};

// <x>: the representative of x modulo 1 in (-1/2, 1/2].
double nearest_int_signed(double x);

// Sum over n >= 1 of e^{2 pi i n (p1 beta0 + p2)} / ((1 - e^{2 pi i n beta0}) n^{1-s}).
// Indices with |<n beta0>| < guard_epsilon / n are skipped and counted.
EvalResult eta(const EtaParams& params, cplx s, const TruncationPlan& plan);

// Sum over n != 0 of e^{2 pi i n X} / ((e^{2 pi i n w/v} - 1) n^{1-s}) with
// X = (v y1 + w y2) / v and n^{1-s} = |n|^{1-s} e^{i pi (1-s)} for n < 0.
// Imaginary ratios are summed directly with a geometric tail bound; real
// ratios go through the eta decomposition and need Re(s) < 0.
EvalResult bilateral_indep(cplx v, cplx w, double y1, double y2, cplx s, const TruncationPlan& plan);

// Same sum for w/v = p/q, restricted to q not dividing n. Direct summation,
// Re(s) < 0.
EvalResult bilateral_rational(std::int64_t p, std::int64_t q, double y1, double y2, cplx s,
                              const TruncationPlan& plan);

// The same sum continued to the whole plane through residue classes mod q.
EvalResult bilateral_rational_continued(std::int64_t p, std::int64_t q, double y1, double y2, cplx s);

struct ExpBoundSample {
  double lhs;        // |1 / (e^z - 1)|
  double rhs_coeff;  // e^{-(Re z)_+}
};

// Requires z at distance >= eps from every 2 pi i m.
ExpBoundSample inv_expm1_bound_check(cplx z, double eps);

}  // namespace barnes
