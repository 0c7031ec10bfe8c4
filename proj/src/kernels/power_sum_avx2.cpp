#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace barnes::kernels::detail {
namespace {

// Split constants with trailing zero bits so that k * hi is exact.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.4426950408889634074;
constexpr double kPiOver2A = 1.5707963267948966;
constexpr double kPiOver2B = 6.123233995736766e-17;
constexpr double kPiOver2C = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kSincosLimit = 1e8;

#define BZ_INLINE inline __attribute__((always_inline))

BZ_INLINE __m256d set1(double x) { return _mm256_set1_pd(x); }

template <int N>
BZ_INLINE __m256d horner(__m256d x, const double (&c)[N]) {
  __m256d acc = set1(c[N - 1]);
#pragma GCC unroll 16
  for (int i = N - 2; i >= 0; --i) acc = _mm256_fmadd_pd(acc, x, set1(c[i]));
  return acc;
}

// log(x) for positive normal x.
BZ_INLINE __m256d vlog(__m256d x) {
  static constexpr double c[13] = {1.0,       1.0 / 3,  1.0 / 5,  1.0 / 7,  1.0 / 9,
                                   1.0 / 11,  1.0 / 13, 1.0 / 15, 1.0 / 17, 1.0 / 19,
                                   1.0 / 21,  1.0 / 23, 1.0 / 25};
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_field = _mm256_srli_epi64(bits, 52);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_field, magic)),
                            set1(4503599627370496.0 + 1023.0));
  const __m256i mant_bits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);
  const __m256d big = _mm256_cmp_pd(m, set1(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, set1(1.0)));
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, set1(1.0)), _mm256_add_pd(m, set1(1.0)));
  const __m256d f2 = _mm256_mul_pd(f, f);
  const __m256d log_m = _mm256_mul_pd(_mm256_add_pd(f, f), horner(f2, c));
  return _mm256_fmadd_pd(e, set1(kLn2Hi), _mm256_fmadd_pd(e, set1(kLn2Lo), log_m));
}

BZ_INLINE __m256d vatan2(__m256d y, __m256d x) {
  static constexpr double c[13] = {1.0,        -1.0 / 3,  1.0 / 5,   -1.0 / 7, 1.0 / 9,
                                   -1.0 / 11,  1.0 / 13,  -1.0 / 15, 1.0 / 17, -1.0 / 19,
                                   1.0 / 21,   -1.0 / 23, 1.0 / 25};
  const __m256d sign_mask = set1(-0.0);
  const __m256d ax = _mm256_andnot_pd(sign_mask, x);
  const __m256d ay = _mm256_andnot_pd(sign_mask, y);
  const __m256d mx = _mm256_max_pd(ax, ay);
  const __m256d mn = _mm256_min_pd(ax, ay);
  const __m256d a = _mm256_div_pd(mn, mx);
  const __m256d big = _mm256_cmp_pd(a, set1(0.41421356237309503), _CMP_GT_OQ);
  const __m256d r = _mm256_blendv_pd(
      a, _mm256_div_pd(_mm256_sub_pd(a, set1(1.0)), _mm256_add_pd(a, set1(1.0))), big);
  const __m256d off = _mm256_and_pd(big, set1(kPi / 4));
  const __m256d r2 = _mm256_div_pd(
      r, _mm256_add_pd(set1(1.0), _mm256_sqrt_pd(_mm256_fmadd_pd(r, r, set1(1.0)))));
  const __m256d t = _mm256_mul_pd(r2, r2);
  const __m256d atn_r2 = _mm256_mul_pd(r2, horner(t, c));
  __m256d atn = _mm256_fmadd_pd(set1(2.0), atn_r2, off);
  atn = _mm256_blendv_pd(atn, _mm256_sub_pd(set1(kPi / 2), atn),
                         _mm256_cmp_pd(ay, ax, _CMP_GT_OQ));
  atn = _mm256_blendv_pd(atn, _mm256_sub_pd(set1(kPi), atn),
                         _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ));
  return _mm256_or_pd(atn, _mm256_and_pd(y, sign_mask));
}

BZ_INLINE __m256d vexp(__m256d x) {
  static constexpr double c[14] = {1.0,
                                   1.0,
                                   1.0 / 2,
                                   1.0 / 6,
                                   1.0 / 24,
                                   1.0 / 120,
                                   1.0 / 720,
                                   1.0 / 5040,
                                   1.0 / 40320,
                                   1.0 / 362880,
                                   1.0 / 3628800,
                                   1.0 / 39916800,
                                   1.0 / 479001600,
                                   1.0 / 6227020800.0};
  const __m256d underflow = _mm256_cmp_pd(x, set1(-708.0), _CMP_LT_OQ);
  const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, set1(-708.0)), set1(709.0));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, set1(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, set1(kLn2Hi), xc);
  r = _mm256_fnmadd_pd(k, set1(kLn2Lo), r);
  const __m256d p = horner(r, c);
  const __m256i k64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i scale_bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(scale_bits));
  return _mm256_andnot_pd(underflow, result);
}

BZ_INLINE void vsincos(__m256d x, __m256d* s_out, __m256d* c_out) {
  static constexpr double cs[10] = {1.0,
                                    -1.0 / 6,
                                    1.0 / 120,
                                    -1.0 / 5040,
                                    1.0 / 362880,
                                    -1.0 / 39916800,
                                    1.0 / 6227020800.0,
                                    -1.0 / 1307674368000.0,
                                    1.0 / 355687428096000.0,
                                    -1.0 / 121645100408832000.0};
  static constexpr double cc[11] = {1.0,
                                    -1.0 / 2,
                                    1.0 / 24,
                                    -1.0 / 720,
                                    1.0 / 40320,
                                    -1.0 / 3628800,
                                    1.0 / 479001600,
                                    -1.0 / 87178291200.0,
                                    1.0 / 20922789888000.0,
                                    -1.0 / 6402373705728000.0,
                                    1.0 / 2432902008176640000.0};
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, set1(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, set1(kPiOver2A), x);
  r = _mm256_fnmadd_pd(k, set1(kPiOver2B), r);
  r = _mm256_fnmadd_pd(k, set1(kPiOver2C), r);
  const __m256d r2 = _mm256_mul_pd(r, r);
  const __m256d sin_r = _mm256_mul_pd(r, horner(r2, cs));
  const __m256d cos_r = horner(r2, cc);
  const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256d sin_sign = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(q, two), 62));
  const __m256d cos_sign =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), 62));
  *s_out = _mm256_xor_pd(_mm256_blendv_pd(sin_r, cos_r, swap), sin_sign);
  *c_out = _mm256_xor_pd(_mm256_blendv_pd(cos_r, sin_r, swap), cos_sign);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

struct Terms {
  __m256d re, im, mag;
};

// One block of four consecutive indices starting at jd.
BZ_INLINE Terms term_block(__m256d jd, __m256d ar, __m256d ai, __m256d dr, __m256d di, __m256d neg_sr,
                        __m256d si, __m256d cyc, bool twisted) {
  const __m256d zr = _mm256_fmadd_pd(jd, dr, ar);
  const __m256d zi = _mm256_fmadd_pd(jd, di, ai);
  const __m256d lr = _mm256_mul_pd(set1(0.5), vlog(_mm256_fmadd_pd(zr, zr, _mm256_mul_pd(zi, zi))));
  const __m256d li = vatan2(zi, zr);
  const __m256d er = _mm256_fmadd_pd(neg_sr, lr, _mm256_mul_pd(si, li));
  __m256d ei = _mm256_fnmadd_pd(si, lr, _mm256_mul_pd(neg_sr, li));
  if (twisted) {
    const __m256d p = _mm256_mul_pd(jd, cyc);
    const __m256d err = _mm256_fmsub_pd(jd, cyc, p);
    const __m256d f = _mm256_add_pd(
        _mm256_sub_pd(p, _mm256_round_pd(p, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC)), err);
    ei = _mm256_fmadd_pd(set1(kTwoPi), f, ei);
  }
  const __m256d mag = vexp(er);
  __m256d sn, cs;
  const __m256d abs_ei = _mm256_andnot_pd(set1(-0.0), ei);
  if (_mm256_movemask_pd(_mm256_cmp_pd(abs_ei, set1(kSincosLimit), _CMP_GT_OQ)) != 0) {
    alignas(32) double e[4], sv[4], cv[4];
    _mm256_store_pd(e, ei);
    for (int l = 0; l < 4; ++l) {
      sv[l] = std::sin(e[l]);
      cv[l] = std::cos(e[l]);
    }
    sn = _mm256_load_pd(sv);
    cs = _mm256_load_pd(cv);
  } else {
    vsincos(ei, &sn, &cs);
  }
  return {_mm256_mul_pd(mag, cs), _mm256_mul_pd(mag, sn), mag};
}

BZ_INLINE Terms masked(Terms t, __m256d keep) {
  return {_mm256_and_pd(t.re, keep), _mm256_and_pd(t.im, keep), _mm256_and_pd(t.mag, keep)};
}

}  // namespace

PowerSum ap_power_sum_avx2(cplx a, cplx step, std::int64_t count, cplx s, double cycles) {
  const __m256d ar = set1(a.real()), ai = set1(a.imag());
  const __m256d dr = set1(step.real()), di = set1(step.imag());
  const __m256d si = set1(s.imag());
  const __m256d neg_sr = set1(-s.real());
  const __m256d cyc = set1(cycles);
  const bool twisted = cycles != 0.0;
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  // Two interleaved blocks per iteration hide the polynomial latency.
  __m256d re0 = _mm256_setzero_pd(), im0 = _mm256_setzero_pd(), mg0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd(), mg1 = _mm256_setzero_pd();

  std::int64_t j0 = 0;
  for (; j0 + 8 <= count; j0 += 8) {
    const __m256d jd0 = _mm256_add_pd(set1(static_cast<double>(j0)), lane);
    const __m256d jd1 = _mm256_add_pd(jd0, set1(4.0));
    const Terms t0 = term_block(jd0, ar, ai, dr, di, neg_sr, si, cyc, twisted);
    const Terms t1 = term_block(jd1, ar, ai, dr, di, neg_sr, si, cyc, twisted);
    re0 = _mm256_add_pd(re0, t0.re);
    im0 = _mm256_add_pd(im0, t0.im);
    mg0 = _mm256_add_pd(mg0, t0.mag);
    re1 = _mm256_add_pd(re1, t1.re);
    im1 = _mm256_add_pd(im1, t1.im);
    mg1 = _mm256_add_pd(mg1, t1.mag);
  }
  for (; j0 < count; j0 += 4) {
    const __m256d jd = _mm256_add_pd(set1(static_cast<double>(j0)), lane);
    Terms t = term_block(jd, ar, ai, dr, di, neg_sr, si, cyc, twisted);
    const std::int64_t remaining = count - j0;
    if (remaining < 4)
      t = masked(t, _mm256_cmp_pd(lane, set1(static_cast<double>(remaining)), _CMP_LT_OQ));
    re0 = _mm256_add_pd(re0, t.re);
    im0 = _mm256_add_pd(im0, t.im);
    mg0 = _mm256_add_pd(mg0, t.mag);
  }
  return {{hsum(_mm256_add_pd(re0, re1)), hsum(_mm256_add_pd(im0, im1))},
          hsum(_mm256_add_pd(mg0, mg1))};
}

}  // namespace barnes::kernels::detail
