#pragma once

#include <complex>

// Frozen reference values, 20 significant digits, produced by
// tests/oracles/reference_values.py (mpmath, 40 digits).
namespace refvals {

using cplx = std::complex<double>;

inline const cplx kZeta_half_14i{1.767429841384903915e-8, -1.1102028930923116747e-7};
inline const cplx kZeta_m3p5_p7i{-0.41333307121788821695, 1.8418264619701228248};
inline const cplx kHurwitz_1p5p10i_0p3{4.628965132540824505, -3.596445268721698995};
inline const cplx kHurwitz_m2p5m4i_0p7{-0.3251410309411367482, 0.0030753056231001780545};
inline const cplx kHurwitz_m10p5_1{0.011146122473942814136, 0.0};
inline const cplx kLerch_2_1_half{0.82246703342411321824, 0.0};
inline const cplx kLerch_0p5p20i_0p4_third{3.707443490650109414, -0.24020092384354411636};
inline const cplx kLerch_m1p5p3i_0p6_quarter{0.34621489726023712904, 8.346726491681691743};
inline const cplx kPeriodic_3_fifth{-0.76635522852743694087, 0.49610042688479712281};
inline const cplx kBarnes_2p5p1i_1p5_1_2{0.24276710069873750783, -0.43681414252107256988};
inline const cplx kBarnes_4_0p3_1_sqrt2{124.02791155587166717, 0.0};
inline const cplx kBarnes_3p5_i{-0.47125547428907285393, -7.5136273771982205779};

}  // namespace refvals
