#pragma once

#include "barnes_zeta/kernels/power_sum.hpp"

namespace barnes::kernels::detail {

PowerSum ap_power_sum_scalar(cplx a, cplx step, std::int64_t count, cplx s, double cycles);

#if defined(BARNES_ZETA_HAVE_AVX2)
PowerSum ap_power_sum_avx2(cplx a, cplx step, std::int64_t count, cplx s, double cycles);
#endif

}  // namespace barnes::kernels::detail
