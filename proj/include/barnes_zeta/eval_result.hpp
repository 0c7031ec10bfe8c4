#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

namespace barnes {

using cplx = std::complex<double>;

enum class MethodTag {
  // Double zeta routes.
  DirectSeries,
  ApproxFE,
  FuncEqIndep,
  FuncEqRationalLerch,
  FuncEqRationalHurwitz,
  IteratedHurwitz,
  // Single-variable building blocks.
  EulerMaclaurin,
  TwistedEulerMaclaurin,
  HurwitzFE,
  LerchFE,
  EtaSeries,
  BilateralSeries,
};

std::string_view to_string(MethodTag tag) noexcept;
std::optional<MethodTag> parse_method_tag(std::string_view name) noexcept;

struct EvalResult {
  cplx value{};
  double abs_err_est = 0.0;
  MethodTag method = MethodTag::EulerMaclaurin;
  std::int64_t terms_used = 0;
  // Set when the method ran outside its comfortable regime (for example a
  // Lerch parameter close to an integer); abs_err_est is inflated accordingly.
  bool conditioning_warning = false;
  // Indices dropped by the small-denominator guard.
  std::int64_t guard_skips = 0;
};

// Throws NonConvergent when value or error is not finite.
EvalResult checked(EvalResult r);

}  // namespace barnes
