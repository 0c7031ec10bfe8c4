#include "barnes_zeta/eval_result.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "barnes_zeta/errors.hpp"

namespace barnes {
namespace {

constexpr std::array<std::pair<MethodTag, std::string_view>, 12> kNames{{
    {MethodTag::DirectSeries, "DirectSeries"},
    {MethodTag::ApproxFE, "ApproxFE"},
    {MethodTag::FuncEqIndep, "FuncEqIndep"},
    {MethodTag::FuncEqRationalLerch, "FuncEqRationalLerch"},
    {MethodTag::FuncEqRationalHurwitz, "FuncEqRationalHurwitz"},
    {MethodTag::IteratedHurwitz, "IteratedHurwitz"},
    {MethodTag::EulerMaclaurin, "EulerMaclaurin"},
    {MethodTag::TwistedEulerMaclaurin, "TwistedEulerMaclaurin"},
    {MethodTag::HurwitzFE, "HurwitzFE"},
    {MethodTag::LerchFE, "LerchFE"},
    {MethodTag::EtaSeries, "EtaSeries"},
    {MethodTag::BilateralSeries, "BilateralSeries"},
}};

}  // namespace

std::string_view to_string(MethodTag tag) noexcept {
  for (const auto& [t, name] : kNames)
    if (t == tag) return name;
  return "Unknown";
}

std::optional<MethodTag> parse_method_tag(std::string_view name) noexcept {
  for (const auto& [t, n] : kNames)
    if (n == name) return t;
  return std::nullopt;
}

EvalResult checked(EvalResult r) {
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
    throw NonConvergent(std::string(to_string(r.method)) + " produced a non-finite value");
  if (!std::isfinite(r.abs_err_est) || r.abs_err_est < 0.0)
    throw NonConvergent(std::string(to_string(r.method)) + " produced a non-finite error estimate");
  return r;
}

}  // namespace barnes
