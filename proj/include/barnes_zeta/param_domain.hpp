#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "barnes_zeta/eval_result.hpp"

namespace barnes {

struct HalfPlaneSpec {
  double theta = 0.0;
};

// True iff Re(z e^{-i theta}) > 0.
bool in_half_plane(cplx z, const HalfPlaneSpec& spec);

struct BarnesParams {
  cplx alpha;
  cplx v;
  cplx w;
  double theta = 0.0;
};

// Validates alpha, v, w against H(theta). Without theta, picks
// arg((alpha + v + w) / 3) clamped into the arc of admissible directions.
BarnesParams make_params(cplx alpha, cplx v, cplx w, std::optional<double> theta = std::nullopt);

// Throws DomainError unless params satisfy the membership invariants.
void validate(const BarnesParams& params);

struct ShiftDecomposition {
  double y1 = 0.0;
  double y2 = 0.0;
  bool exact = false;
};

struct ImaginaryRatio {
  double im_part;
};
struct RealIrrational {};
struct Rational {
  std::int64_t p;
  std::int64_t q;
};
using RatioClass = std::variant<ImaginaryRatio, RealIrrational, Rational>;

inline constexpr std::int64_t kDefaultMaxDenominator = 1000000;
inline constexpr double kDefaultRatioTol = 1e-10;

// Continued-fraction classification of w/v. A convergent p/q is accepted when
// |q w - p v| <= tol * sqrt(|v| |w|), which keeps the test symmetric in v, w
// and invariant under common real scaling.
RatioClass classify_ratio(cplx v, cplx w, std::int64_t max_denominator = kDefaultMaxDenominator,
                          double tol = kDefaultRatioTol);

// Solves alpha = v (1 - y1) + w (1 - y2). Real-collinear v, w use y1 = y2.
ShiftDecomposition decompose_shift(const BarnesParams& params);

}  // namespace barnes
