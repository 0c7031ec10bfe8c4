#include <algorithm>
#include <cmath>
#include <vector>

#include "barnes_zeta/analysis.hpp"
#include "barnes_zeta/errors.hpp"
#include "doctest.h"

using namespace barnes;

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::vector<ScanRecord> synthetic(double t0, double t1, int n, double (*f)(double)) {
  std::vector<ScanRecord> out;
  for (int i = 0; i < n; ++i) {
    ScanRecord r;
    r.t = t0 * std::pow(t1 / t0, i / (n - 1.0));
    r.magnitude = f(r.t);
    out.push_back(r);
  }
  return out;
}

std::vector<cplx> vw11_grid() {
  std::vector<cplx> grid;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const double sigma = -3.0 + 6.0 * (i + 0.5) / 7.0;
      const double t = -20.0 + 40.0 * (j + 0.5) / 7.0;
      grid.emplace_back(sigma, t);
    }
  }
  return grid;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("identity check on simple points") {
  const auto r2 = verify_identity_vw11(2.0, {cplx(3.0, 0.0)}, 1e-8);
  CHECK(r2.passed());
  CHECK(r2.max_rel_dev < 1e-8);
  const auto r1 = verify_identity_vw11(1.0, {cplx(4.0, 0.0)}, 1e-10);
  CHECK(r1.passed());
  const auto r08 = verify_identity_vw11(0.8, {cplx(-1.5, 3.0)}, 1e-6);
  CHECK(r08.passed());
  CHECK(r08.points.size() == 1);
}

TEST_CASE("identity check on the 7x7 grid") {
  for (double alpha : {0.8, 1.0, 2.0}) {
    const auto rep = verify_identity_vw11(alpha, vw11_grid(), 1e-5);
    CHECK(rep.passed());
    CHECK(rep.max_rel_dev < 1e-5);
    CHECK(rep.points.size() == 49);
  }
}

TEST_CASE("identity check reports failures instead of throwing") {
  const auto rep = verify_identity_vw11(2.0, {cplx(1.0, 0.0), cplx(3.0, 0.0)}, 1e-8);
  CHECK_FALSE(rep.passed());
  REQUIRE(rep.failing.size() == 1);
  CHECK(rep.failing[0] == cplx(1.0, 0.0));
  CHECK_FALSE(rep.points[0].error.empty());
}

TEST_CASE("cross checks") {
  const auto a = cross_check(-1.5, make_params(1.0, 1.0, kSqrt2), {MethodTag::FuncEqIndep, MethodTag::IteratedHurwitz}, 1.0);
  CHECK(a.passed());
  REQUIRE(a.pairs.size() == 1);
  const auto b = cross_check(5.0, make_params(1.0, 1.0, {0.0, 1.0}), {MethodTag::DirectSeries, MethodTag::IteratedHurwitz}, 1.0);
  CHECK(b.passed());
  // DirectSeries does not apply at s = -1, leaving one method.
  CHECK_THROWS_AS(cross_check(-1.0, make_params(1.0, 1.0, kSqrt2), {MethodTag::DirectSeries, MethodTag::IteratedHurwitz}, 1.0),
                  NotEnoughMethods);
}

TEST_CASE("exponent fit on synthetic data") {
  const auto pw = synthetic(10.0, 1000.0, 300, [](double t) { return std::pow(t, 0.25); });
  const auto f = fit_exponent(pw, 8);
  CHECK(f.slope == doctest::Approx(0.25).epsilon(1e-3 / 0.25));
  CHECK(std::abs(f.slope - 0.25) < 1e-3);
  CHECK(f.windows == 8);
  const auto flat = synthetic(10.0, 1000.0, 300, [](double) { return 3.0; });
  CHECK(std::abs(fit_exponent(flat, 8).slope) < 1e-6);
  CHECK_THROWS_AS(fit_exponent(pw, 3), InsufficientSpan);
  CHECK_THROWS_AS(fit_exponent(synthetic(10.0, 50.0, 100, [](double t) { return t; }), 8), InsufficientSpan);
}

TEST_CASE("growth scan") {
  const auto p = make_params(1.0, 1.0, kSqrt2);
  const auto recs = growth_scan(2.5, 10.0, 1000.0, 20, p);
  REQUIRE(recs.size() >= 40);
  CHECK(recs.front().t == doctest::Approx(10.0));
  CHECK(recs.back().t == doctest::Approx(1000.0));
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].ok);
    CHECK(std::isfinite(recs[i].magnitude));
    CHECK(std::isfinite(recs[i].err));
    if (i > 0) CHECK(recs[i].t > recs[i - 1].t);
    lo = std::min(lo, recs[i].magnitude);
    hi = std::max(hi, recs[i].magnitude);
  }
  // |zeta_2(2.5 + it)| <= zeta_2(2.5) on the absolute-convergence line.
  const double bound = std::abs(evaluate(2.5, p).value);
  CHECK(hi <= bound);
  CHECK(std::abs(fit_exponent(recs, 8).slope) < 0.02);
  CHECK_THROWS_AS(growth_scan(1.5, 1.0, 100.0, 10, p), DomainError);
  CHECK_THROWS_AS(growth_scan(1.5, 100.0, 10.0, 10, p), DomainError);
}

TEST_CASE("moment integral") {
  const auto p = make_params(1.0, 1.0, kSqrt2);
  const auto empty = moment_integral(1.5, 1, {2.0}, p, 2);
  REQUIRE(empty.points.size() == 1);
  CHECK(empty.points[0].value == 0.0);

  const std::vector<double> Ts{10.0, 20.0, 30.0, 40.0};
  const auto c1 = moment_integral(1.5, 1, Ts, p, 4);
  const auto c2 = moment_integral(1.5, 2, Ts, p, 4);
  REQUIRE(c1.points.size() == 4);
  for (std::size_t i = 1; i < c1.points.size(); ++i) {
    CHECK(c1.points[i].value >= c1.points[i - 1].value);
    CHECK(c2.points[i].value >= c2.points[i - 1].value);
  }
  const auto study = moment_step_halving(1.5, 1, Ts, p, 4);
  CHECK(study.max_rel_change < 0.01);
  for (std::size_t i = 0; i < Ts.size(); ++i) CHECK(study.fine.points[i].value == doctest::Approx(c1.points[i].value).epsilon(0.01));

  CHECK_THROWS_AS(moment_integral(2.5, 1, Ts, p, 4), DomainError);
  CHECK_THROWS_AS(moment_integral(1.5, 0, Ts, p, 4), DomainError);
  CHECK_THROWS_AS(moment_integral(1.5, 1, {20.0, 10.0}, p, 4), DomainError);
}

TEST_CASE("moment growth fit") {
  MomentCurve curve;
  for (double T : {50.0, 100.0, 200.0, 400.0}) curve.points.push_back({T, 3.0 * std::pow(T, 1.1)});
  const auto f = fit_moment_growth(curve);
  CHECK(f.slope == doctest::Approx(1.1).epsilon(1e-12));
  curve.points.pop_back();
  CHECK_THROWS_AS(fit_moment_growth(curve), InsufficientSpan);
}

}
