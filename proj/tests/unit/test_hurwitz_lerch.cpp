#include <cmath>
#include <algorithm>
#include <random>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"
#include "barnes_zeta/hurwitz_lerch.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace barnes;
using oracle::rel;

TEST_SUITE("hurwitz_lerch") {

TEST_CASE("gamma and Bernoulli helpers") {
  CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-12);
  CHECK(std::abs(complex_gamma(0.5) - std::sqrt(M_PI)) < 1e-13);
  // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
  const cplx z{-2.3, 1.7};
  CHECK(rel(complex_gamma(z) * complex_gamma(1.0 - z), M_PI / std::sin(M_PI * z)) < 1e-12);
  // The recurrence loses digits beyond B_20; larger indices use exact values.
  const auto b = oracle::bernoulli_numbers(20);
  for (int k = 1; k <= 10; ++k) CHECK(bernoulli_2k(k) == doctest::Approx(static_cast<double>(b[2 * k])).epsilon(1e-13));
  CHECK(bernoulli_2k(10) == doctest::Approx(-174611.0 / 330.0).epsilon(1e-15));
  CHECK(bernoulli_2k(15) == doctest::Approx(8615841276005.0 / 14322.0).epsilon(1e-15));
  CHECK(bernoulli_2k(30) == doctest::Approx(-2.1399949257225333666e+34).epsilon(1e-14));
  CHECK(bernoulli_2k_over_factorial(6) == doctest::Approx(bernoulli_2k(6) / 479001600.0).epsilon(1e-15));
  CHECK(std::abs(pochhammer({0.5, 1.0}, 3) - cplx(0.5, 1.0) * cplx(1.5, 1.0) * cplx(2.5, 1.0)) < 1e-14);
}

TEST_CASE("riemann zeta examples") {
  CHECK(rel(riemann_zeta(2.0).value, M_PI * M_PI / 6) < 1e-14);
  CHECK(std::abs(riemann_zeta(-2.0).value) < 1e-12);
  CHECK(std::abs(riemann_zeta({0.5, 14.134725}).value) < 1e-4);
  CHECK(rel(riemann_zeta({0.5, 14.134725}).value, refvals::kZeta_half_14i) < 1e-6);
  CHECK(rel(riemann_zeta({-3.5, 7.0}).value, refvals::kZeta_m3p5_p7i) < 1e-12);
  CHECK_THROWS_AS(riemann_zeta(1.0), PoleError);
}

TEST_CASE("hurwitz zeta examples") {
  CHECK(rel(hurwitz_zeta(3.0, 2.0).value, riemann_zeta(3.0).value - 1.0) < 1e-14);
  CHECK(hurwitz_zeta(-1.0, 0.5).value.real() == doctest::Approx(1.0 / 24).epsilon(1e-13));
  CHECK(rel(hurwitz_zeta(2.0, 1.0).value, M_PI * M_PI / 6) < 1e-14);
  CHECK(rel(hurwitz_zeta({1.5, 10.0}, 0.3).value, refvals::kHurwitz_1p5p10i_0p3) < 1e-12);
  CHECK(rel(hurwitz_zeta({-2.5, -4.0}, 0.7).value, refvals::kHurwitz_m2p5m4i_0p7) < 1e-10);
  CHECK(rel(hurwitz_zeta(-10.5, 1.0).value, refvals::kHurwitz_m10p5_1) < 1e-10);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, -0.5), DomainError);
  CHECK_THROWS_AS((hurwitz_zeta(2.0, 1.0, EMConfig{0, 12})), DomainError);
  CHECK_THROWS_AS((hurwitz_zeta(2.0, 1.0, EMConfig{10, 31})), DomainError);
}

TEST_CASE("hurwitz zeta matches Bernoulli polynomials at negative integers") {
  for (int n = 0; n <= 8; ++n) {
    for (double a : {0.1, 0.5, 0.77, 1.0}) {
      const double expect = oracle::hurwitz_negative_integer(n, a);
      const cplx got = hurwitz_zeta(-static_cast<double>(n), a).value;
      CHECK(std::abs(got - expect) <= 1e-11 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("hurwitz zeta matches brute force for Re(s) > 1") {
  const cplx pts[] = {{2.0, 0.0}, {1.5, 3.0}, {3.2, -7.0}, {1.2, 0.5}};
  for (const cplx s : pts) {
    for (double a : {0.25, 1.0, 3.7}) {
      CHECK(rel(hurwitz_zeta(s, a).value, oracle::hurwitz_brute(s, a)) < 1e-12);
    }
  }
}

TEST_CASE("lerch zeta examples") {
  const cplx s{0.7, -3.0};
  CHECK(std::abs(lerch_zeta(s, 0.4, 1.0).value - hurwitz_zeta(s, 0.4).value) < 1e-13);
  CHECK(rel(lerch_zeta(1.0, 1.0, 0.5).value, oracle::euler_transform_log2()) < 1e-13);
  CHECK(rel(lerch_zeta(2.0, 1.0, 0.5).value, oracle::alternating_direct(2.0)) < 1e-13);
  CHECK(rel(lerch_zeta(2.0, 1.0, 0.5).value, refvals::kLerch_2_1_half) < 1e-14);
  CHECK(rel(lerch_zeta({0.5, 20.0}, 0.4, 1.0 / 3).value, refvals::kLerch_0p5p20i_0p4_third) < 1e-12);
  CHECK(rel(lerch_zeta({-1.5, 3.0}, 0.6, 0.25).value, refvals::kLerch_m1p5p3i_0p6_quarter) < 1e-10);
  CHECK(rel(detail::periodic_zeta(3.0, 0.4).value, refvals::kPeriodic_3_fifth) < 1e-14);
  CHECK_THROWS_AS(lerch_zeta(2.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(lerch_zeta(2.0, 1.0, 1.5), DomainError);
}

TEST_CASE("lerch zeta near lambda = 0 warns instead of failing") {
  const auto r = lerch_zeta(0.5, 1.0, 1e-7);
  CHECK(std::isfinite(r.abs_err_est));
  CHECK(r.conditioning_warning);
}

TEST_CASE("functional equation right-hand sides") {
  CHECK(hurwitz_fe_rhs(-1.0, 1.0).value.real() == doctest::Approx(-1.0 / 12).epsilon(1e-12));
  CHECK(std::abs(hurwitz_fe_rhs(-2.0, 1.0).value) < 1e-13);
  CHECK(std::abs(hurwitz_fe_rhs(-0.5, 0.3).value - hurwitz_zeta(-0.5, 0.3).value) < 1e-8);
  CHECK(std::abs(lerch_fe_rhs(-1.0, 0.5, 0.5).value - lerch_zeta(-1.0, 0.5, 0.5).value) < 1e-8);
  const double eps = 1e-6;
  CHECK(std::abs(lerch_fe_rhs(-2.0, 1.0 - eps, 0.25).value - lerch_zeta(-2.0, 1.0 - eps, 0.25).value) < 1e-7);
  CHECK_THROWS_AS(hurwitz_fe_rhs(0.5, 0.3), DomainError);
  CHECK_THROWS_AS(lerch_fe_rhs(-1.0, 0.3, 1.0), DomainError);
}

TEST_CASE("property: conjugation symmetry") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> sig(-4.0, 4.0), tt(-25.0, 25.0), a(0.05, 3.0), lam(0.05, 0.95);
  for (int i = 0; i < 40; ++i) {
    const cplx s{sig(rng), tt(rng)};
    const double al = a(rng), l = lam(rng);
    const auto h1 = hurwitz_zeta(s, al), h2 = hurwitz_zeta(std::conj(s), al);
    CHECK(std::abs(h1.value - std::conj(h2.value)) <= 2 * (h1.abs_err_est + h2.abs_err_est) + 1e-15);
    const auto l1 = lerch_zeta(s, al, l), l2 = lerch_zeta(std::conj(s), al, 1.0 - l);
    // Conjugating e^{2 pi i n lambda} maps lambda to 1 - lambda.
    CHECK(std::abs(l1.value - std::conj(l2.value)) <= 2 * (l1.abs_err_est + l2.abs_err_est) + 1e-15);
  }
}

TEST_CASE("property: shift recurrence") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> sig(-4.0, 4.0), tt(-25.0, 25.0), a(0.05, 3.0);
  for (int i = 0; i < 60; ++i) {
    const cplx s{sig(rng), tt(rng)};
    if (std::abs(s - 1.0) < 0.05) continue;
    const double al = a(rng);
    const auto h0 = hurwitz_zeta(s, al);
    const auto h1 = hurwitz_zeta(s, al + 1.0);
    const cplx rhs = std::pow(cplx(al, 0.0), -s);
    const double scale = std::max({1.0, std::abs(rhs), std::abs(h0.value), std::abs(h1.value)});
    CHECK(std::abs(h0.value - h1.value - rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("property: functional equation agrees on the left half plane") {
  for (double sigma = -3.0; sigma <= -0.5; sigma += 0.5) {
    for (double t = -20.0; t <= 20.0; t += 5.0) {
      for (double a : {0.2, 0.5, 0.9, 1.0}) {
        const cplx s{sigma, t};
        const auto em = hurwitz_zeta(s, a, EMConfig::defaults_for(s));
        const auto fe = hurwitz_fe_rhs(s, a);
        CHECK(std::abs(em.value - fe.value) <= 10 * (em.abs_err_est + fe.abs_err_est));
      }
    }
  }
}

TEST_CASE("property: doubling the cutoff stays within the error estimate") {
  const cplx pts[] = {{2.0, 0.0}, {0.5, 14.0}, {-1.5, 3.0}, {1.3, -40.0}, {-3.0, 0.5}};
  for (const cplx s : pts) {
    for (double a : {0.3, 1.0}) {
      EMConfig cfg = EMConfig::defaults_for(s);
      const auto base = hurwitz_zeta(s, a, cfg);
      cfg.cutoff_n *= 2;
      const auto doubled = hurwitz_zeta(s, a, cfg);
      CHECK(std::abs(base.value - doubled.value) <= base.abs_err_est + doubled.abs_err_est);
    }
  }
}

TEST_CASE("property: pole structure at s = 1") {
  // Each direction is off by about psi(a) |s - 1|; the four-direction mean
  // cancels the Laurent terms of order 1 to 3.
  for (double a : {0.3, 1.0, 2.5}) {
    cplx mean = 0.0;
    for (int k = 0; k < 4; ++k) {
      const cplx d = std::polar(1e-4, k * M_PI / 2 + 0.3);
      const cplx v = d * hurwitz_zeta(1.0 + d, a).value;
      CHECK(std::abs(v - 1.0) < 1e-3);
      mean += 0.25 * v;
    }
    CHECK(std::abs(mean - 1.0) < 1e-6);
  }
}

}
