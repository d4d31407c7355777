#include <doctest.h>

#include <cmath>

#include "charmoment/quadrature.hpp"
#include "test_helpers.hpp"

using namespace charmoment;
using cmtest::close_rel;

namespace {

QuadratureConfig cfg_with_hint(double h) {
  QuadratureConfig cfg;
  cfg.tail_period_hint = h;
  return cfg;
}

struct Oracle {
  IntegralResult got;
  double want;
};

}  // namespace

TEST_CASE("finite integrals") {
  QuadratureConfig cfg;
  Integrand e = [](double t) -> cplx { return std::exp(-t); };
  auto r1 = integrate_finite(e, 0.0, 1.0, 0.0, cfg);
  CHECK(r1.converged);
  CHECK(close_rel(r1.value, cplx(0.632120558828558, 0.0), 1e-10));

  Integrand sing = [](double t) -> cplx { return 1.0 / std::sqrt(t); };
  auto r2 = integrate_finite(sing, 0.0, 1.0, 0.5, cfg);
  CHECK(r2.converged);
  CHECK(close_rel(r2.value, cplx(2.0, 0.0), 1e-9));

  Integrand osc = [](double t) -> cplx { return std::sin(50.0 * t); };
  auto r3 = integrate_finite(osc, 0.0, 1.0, 0.0, cfg);
  CHECK(r3.converged);
  // antiderivative oracle (1 - cos 50)/50
  CHECK(close_rel(r3.value, cplx((1.0 - std::cos(50.0)) / 50.0, 0.0), 1e-9, 1e-12));
}

TEST_CASE("tail limits") {
  Integrand sinc = [](double t) -> cplx { return std::sin(t) / t; };
  auto r1 = integrate_tail_limit(sinc, 1.0, cfg_with_hint(kPi));
  CHECK(r1.converged);
  CHECK(close_rel(r1.value, cplx(0.624713256427714, 0.0), 1e-9, 1e-10));  // pi/2 - Si(1)

  Integrand pow2 = [](double t) -> cplx { return 1.0 / (t * t); };
  auto r2 = integrate_tail_limit(pow2, 1.0, cfg_with_hint(kPi));
  CHECK(r2.converged);
  CHECK(close_rel(r2.value, cplx(1.0, 0.0), 1e-8));
}

TEST_CASE("zero to infinity") {
  Oracle cases[] = {
      {integrate_zero_inf([](double t) -> cplx { return std::sin(t) / t; }, 0.0,
                          cfg_with_hint(kPi)),
       kPi / 2.0},
      {integrate_zero_inf([](double t) -> cplx { return std::pow(std::sin(t), 3) / t; }, 0.0,
                          cfg_with_hint(kPi)),
       kPi / 4.0},
      {integrate_zero_inf([](double t) -> cplx { return std::exp(-t); }, 0.0, cfg_with_hint(kPi)),
       1.0},
      {integrate_zero_inf([](double t) -> cplx { return std::sin(t) / std::pow(t, 1.5); }, 0.5,
                          cfg_with_hint(kPi)),
       std::sqrt(2.0 * kPi)},
  };
  for (const auto& c : cases) {
    CHECK(c.got.converged);
    CHECK(std::abs(c.got.value.real() - c.want) < 1e-8);
    CHECK(std::abs(c.got.value.imag()) < 1e-12);
    // error-estimate honesty on the oracle set
    CHECK(std::abs(c.got.value.real() - c.want) <= 5.0 * c.got.err_estimate + 1e-13);
  }
}

TEST_CASE("splitting invariance") {
  for (double b : {0.5, 0.8, 1.3, 2.0}) {
    QuadratureConfig cfg = cfg_with_hint(kPi);
    cfg.split_b = b;
    auto r = integrate_zero_inf([](double t) -> cplx { return std::sin(t) / std::pow(t, 1.5); },
                                0.5, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - std::sqrt(2.0 * kPi)) < 10.0 * cfg.rel_tol * std::sqrt(2.0 * kPi) + 1e-9);
  }
}

TEST_CASE("linearity") {
  QuadratureConfig cfg = cfg_with_hint(kPi);
  Integrand f = [](double t) -> cplx { return std::exp(-t); };
  Integrand g = [](double t) -> cplx { return std::exp(-2.0 * t) * std::cos(t); };
  cplx alpha(2.0, 1.0), beta(-0.5, 3.0);
  Integrand combo = [&](double t) -> cplx { return alpha * f(t) + beta * g(t); };
  auto rf = integrate_zero_inf(f, 0.0, cfg);
  auto rg = integrate_zero_inf(g, 0.0, cfg);
  auto rc = integrate_zero_inf(combo, 0.0, cfg);
  CHECK(std::abs(rc.value - (alpha * rf.value + beta * rg.value)) <=
        std::abs(alpha) * rf.err_estimate + std::abs(beta) * rg.err_estimate + rc.err_estimate +
            1e-12);
}

TEST_CASE("conjugation equivariance") {
  QuadratureConfig cfg = cfg_with_hint(kPi);
  Integrand f = [](double t) -> cplx {
    return std::exp(cplx(0.0, 1.3 * t)) / std::pow(1.0 + t, 1.5);
  };
  Integrand fc = [&](double t) -> cplx { return std::conj(f(t)); };
  auto r = integrate_zero_inf(f, 0.0, cfg);
  auto rc = integrate_zero_inf(fc, 0.0, cfg);
  CHECK(std::abs(rc.value - std::conj(r.value)) < 1e-14);
}

TEST_CASE("panel exhaustion on a finite interval is reported") {
  QuadratureConfig cfg;
  cfg.max_panels = 4;
  Integrand f = [](double t) -> cplx { return std::pow(std::abs(t - 0.5), -0.4); };
  auto r = integrate_finite(f, 0.0, 1.0, 0.0, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.err_estimate > 0.0);
}

TEST_CASE("budget exhaustion is reported") {
  QuadratureConfig cfg = cfg_with_hint(kPi);
  cfg.max_tail_terms = 8;
  cfg.rel_tol = 1e-15;
  cfg.abs_tol = 1e-300;
  // slowly decaying monotone tail cannot settle to 1e-15 in 8 panels
  auto r = integrate_tail_limit([](double t) -> cplx { return 1.0 / std::pow(t, 1.2); }, 1.0, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.err_estimate > 0.0);
}
