#include <doctest.h>

#include <cmath>
#include <limits>

#include "charmoment/errors.hpp"
#include "charmoment/kernel.hpp"
#include "test_helpers.hpp"

using namespace charmoment;
using cmtest::close_rel;
using cmtest::uniform;

TEST_CASE("cpow principal convention") {
  CHECK(close_rel(cpow({0.0, 1.0}, 2.0), cplx(-1.0, 0.0), 1e-14));
  CHECK(close_rel(cpow({-1.0, 0.0}, 0.5), cplx(0.0, 1.0), 1e-14));  // arg(-1) = +pi
  CHECK(close_rel(cpow({0.0, 2.0}, 0.5), cplx(1.0, 1.0), 1e-14));   // sqrt(2) e^{i pi/4}
  CHECK(cpow({0.0, 0.0}, 0.5) == cplx(0.0, 0.0));
  CHECK(cpow({0.0, 0.0}, 0.0) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(cpow({0.0, 0.0}, -1.0), std::domain_error);
  double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(cpow({nan, 0.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(conj_real_power(nan, 1.0), std::domain_error);
}

TEST_CASE("cpow additivity away from the cut") {
  for (int i = 0; i < 300; ++i) {
    double th = uniform(-0.9 * kPi, 0.9 * kPi);
    double m = uniform(0.2, 3.0);
    cplx z = std::polar(m, th);
    double p = uniform(-10.0, 10.0), q = uniform(-10.0, 10.0);
    CHECK(close_rel(cpow(z, p) * cpow(z, q), cpow(z, p + q), 1e-12));
  }
}

TEST_CASE("conj_real_power") {
  CHECK(close_rel(conj_real_power(2.0, 1.5), cplx(std::pow(2.0, 1.5), 0.0), 1e-14));
  CHECK(close_rel(conj_real_power(-1.0, 0.5), cplx(0.0, -1.0), 1e-14));
  CHECK(conj_real_power(0.0, 0.0) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(conj_real_power(0.0, -0.5), std::domain_error);
  for (int i = 0; i < 200; ++i) {
    double x = uniform(-4.0, 4.0);
    if (x == 0) continue;
    double r = uniform(-3.0, 5.0);
    CHECK(close_rel(conj_real_power(x, r), std::conj(cpow(cplx(x, 0.0), r)), 1e-13));
  }
}

TEST_CASE("e_m values and remainder bound") {
  CHECK(e_m({0.0, 0.0}, 0) == cplx(0.0, 0.0));
  CHECK(close_rel(e_m({0.0, 1.0}, 1), cplx(-0.459697694131860283, -0.158529015192103493),
                  1e-13));
  double bound = std::pow(1e-3, 3) / 6.0 * std::exp(1e-3);
  CHECK(std::abs(e_m({0.0, 1e-3}, 2)) <= bound);
}

TEST_CASE("e_m reconstructs exp") {
  // relative to the size of the pieces being added; when Re z is very
  // negative the reconstruction itself cancels and no algorithm can give
  // e^z to relative accuracy from these two addends
  for (int i = 0; i < 300; ++i) {
    cplx z(uniform(-20.0, 20.0), uniform(-20.0, 20.0));
    if (std::abs(z) > 20) continue;
    int m = static_cast<int>(uniform(0, 9));
    cplx poly = 0.0, term = 1.0;
    double poly_mag = 0.0;
    for (int j = 0; j <= m; ++j) {
      poly += term;
      poly_mag += std::abs(term);
      term *= z / static_cast<double>(j + 1);
    }
    cplx rem = e_m(z, m);
    double scale = std::abs(rem) + poly_mag + std::abs(std::exp(z));
    CHECK(std::abs(rem + poly - std::exp(z)) <= 1e-13 * scale);
  }
}

TEST_CASE("taylor_remainder") {
  DerivEvaluator exp_ev = [](int, cplx z) { return std::exp(z); };

  SUBCASE("exp at 0 with imaginary offset equals e_m") {
    for (double t : {0.1, 0.9, 3.0, 11.0}) {
      for (int m : {0, 1, 3, 6}) {
        CHECK(close_rel(taylor_remainder(exp_ev, m, {0.0, 0.0}, {0.0, t}), e_m({0.0, t}, m),
                        1e-13, 1e-300));
      }
    }
  }
  SUBCASE("polynomials of degree <= m vanish") {
    auto poly_ev = [](int order, cplx z) -> cplx {
      // psi(z) = 1 + 2z + 3z^2
      if (order == 0) return 1.0 + 2.0 * z + 3.0 * z * z;
      if (order == 1) return 2.0 + 6.0 * z;
      if (order == 2) return 6.0;
      return 0.0;
    };
    CHECK(std::abs(taylor_remainder(poly_ev, 2, {0.3, 0.0}, {0.7, 0.0})) < 1e-13);
    CHECK(std::abs(taylor_remainder(poly_ev, 3, {0.3, 0.0}, {0.7, 0.0})) < 1e-13);
  }
  SUBCASE("exp m=1 delta=1") {
    CHECK(close_rel(taylor_remainder(exp_ev, 1, {0.0, 0.0}, {1.0, 0.0}),
                    cplx(0.718281828459045235, 0.0), 1e-13));
  }
  SUBCASE("deeply cancelled remainder keeps full relative accuracy") {
    // naive subtraction would lose ~13 digits here
    cplx got = taylor_remainder(exp_ev, 7, {0.0, 0.0}, {0.0, 0.05});
    cplx want = e_m({0.0, 0.05}, 7);
    CHECK(close_rel(got, want, 1e-11));
  }
}

TEST_CASE("sym_diff") {
  std::function<cplx(cplx)> expf = [](cplx z) { return std::exp(z); };

  SUBCASE("n=1 is the plain difference") {
    cplx v(0.3, 0.1), z(0.2, -0.4);
    CHECK(close_rel(sym_diff(expf, 1, v, z), std::exp(z + v) - std::exp(z - v), 1e-14));
  }
  SUBCASE("annihilates low-degree polynomials") {
    std::function<cplx(cplx)> poly = [](cplx z) { return 2.0 + z + 5.0 * z * z; };
    CHECK(std::abs(sym_diff(poly, 3, {0.7, 0.0}, {0.1, 0.0})) < 1e-12);
  }
  SUBCASE("exp gives (2i)^n sin^n t") {
    for (int n = 1; n <= 7; ++n) {
      for (double t : {0.2, 1.7, 8.5, 19.0}) {
        cplx got = sym_diff(expf, n, {0.0, t}, {0.0, 0.0});
        cplx want = cpow({0.0, 2.0}, n) * std::pow(std::sin(t), n);
        CHECK(close_rel(got, want, 1e-12, 1e-12));
      }
    }
  }
}

TEST_CASE("gamma and binomial") {
  CHECK(close_rel(gamma_fn(0.5), 1.77245385090551603, 1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(binomial(4, 2) == 6.0);
  CHECK(binomial(60, 30) == doctest::Approx(1.18264581564861424e17).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
  // reflection cross-check
  double x = 0.5;
  CHECK(close_rel(gamma_fn(x) * gamma_fn(1.0 - x), kPi / std::sin(kPi * x), 1e-13));
}

TEST_CASE("order decomposition") {
  for (double p : {0.3, 1.0, 2.5, 3.0, 6.5, 8.0, 0.9999999999}) {
    auto od = OrderDecomposition::of(p);
    CHECK(od.lambda > 0.0);
    CHECK(od.lambda <= 1.0);
    if (od.is_integer) {
      CHECK(od.k == od.ell + 1);
      CHECK(od.lambda == 1.0);
    } else {
      CHECK(od.k == od.ell);
      CHECK(static_cast<double>(od.ell) + od.lambda == doctest::Approx(p).epsilon(1e-15));
    }
  }
  CHECK(OrderDecomposition::of(1.0 - 1e-12).is_integer);  // within kEpsInt
  CHECK(OrderDecomposition::of(2.5).ell == 2);
  CHECK(OrderDecomposition::of(3.0).ell == 2);
}

TEST_CASE("gspec validation and parity") {
  GSpec s = gspec_sin();
  CHECK(s.is_odd());
  CHECK_FALSE(s.is_even());
  CHECK_NOTHROW(s.validate_for(0.5));
  CHECK_THROWS(s.validate_for(1.5));  // vanishing order 1 must exceed p

  GSpec g2 = gspec_gn(2);
  CHECK(g2.is_even());
  CHECK_NOTHROW(g2.validate_for(1.0));
  CHECK_THROWS(g2.validate_for(2.5));
  for (double t : {0.4, 2.2}) {
    cplx want = cpow({0.0, 2.0}, 2) * std::pow(std::sin(t), 2);
    CHECK(close_rel(g2.evaluate(t), want, 1e-13));
  }

  GSpec bad;
  bad.terms.push_back({cplx(0.0, 0.0), 0.0, 1.0});
  bad.zero_order = 1.0;
  CHECK_THROWS(bad.validate_for(0.5));
}
