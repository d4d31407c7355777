// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. All tolerances are pinned here.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "charmoment/constants.hpp"
#include "charmoment/distributions.hpp"
#include "charmoment/kernel.hpp"
#include "charmoment/moments.hpp"
#include "charmoment/quadrature.hpp"
#include "charmoment/risk.hpp"

using namespace charmoment;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double phi_norm(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

const QuadratureConfig kCfg;

// 1. classical limit-sense integrals
void c1() {
  QuadratureConfig cfg = kCfg;
  cfg.tail_period_hint = kPi;
  double s1 = integrate_zero_inf([](double t) -> cplx { return std::sin(t) / t; }, 0.0, cfg)
                  .value.real();
  double s3 =
      integrate_zero_inf([](double t) -> cplx { return std::pow(std::sin(t), 3) / t; }, 0.0, cfg)
          .value.real();
  double e1 = std::abs(s1 - kPi / 2.0), e3 = std::abs(s3 - kPi / 4.0);
  criterion(1, "classical integrals sin t/t and sin^3 t/t", e1 < 1e-8 && e3 < 1e-8,
            "errors " + fmt(e1) + ", " + fmt(e3));
}

// 2. closed-form constants vs quadrature, parity, positivity
void c2() {
  double worst = 0;
  bool parity_ok = true, positive_ok = true;
  int checked = 0;
  for (int n = 1; n <= 6; ++n) {
    double lo = (n % 2 == 0) ? 0.0 : -1.0;
    for (int i = 0; i < 40; ++i) {
      double p = lo + (i + 0.402) / 40.0 * (n - lo);
      GnConstant c = c_plus_gn(n, p);
      if (c.branch != GnBranch::generic) continue;  // near the l'Hospital set
      cplx direct = c_direct_quadrature(n, p, kCfg);
      worst = std::max(worst, std::abs(c.c_plus - direct) / std::abs(direct));
      parity_ok = parity_ok && (c.c_minus == (n % 2 == 0 ? c.c_plus : -c.c_plus));
      cplx inner = c.c_plus / cpow({0.0, 2.0}, n);
      positive_ok = positive_ok && inner.real() > 0 &&
                    std::abs(inner.imag()) < 1e-10 * std::abs(inner.real());
      ++checked;
    }
  }
  criterion(2, "appendix constants closed form vs quadrature (6 x 40 grid)",
            worst < 1e-6 && parity_ok && positive_ok,
            "worst rel diff " + fmt(worst) + " over " + std::to_string(checked) + " points");
}

// 3. l'Hospital branch as a limit of the generic branch
void c3() {
  double worst = 0;
  for (auto [n, p0] : std::vector<std::pair<int, double>>{
           {3, 1.0}, {4, 2.0}, {5, 1.0}, {5, 3.0}, {6, 2.0}, {6, 4.0}}) {
    GnConstant exact = c_plus_gn(n, p0);
    for (double d : {-1e-4, 1e-4}) {
      GnConstant near = c_plus_gn(n, p0 + d);
      worst = std::max(worst, std::abs(near.c_plus - exact.c_plus) / std::abs(exact.c_plus));
    }
  }
  criterion(3, "l'Hospital branch equals the generic-branch limit", worst < 1e-3,
            "worst rel diff " + fmt(worst));
}

// 4. point-mass calibration of the positive-part methods
void c4() {
  double worst = 0;
  for (double p : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (double x : {1.0, -1.0}) {
      double want = x > 0 ? 1.0 : 0.0;
      Distribution d = point_mass(x);
      worst = std::max(worst,
                       std::abs(pos_part_pinelis(d, p, 0.0, 0.0, kCfg).value - want));
      worst = std::max(
          worst, std::abs(pos_part_stabilized(d, p, 0.0, 0.0, 1.0, default_stabilized_m(p), kCfg)
                              .value -
                          want));
      int n = p < 1 ? 1 : 3, m = p < 2 ? 2 : 4;
      worst = std::max(worst, std::abs(symdiff_pair(d, n, m, p, 0.0, 0.0, kCfg).pos - want));
      if (!is_integral_order(p))
        worst = std::max(worst, std::abs(pos_part_frac_closed(d, p, 0.0).pos - want));
    }
  }
  criterion(4, "point-mass calibration across methods, p in {0.5..2.5}", worst < 1e-8,
            "worst abs err " + fmt(worst));
}

// 5. exponential closed forms; stabilized must survive the large orders
void c5() {
  Distribution ex = exponential(1.0);
  double worst_all = 0;
  bool pass = true;
  for (double s : {0.5, 1.5, 2.5, 3.5}) {
    double want = gamma_fn(s + 1.0);
    double e_pin = std::abs(pos_part_pinelis(ex, s, 0.0, 0.0, kCfg).value.real() - want) / want;
    double e_st = std::abs(pos_part_stabilized(ex, s, 0.0, 0.0, 1.0, default_stabilized_m(s),
                                               kCfg)
                               .value.real() -
                           want) /
                  want;
    int n = s < 1 ? 1 : (s < 3 ? 3 : 5), m = s < 2 ? 2 : 4;
    double e_sd = std::abs(symdiff_pair(ex, n, m, s, 0.0, 0.0, kCfg).pos.real() - want) / want;
    double e_fc = is_integral_order(s)
                      ? 0.0
                      : std::abs(pos_part_frac_closed(ex, s, 0.0).pos.real() - want) / want;
    worst_all = std::max({worst_all, e_pin, e_st, e_sd, e_fc});
    pass = pass && e_pin < 1e-5 && e_st < 1e-5 && e_sd < 1e-5 && e_fc < 1e-5;
  }
  // the stabilized scheme alone is required at s = 6.5 and s = 8
  for (double s : {6.5, 8.0}) {
    double want = gamma_fn(s + 1.0);
    double e_st = std::abs(pos_part_stabilized(ex, s, 0.0, 0.0, 1.0, default_stabilized_m(s),
                                               kCfg)
                               .value.real() -
                           want) /
                  want;
    pass = pass && e_st < 1e-5;
    worst_all = std::max(worst_all, e_st);
  }
  criterion(5, "exponential E X_+^s = Gamma(s+1) across methods", pass,
            "worst rel err " + fmt(worst_all));
}

// 6. normal half moments via the absolute-moment routes
void c6() {
  Distribution z = normal(0.0, 1.0);
  double worst = 0;
  for (double p : {0.5, 1.0, 1.5, 2.5, 3.0}) {
    double half = std::pow(2.0, p / 2.0 - 1.0) * gamma_fn((p + 1.0) / 2.0) / std::sqrt(kPi);
    double abs_want = 2.0 * half;
    double e_z =
        std::abs(abs_moment_zolotarev(z, p, kCfg).value.real() - abs_want) / abs_want;
    double e_b = std::abs(abs_moment_vonbahr(z, p, kCfg).value.real() - abs_want) / abs_want;
    int m_even = p < 2 ? 2 : 4;
    int n_odd = p < 1 ? 1 : (p < 3 ? 3 : 5);
    double e_s =
        std::abs(symdiff_pair(z, n_odd, m_even, p, 0.0, 0.0, kCfg).abs.real() - abs_want) /
        abs_want;
    worst = std::max({worst, e_z, e_b, e_s});
  }
  criterion(6, "normal half-moments E Z_+^p via zolotarev/vonbahr/symdiff", worst < 1e-5,
            "worst rel err " + fmt(worst));
}

// 7. CDF inversion against the erf oracle
void c7() {
  Distribution z = normal(0.0, 1.0);
  double worst = 0;
  for (int m : {0, 1, 2}) {
    for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(cdf_halfequal(z, x, m, kCfg).prob - phi_norm(x)));
    }
  }
  criterion(7, "normal cdf inversion, m in {0,1,2}", worst < 1e-6, "worst abs err " + fmt(worst));
}

// 8. truncated-moment completeness
void c8() {
  Distribution ex = exponential(1.0);
  double worst = 0;
  for (double r : {0.0, 0.5, 1.0}) {
    double want = gamma_fn(r + 1.0);  // E conj(X^r) for exponential(1)
    for (double x : {0.5, 1.0, 2.0}) {
      cplx below = truncated_moment(ex, r, x, 0, TruncationSide::below, kCfg).value;
      cplx above = truncated_moment(ex, r, x, 0, TruncationSide::above, kCfg).value;
      worst = std::max(worst, std::abs(below + above - want));
    }
  }
  criterion(8, "truncated below + above = E conj(X^r)", worst < 1e-8,
            "worst abs err " + fmt(worst));
}

// 9. Marchaud numeric derivative against the closed form
void c9() {
  Distribution ex = exponential(1.0);
  double worst = 0;
  for (double p : {0.3, 0.5, 1.5, 2.5}) {
    for (double t : {0.0, 0.7, -1.3}) {
      cplx closed = cf_frac_deriv(ex, p, t);
      cplx num = marchaud_frac_deriv(ex, p, t, kCfg).value;
      worst = std::max(worst, std::abs(num - closed) / std::abs(closed));
    }
  }
  criterion(9, "Marchaud fractional derivative vs closed form", worst < 1e-5,
            "worst rel err " + fmt(worst));
}

// 10. c.f. of the positive part
void c10() {
  double worst = 0;
  for (double u : {0.0, 0.5, 1.0, 2.0}) {
    worst = std::max(worst,
                     std::abs(cf_pos_part(exponential(1.0), u, kCfg).value - 1.0 / cplx(1.0, -u)));
    worst = std::max(worst, std::abs(cf_pos_part(point_mass(-3.0), u, kCfg).value - 1.0));
  }
  criterion(10, "characteristic function of X_+", worst < 1e-6, "worst abs err " + fmt(worst));
}

// 11. risk layer
void c11() {
  RiskOptions opt;
  bool pass = true;
  std::string detail;
  double eq = std::abs(q_alpha(point_mass(3.2), 2.0, 0.07, opt).value - 3.2);
  pass = pass && eq < 1e-8;
  double el = std::abs(q_alpha(exponential(1.0), 1.0, 0.1, opt).value - (std::log(10.0) + 1.0));
  pass = pass && el < 1e-4;
  detail = "point err " + fmt(eq) + ", exp err " + fmt(el);
  std::vector<Distribution> models = {exponential(1.0), normal(0.0, 1.0),
                                      finite_discrete({-1.0, 2.0}, {0.5, 0.5}), point_mass(1.0)};
  for (const auto& d : models) {
    for (double x : {0.5, 1.0, 1.9, 3.0}) {
      double bound = p_alpha(d, 2.0, x, opt).value;
      double tail = 1.0 - cdf_halfequal(d, x, 0, kCfg).prob;
      if (bound < tail - 1e-6) {
        pass = false;
        detail += "; tail violated for " + d.describe() + " at x=" + fmt(x);
      }
    }
  }
  criterion(11, "risk layer: quantile bound values and tail domination", pass, detail);
}

// 12. split-representation invariance in b and m
void c12() {
  Distribution ex = exponential(1.0);
  double worst = 0;
  for (double p : {3.5, 6.5}) {
    double want = gamma_fn(p + 1.0);
    OrderDecomposition od = OrderDecomposition::of(p);
    for (double b : {0.5, 1.0, 2.0}) {
      for (int m = -1; m <= static_cast<int>(od.ell) + 1; ++m) {
        double got = pos_part_stabilized(ex, p, 0.0, 0.0, b, m, kCfg).value.real();
        worst = std::max(worst, std::abs(got - want) / want);
      }
    }
  }
  criterion(12, "stabilized result invariant in b and m", worst < 1e-6,
            "worst rel err " + fmt(worst));
}

}  // namespace

int main() {
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  c11();
  c12();
  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
