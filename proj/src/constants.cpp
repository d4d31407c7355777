#include "charmoment/constants.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "charmoment/errors.hpp"

namespace charmoment {

namespace {

constexpr double kEpsBlend = 1e-7;
constexpr double kDeltaBlend = 1e-4;

// Nearest p0 in the window with n - p0 an even integer, or NaN if none.
double nearest_even_gap_point(int n, double p) {
  double best = std::numeric_limits<double>::quiet_NaN();
  double kf = std::floor((n - p) / 2.0);
  for (double k : {kf - 1.0, kf, kf + 1.0, kf + 2.0}) {
    double p0 = n - 2.0 * k;
    if (!gn_window_contains(n, p0)) continue;
    if (std::isnan(best) || std::abs(p0 - p) < std::abs(best - p)) best = p0;
  }
  return best;
}

cplx c_plus_generic(int n, double p) {
  SigmaRho sr = sigma_rho(n, p);
  return -(kPi / gamma_fn(p + 1.0)) * sr.sigma / sr.rho;
}

cplx c_plus_lhospital(int n, long long p_int) {
  SigmaRho sr = sigma_rho(n, static_cast<double>(p_int));
  double fact = gamma_fn(static_cast<double>(p_int) + 1.0);
  double sign = ((1 + p_int / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * (2.0 / fact) * sr.sigma_prime / sr.gamma_n;
}

}  // namespace

SigmaRho sigma_rho(int n, double p) {
  SigmaRho sr;
  // Alternating sum with exact binomials; compensated so the near-total
  // cancellation at the l'Hospital points does not pollute sigma_prime.
  double s = 0, sc = 0, sp = 0, spc = 0;
  for (int j = 0; 2 * j < n; ++j) {
    double base = static_cast<double>(n - 2 * j);
    double term = binomial(n, j) * std::pow(base, p);
    if (j % 2 == 1) term = -term;
    double y = term - sc;
    double t = s + y;
    sc = (t - s) - y;
    s = t;
    double termp = term * std::log(base);
    y = termp - spc;
    t = sp + y;
    spc = (t - sp) - y;
    sp = t;
  }
  sr.sigma = s;
  sr.sigma_prime = sp;
  if (n % 2 == 0) {
    sr.rho = std::sin(kPi * p / 2.0);
    sr.gamma_n = 1.0;
  } else {
    sr.rho = cplx(0.0, std::cos(kPi * p / 2.0));
    sr.gamma_n = cplx(0.0, -1.0);
  }
  return sr;
}

double kappa(double p) {
  if (is_integral_order(p)) throw std::domain_error("kappa: integer p");
  double direct = gamma_fn(-p);
  double reflected = -kPi / (gamma_fn(p + 1.0) * std::sin(kPi * p));
  if (std::abs(direct - reflected) > 1e-10 * std::abs(direct))
    throw numeric_error("kappa: reflection cross-check failed");
  return direct;
}

bool gn_window_contains(int n, double p) {
  double lo = (n % 2 == 0) ? 0.0 : -1.0;
  return p > lo && p < static_cast<double>(n);
}

GnConstant c_plus_gn(int n, double p) {
  if (n < 1) throw std::domain_error("c_plus_gn: n must be >= 1");
  if (!gn_window_contains(n, p)) {
    std::ostringstream os;
    os << "c_plus_gn: p = " << p << " outside the admissible window for n = " << n;
    throw std::domain_error(os.str());
  }
  GnConstant out;
  out.n = n;
  out.p = p;

  double p0 = nearest_even_gap_point(n, p);
  double dist = std::isnan(p0) ? std::numeric_limits<double>::infinity() : std::abs(p - p0);
  if (dist < kEpsInt) {
    out.branch = GnBranch::lhospital;
    out.c_plus = c_plus_lhospital(n, std::llround(p0));
  } else if (dist < kEpsBlend) {
    out.branch = GnBranch::near_integer_blend;
    out.c_plus = 0.5 * (c_plus_generic(n, p - kDeltaBlend) + c_plus_generic(n, p + kDeltaBlend));
  } else {
    out.branch = GnBranch::generic;
    out.c_plus = c_plus_generic(n, p);
  }
  out.c_minus = (n % 2 == 0) ? out.c_plus : -out.c_plus;
  return out;
}

cplx c_direct_quadrature(int n, double p, const QuadratureConfig& cfg) {
  QuadratureConfig local = cfg;
  // spacing pi/n puts every harmonic's per-panel phase ratio strictly inside
  // the unit circle away from 1, which the extrapolation needs
  local.tail_period_hint = (n % 2 == 0) ? kPi / n : kPi;
  Integrand f = [n, p](double t) -> cplx {
    return std::pow(std::sin(t), n) / std::pow(t, p + 1.0);
  };
  // For even n the mean of sin^n over a period converges only like t^{-p-1};
  // peel it off and integrate it in closed form past the split point.
  double dc = (n % 2 == 0) ? binomial(n, n / 2) / std::pow(2.0, n) : 0.0;
  Integrand reduced = [n, p, dc](double t) -> cplx {
    return (std::pow(std::sin(t), n) - dc) / std::pow(t, p + 1.0);
  };
  cplx analytic = (n % 2 == 0) ? dc * std::pow(local.split_b, -p) / p : 0.0;
  double alpha = p + 1.0 - static_cast<double>(n);  // integrand ~ t^{n-p-1} near 0
  IntegralResult inner =
      integrate_split(f, reduced, analytic, (alpha > 0 && alpha < 1) ? alpha : 0.0, local);
  // the oscillatory remainder may settle just above the requested tolerance;
  // only a genuinely unreliable value is an error
  if (!inner.converged && inner.err_estimate > 1e-7 * std::abs(inner.value)) {
    std::ostringstream os;
    os << "c_direct_quadrature(" << n << ", " << p << "): tail did not converge after "
       << inner.tail_terms_used << " panels (err est " << inner.err_estimate << ")";
    throw numeric_error(os.str());
  }
  return cpow(cplx(0.0, 2.0), static_cast<double>(n)) * inner.value;
}

}  // namespace charmoment
