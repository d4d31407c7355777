#include "charmoment/risk.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "charmoment/errors.hpp"
#include "charmoment/kernel.hpp"
#include "charmoment/moments.hpp"

namespace charmoment {

namespace {

struct Bracket {
  double lo, hi;
};

Bracket default_bracket(const Distribution& model, const RiskOptions& opt) {
  if (opt.bracket_lo && opt.bracket_hi) return {*opt.bracket_lo, *opt.bracket_hi};
  double mean = (cf_frac_deriv(model, 1.0, 0.0) / cplx(0.0, 1.0)).real();
  double m2 = (-cf_frac_deriv(model, 2.0, 0.0)).real();
  double var = std::max(m2 - mean * mean, 0.0);
  double sd = std::sqrt(var);
  // floor keeps the grid resolvable for (near-)degenerate models; the
  // objective is sampled at the mean either way
  double spread = 10.0 * std::max(sd, 0.02 * (1.0 + std::abs(mean)));
  Bracket b{mean - spread, mean + spread};
  if (opt.bracket_lo) b.lo = *opt.bracket_lo;
  if (opt.bracket_hi) b.hi = *opt.bracket_hi;
  return b;
}

// E(X - t)_+^alpha via the positive-part engine on the shifted model. An
// unconverged value whose error estimate is still tiny is usable; anything
// worse is reported as NaN and the optimizer skips the point.
double shifted_pos_moment(const Distribution& model, double alpha, double t,
                          const QuadratureConfig& cfg) {
  MomentReport rep = pos_part_total_order(shifted(model, -t), alpha, 0.0, cfg);
  double v = rep.value.real();
  if (!rep.converged && rep.err_estimate > 1e-6 * (1.0 + std::abs(v)))
    return std::numeric_limits<double>::quiet_NaN();
  return v > 0.0 ? v : 0.0;  // clip quadrature noise around an exact zero
}

struct GridMin {
  double t = 0;
  double value = std::numeric_limits<double>::infinity();
  int index = -1;
};

// Coarse grid then golden-section refinement around the grid minimum. The
// returned value is the best objective seen anywhere, since for alpha < 1
// the objective need not be convex.
RiskResult minimize(const std::function<double(double)>& phi, double lo, double hi,
                    int grid_points, const char* who) {
  if (!(lo < hi)) throw std::invalid_argument("risk: empty search bracket");
  int n = std::max(grid_points, 8);
  if (n % 2 == 0) ++n;  // odd count samples the bracket midpoint exactly
  GridMin best;
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    double t = lo + (hi - lo) * i / (n - 1);
    double v;
    try {
      v = phi(t);
    } catch (const std::exception&) {
      ++failures;
      continue;
    }
    if (!std::isfinite(v)) {
      ++failures;
      continue;
    }
    if (v < best.value) best = {t, v, i};
  }
  if (failures * 5 > n)
    throw numeric_error(std::string(who) + ": objective failed at more than 20% of grid points");
  if (best.index < 0) throw std::domain_error(std::string(who) + ": objective nowhere finite");
  const bool grid_edge = (best.index == 0 || best.index == n - 1);

  double step = (hi - lo) / (n - 1);
  double a = std::max(lo, best.t - step);
  double b = std::min(hi, best.t + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = phi(c), fd = phi(d);
  if (fc < best.value) best = {c, fc, -2};
  if (fd < best.value) best = {d, fd, -2};
  double width_tol = 1e-6 * (hi - lo);
  while (b - a > width_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = phi(d);
    }
    if (fc < best.value) best = {c, fc, -2};
    if (fd < best.value) best = {d, fd, -2};
  }

  RiskResult out;
  out.value = best.value;
  out.minimizer = best.t;
  out.at_bracket_edge = grid_edge;
  return out;
}

}  // namespace

RiskResult q_alpha(const Distribution& model, double alpha, double q, const RiskOptions& opt) {
  if (!(alpha > 0)) throw std::invalid_argument("q_alpha: alpha must be > 0");
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q_alpha: q must be in (0,1)");
  if (!model.moment_finite(alpha)) throw capability_error("q_alpha: E|X|^alpha not finite");

  Bracket br = default_bracket(model, opt);
  auto phi = [&](double t) -> double {
    double m = shifted_pos_moment(model, alpha, t, opt.cfg);
    return t + std::pow(m / q, 1.0 / alpha);
  };
  RiskResult out = minimize(phi, br.lo, br.hi, opt.grid_points, "q_alpha");
  out.convexity_guaranteed = alpha >= 1.0;
  return out;
}

RiskResult p_alpha(const Distribution& model, double alpha, double x, const RiskOptions& opt) {
  if (!(alpha > 0)) throw std::invalid_argument("p_alpha: alpha must be > 0");
  if (!model.moment_finite(alpha)) throw capability_error("p_alpha: E|X|^alpha not finite");

  Bracket br = default_bracket(model, opt);
  double margin = 1e-6 * (1.0 + std::abs(x));
  double hi = std::min(br.hi, x - margin);
  double lo = br.lo;
  if (!(lo < hi)) lo = x - 10.0 * (1.0 + std::abs(x));
  auto phi = [&](double t) -> double {
    double m = shifted_pos_moment(model, alpha, t, opt.cfg);
    return m / std::pow(x - t, alpha);
  };
  RiskResult out = minimize(phi, lo, hi, opt.grid_points, "p_alpha");
  out.convexity_guaranteed = alpha >= 1.0;
  return out;
}

}  // namespace charmoment
