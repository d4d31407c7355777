#ifndef CHARMOMENT_QUADRATURE_HPP
#define CHARMOMENT_QUADRATURE_HPP

#include <functional>

#include "charmoment/kernel.hpp"

namespace charmoment {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double split_b = 1.0;  // where (0, inf) integrals split into head + tail
  int max_panels = 2000;
  // Node spacing of the tail partition; callers set it to the half-period
  // of the dominant oscillation (pi/omega for frequency omega).
  double tail_period_hint = kPi;
  int max_tail_terms = 200;
  int accel_order = 10;  // minimum number of tail panels before extrapolation may settle
};

struct IntegralResult {
  cplx value = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
  int tail_terms_used = 0;
};

using Integrand = std::function<cplx(double)>;

// Adaptive panel integration of f on (a, b). If endpoint_exponent is in
// (0,1) the integrand may blow up like (t-a)^{-alpha} near a; the
// substitution t = a + s^{1/(1-alpha)} removes the singularity before the
// panels are laid down. Running out of panels yields converged = false with
// the best estimate.
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                double endpoint_exponent, const QuadratureConfig& cfg);

// lim_{T->inf} int_b^T f, for integrands that are finite sums of smooth
// decaying amplitudes times e^{i omega t} plus absolutely integrable parts.
// Panels are laid between consecutive oscillation nodes (spacing
// tail_period_hint) and the partial-sum sequence is extrapolated.
IntegralResult integrate_tail_limit(const Integrand& f, double b, const QuadratureConfig& cfg);

// int_0^{inf-} f = integrate_finite on (0, split_b) + tail on (split_b, inf).
IntegralResult integrate_zero_inf(const Integrand& f, double zero_exponent,
                                  const QuadratureConfig& cfg);

// Same split, but with the slowly-converging exactly-integrable parts of the
// tail removed by the caller: `head` is the full integrand on (0, split_b),
// `reduced_tail` is the integrand minus those parts on (split_b, inf), and
// `analytic_tail` is their closed-form integral over (split_b, inf).
IntegralResult integrate_split(const Integrand& head, const Integrand& reduced_tail,
                               cplx analytic_tail, double zero_exponent,
                               const QuadratureConfig& cfg);

}  // namespace charmoment

#endif
