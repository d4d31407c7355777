#ifndef CHARMOMENT_RISK_HPP
#define CHARMOMENT_RISK_HPP

#include <optional>

#include "charmoment/distributions.hpp"
#include "charmoment/quadrature.hpp"

namespace charmoment {

struct RiskOptions {
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;  // defaults come from first/second moments
  int grid_points = 64;
  QuadratureConfig cfg;
};

struct RiskResult {
  double value = 0;
  double minimizer = 0;
  bool at_bracket_edge = false;  // the infimum ran into the search bracket
  bool convexity_guaranteed = true;  // false for alpha < 1
};

// inf_t [ t + (E(X-t)_+^alpha / q)^{1/alpha} ]: an upper bound on the
// (1-q)-quantile of X.
RiskResult q_alpha(const Distribution& model, double alpha, double q, const RiskOptions& opt);

// inf_{t<x} E(X-t)_+^alpha / (x-t)^alpha: an upper bound on P(X > x).
RiskResult p_alpha(const Distribution& model, double alpha, double x, const RiskOptions& opt);

}  // namespace charmoment

#endif
