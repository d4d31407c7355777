#ifndef CHARMOMENT_DISTRIBUTIONS_HPP
#define CHARMOMENT_DISTRIBUTIONS_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "charmoment/kernel.hpp"
#include "charmoment/quadrature.hpp"

namespace charmoment {

enum class DerivSource { closed_form, marchaud_numeric };

struct FracDerivEval {
  double order = 0;
  double point = 0;
  cplx value;
  DerivSource source = DerivSource::closed_form;
};

namespace detail {
class DistNode;
}

// An immutable characteristic-function model. All evaluations are pure and
// safe to call concurrently.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::shared_ptr<const detail::DistNode> node) : node_(std::move(node)) {}

  bool valid() const { return static_cast<bool>(node_); }
  const detail::DistNode& node() const { return *node_; }
  std::shared_ptr<const detail::DistNode> share() const { return node_; }

  cplx cf(double t) const;  // order-0 characteristic function
  // True when f^(r) is available without numeric fractional differentiation.
  bool has_closed_order(double r) const;
  // E|X|^r < infinity?
  bool moment_finite(double r) const;
  // P(X = x); nonzero only for the discrete kinds.
  double atom_mass_at(double x) const;
  // Dominant |X|-scale driving e^{itX} oscillation; >= a small positive floor.
  double oscillation_scale() const;
  // Same, for the recentred variable X - x (drives f_x tails).
  double oscillation_scale_about(double x) const;
  std::string describe() const;

 private:
  std::shared_ptr<const detail::DistNode> node_;
};

Distribution point_mass(double x);
Distribution finite_discrete(std::vector<double> xs, std::vector<double> ws);
Distribution exponential(double rate);
Distribution normal(double mean, double sd);
Distribution negated(Distribution inner);
Distribution shifted(Distribution inner, double c);

// f^(r)(t) = i^r E conj(X^r) e^{itX}. Dispatches to the model's closed form;
// fractional orders without a closed form are routed through the Marchaud
// integral. Throws capability_error when the model cannot supply the order.
cplx cf_frac_deriv(const Distribution& model, double r, double t);
cplx cf_frac_deriv(const Distribution& model, double r, double t, const QuadratureConfig& cfg);

// Marchaud-type numeric fractional derivative of the model's c.f. The
// branches: usual derivative at integral p >= 0; the singular integral of
// f^(floor p) for p > 0; the (-1,0) integral form; the one-sided limit at
// negative integers; and composition for p < -1.
FracDerivEval marchaud_frac_deriv(const Distribution& model, double p, double t,
                                  const QuadratureConfig& cfg);

enum class MomentPart { pos, neg, abs, signed_part };

// E X_+^s e^{iuX} (and the neg/abs/signed variants) by direct density or
// pmf integration. Never touches the characteristic-function machinery;
// this is the independent oracle the tests lean on.
cplx brute_moment_oracle(const Distribution& model, double s, double u, MomentPart part);

// Grammar: point(x=V), discrete(x=[..], w=[..]), exp(rate=V),
// normal(mean=V, sd=V), with wrappers neg(...), shift(..., c=V).
Distribution parse_distribution(const std::string& text);

}  // namespace charmoment

#endif
