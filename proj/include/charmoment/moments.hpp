#ifndef CHARMOMENT_MOMENTS_HPP
#define CHARMOMENT_MOMENTS_HPP

#include <optional>
#include <string>

#include "charmoment/distributions.hpp"
#include "charmoment/kernel.hpp"
#include "charmoment/quadrature.hpp"

namespace charmoment {

struct MomentReport {
  cplx value = 0.0;
  double err_estimate = 0.0;
  bool converged = true;
  std::string method;
  std::optional<double> cross_residual;
  // p was within the shared integer tolerance of an integer and the exact
  // integer-order formulas were used in its place
  bool snapped_integer_order = false;
};

// The four companions returned by the paired representations.
struct PartMoments {
  cplx pos, neg, abs, signed_part;
  double err_estimate = 0.0;
  bool converged = true;
};

struct HalfEqualProb {
  double x = 0;
  double prob = 0;  // P(X < x) + P(X = x)/2
  int m_used = 0;
  double err_estimate = 0.0;
  bool converged = true;
};

// --- generic engine -------------------------------------------------------

// The combination c_p^+(g) E X_+^{r+p} e^{iuX} + e^{-i pi r} c_p^-(g)
// E X_-^{r+p} e^{iuX}, computed as the single integral over the programmable
// g of the linear-combination form.
MomentReport engine_generalized(const Distribution& model, const GSpec& g, double p, double r,
                                double u, const QuadratureConfig& cfg);

// c_p^{+-}(g); closed form for the tagged kinds, quadrature of g otherwise.
std::pair<cplx, cplx> gspec_constants(const GSpec& g, double p, const QuadratureConfig& cfg);

// Solves the odd/even pair for all four part moments.
PartMoments solve_pair(const Distribution& model, const GSpec& g_odd, const GSpec& g_even,
                       double p, double r, double u, const QuadratureConfig& cfg);

// --- Taylor-remainder representations --------------------------------------

// E X_+^{r+p} e^{iuX} from the remainder integral; the whole-line integrand
// is Lebesgue convergent but the small-t cancellation grows with p. (A
// principal-value variant over the full real line exists with a simpler
// integrand; its one-sided prelimits cancel against each other and compute
// worse than this paired one-sided form, so it is not offered.)
MomentReport pos_part_pinelis(const Distribution& model, double p, double r, double u,
                              const QuadratureConfig& cfg);

// The split-at-b evaluator: reduced head integral, boundary terms, raw-f
// tail, and exact power-term sum. Identical in exact arithmetic to
// pos_part_pinelis for every admissible (b, m).
MomentReport pos_part_stabilized(const Distribution& model, double p, double r, double u,
                                 double b, int m, const QuadratureConfig& cfg);

// Preferred m for a given p (the deepest reduction the order allows).
int default_stabilized_m(double p);

// Quadrature-free part moments from one fractional derivative order,
// p in (0, inf) non-integral; requires a closed-form f^(p).
PartMoments pos_part_frac_closed(const Distribution& model, double p, double u);

// u = 0 single-integral forms with Re/Im extraction; routes through the
// fractional closed form when available and p is non-integral.
MomentReport u0_moments(const Distribution& model, double p, MomentPart part,
                        const QuadratureConfig& cfg);

// Equivalent u = 0 absolute-moment form used as an internal cross-check.
double abs_moment_laue(const Distribution& model, double p);

// E|X|^p for p > 0 not an even integer; 2m + q decomposition.
MomentReport abs_moment_zolotarev(const Distribution& model, double p,
                                  const QuadratureConfig& cfg);
MomentReport abs_moment_vonbahr(const Distribution& model, double p, const QuadratureConfig& cfg);

// --- symmetric-difference representations ----------------------------------

// (1/(i^r c_p^+(g_n))) int (Delta_t^n f^(r))(u) / t^{p+1} dt, which equals
// E X_+^{r+p} e^{iuX} + (-1)^n e^{-i pi r} E X_-^{r+p} e^{iuX}.
MomentReport symdiff_single(const Distribution& model, int n, double p, double r, double u,
                            const QuadratureConfig& cfg);

// Odd/even pair n, m > p; returns all four part moments.
PartMoments symdiff_pair(const Distribution& model, int n_odd, int m_even, double p, double r,
                         double u, const QuadratureConfig& cfg);

// Regularized distribution function P(X < x) + P(X = x)/2 via the odd-order
// inversion integral; m = 0 is the classical single-difference form.
HalfEqualProb cdf_halfequal(const Distribution& model, double x, int m,
                            const QuadratureConfig& cfg);

enum class TruncationSide { below, above };

// E conj(X^r) 1{X below/above x, atom split half-and-half}.
MomentReport truncated_moment(const Distribution& model, double r, double x, int m,
                              TruncationSide side, const QuadratureConfig& cfg);

// --- c.f. of the positive part ----------------------------------------------

// E e^{iuX_+} from c.f. values alone.
MomentReport cf_pos_part(const Distribution& model, double u, const QuadratureConfig& cfg);

// E X_+^s e^{iuX} for arbitrary real s, by splitting s = r + p with
// p in (0,1] and delegating to the remainder representation.
MomentReport pos_part_total_order(const Distribution& model, double s, double u,
                                  const QuadratureConfig& cfg);

// --- dispatch ----------------------------------------------------------------

enum class MomentMethod { pinelis, stabilized, symdiff, frac_closed, engine_g };

struct MomentRequest {
  Distribution model;
  double p = 1.0;
  double r = 0.0;
  double u = 0.0;
  MomentPart part = MomentPart::pos;
  std::optional<MomentMethod> method;  // default: stabilized for p >= 1, else pinelis
  double split_b = 1.0;                // stabilized b
  std::optional<int> stabilized_m;
  std::optional<int> symdiff_n;  // odd order; the even companion is chosen automatically
  bool cross_check = false;
  QuadratureConfig cfg;
};

MomentReport compute_moment(const MomentRequest& req);

}  // namespace charmoment

#endif
