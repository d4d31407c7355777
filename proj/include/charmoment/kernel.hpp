#ifndef CHARMOMENT_KERNEL_HPP
#define CHARMOMENT_KERNEL_HPP

#include <complex>
#include <functional>
#include <vector>

namespace charmoment {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Shared tolerance for "p is an integer" decisions. Every integer-indicator
// branch in the library uses this single test so that modules cannot
// disagree about which side of an integer a given p falls on.
inline constexpr double kEpsInt = 1e-9;

bool is_integral_order(double p);

// p = ell + lambda with lambda in (0,1]; k = floor(p).
// For integral p (within kEpsInt): k = p, ell = p - 1, lambda = 1.
struct OrderDecomposition {
  double p = 0;
  long long k = 0;    // floor(p)
  long long ell = 0;  // ceil(p - 1)
  double lambda = 0;  // p - ell, in (0, 1]
  bool is_integer = false;

  static OrderDecomposition of(double p);
};

// e^{i pi r / 2}, i.e. i^r under the principal convention.
cplx unit_ipow(double r);

// z^p with arg z in (-pi, pi]. cpow(0, p) = 0 for p >= 0 (0^0 = 0 in the
// moment-expression sense; see distributions for the c.f. side of that
// convention). Throws std::domain_error for z = 0, p < 0.
cplx cpow(cplx z, double p);

// conj(x^r) for real x: x^r for x > 0, e^{-i pi r} |x|^r for x < 0,
// 0 for x = 0 (with 0^0 = 0). Throws std::domain_error for x = 0, r < 0.
cplx conj_real_power(double x, double r);

// e_m(z) = e^z - sum_{j<=m} z^j/j!, evaluated by the tail series when
// |z| <= m+1 so the small-|z| result is not lost to cancellation.
cplx e_m(cplx z, int m);

// Evaluator contract: deriv(j, z) returns psi^(j)(z). taylor_remainder uses
// orders 0..m at u plus order 0 at u+delta; when the subtraction is deeply
// cancelled it switches to the integral form of the remainder, which
// additionally queries order m+1 on the segment between u and u+delta.
using DerivEvaluator = std::function<cplx(int order, cplx point)>;

// (R_m psi)(u; delta) = psi(u+delta) - sum_{j<=m} psi^(j)(u) delta^j / j!.
// For m < 0 the polynomial is empty and the result is psi(u+delta).
cplx taylor_remainder(const DerivEvaluator& deriv, int m, cplx u, cplx delta);

// sum_{j=0}^n (-1)^j C(n,j) psi(z + (n-2j) v); annihilates polynomials of
// degree < n.
cplx sym_diff(const std::function<cplx(cplx)>& psi, int n, cplx v, cplx z);

// Same value through the B-spline representation
//   (2v)^n int M_n(s) psi^(n)(z + 2vs) ds,  supp M_n = [-n/2, n/2],
// used when the alternating sum is deeply cancelled (small |v|). The
// evaluator is queried at order 0 (naive path) or order n (stable path).
cplx sym_diff_stable(const DerivEvaluator& deriv, int n, cplx v, cplx z);

// Gamma on the real line; throws std::domain_error at the poles.
double gamma_fn(double x);

// C(n, j), exact integer arithmetic for n <= 66.
double binomial(int n, int j);

// Nodes and weights of the n-point Gauss-Legendre rule on (-1, 1); cached.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// One term a * conj(t^q) * e^{i v t} of a programmable g; the engine only
// accepts finite linear combinations of this shape.
struct GTerm {
  cplx a;
  double q = 0;
  double v = 0;
};

struct GSpec {
  enum class Kind { generic, sine, g_n };

  std::vector<GTerm> terms;
  // Order of vanishing of g at 0 after cancellation between terms; bounds
  // the admissible p from above.
  double zero_order = 0;
  Kind kind = Kind::generic;
  int n = 0;  // set for Kind::g_n

  // g(t) evaluated for real t (used by the constants-by-quadrature path).
  cplx evaluate(double t) const;
  bool is_odd() const;
  bool is_even() const;
  // Per-term order conditions against p, plus the vanishing-order bound.
  void validate_for(double p) const;
};

// g(t) = sin t as a two-term spec.
GSpec gspec_sin();
// g(t) = (2i)^n sin^n t = sum_j (-1)^j C(n,j) e^{i(n-2j)t}.
GSpec gspec_gn(int n);

}  // namespace charmoment

#endif
