#ifndef CHARMOMENT_CONSTANTS_HPP
#define CHARMOMENT_CONSTANTS_HPP

#include "charmoment/kernel.hpp"
#include "charmoment/quadrature.hpp"

namespace charmoment {

enum class GnBranch { generic, lhospital, near_integer_blend };

// The pair of homogeneity constants attached to g_n(t) = (2i)^n sin^n t.
// c_minus = (-1)^n c_plus; c_plus / (2i)^n is real and strictly positive
// everywhere in the admissible window.
struct GnConstant {
  int n = 0;
  double p = 0;
  cplx c_plus;
  cplx c_minus;
  GnBranch branch = GnBranch::generic;
};

// Building blocks of the closed forms, exposed for tests.
struct SigmaRho {
  double sigma = 0;        // sum_{0<=j<n/2} (-1)^j C(n,j) (n-2j)^p
  double sigma_prime = 0;  // d sigma / d p
  cplx rho;                // sin(pi p/2) for even n, i cos(pi p/2) for odd n
  cplx gamma_n;            // 1 for even n, -i for odd n
};

SigmaRho sigma_rho(int n, double p);

// kappa_p = Gamma(-p), cross-checked internally against the reflection form
// -pi / (Gamma(p+1) sin(pi p)). p must not be an integer.
double kappa(double p);

// Admissible p: 0 < p < n for even n, -1 < p < n for odd n (strict).
bool gn_window_contains(int n, double p);

// Closed-form c_p^{+-}(g_n); picks the generic branch, the l'Hospital branch
// when n - p is an even integer, or a two-sided blend within eps of that set.
GnConstant c_plus_gn(int n, double p);

// (2i)^n times the limit-sense integral of sin^n t / t^{p+1}; the
// independent quadrature oracle for c_plus_gn.
cplx c_direct_quadrature(int n, double p, const QuadratureConfig& cfg);

}  // namespace charmoment

#endif
