#include "charmoment/kernel.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <map>
#include <sstream>
#include <stdexcept>

#include "charmoment/errors.hpp"

namespace charmoment {

bool is_integral_order(double p) {
  return std::abs(p - std::round(p)) < kEpsInt;
}

OrderDecomposition OrderDecomposition::of(double p) {
  OrderDecomposition d;
  d.p = p;
  if (is_integral_order(p)) {
    d.is_integer = true;
    d.k = static_cast<long long>(std::llround(p));
    d.ell = d.k - 1;
    d.lambda = 1.0;
  } else {
    d.is_integer = false;
    d.k = static_cast<long long>(std::floor(p));
    d.ell = d.k;  // ceil(p-1) = floor(p) for non-integral p
    d.lambda = p - static_cast<double>(d.ell);
  }
  return d;
}

cplx unit_ipow(double r) {
  // i^r = e^{i pi r/2}; computed from the half-angle directly so integer r
  // lands on the axes up to one ulp.
  double h = 0.5 * kPi * r;
  return {std::cos(h), std::sin(h)};
}

namespace {

double principal_arg(cplx z) {
  double im = z.imag();
  if (im == 0.0) im = 0.0;  // map -0 to +0 so arg(-1) = +pi
  return std::atan2(im, z.real());
}

}  // namespace

cplx cpow(cplx z, double p) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(p))
    throw std::domain_error("cpow: non-finite input");
  if (z == cplx(0.0, 0.0)) {
    if (p < 0) throw std::domain_error("cpow: 0^p with p < 0");
    return 0.0;  // includes 0^0 = 0
  }
  double mod = std::abs(z);
  double th = principal_arg(z);
  double m = std::pow(mod, p);
  double a = p * th;
  return {m * std::cos(a), m * std::sin(a)};
}

cplx conj_real_power(double x, double r) {
  if (!std::isfinite(x) || !std::isfinite(r))
    throw std::domain_error("conj_real_power: non-finite input");
  if (x > 0) return std::pow(x, r);
  if (x < 0) {
    double m = std::pow(-x, r);
    double a = -kPi * r;
    return {m * std::cos(a), m * std::sin(a)};
  }
  if (r < 0) throw std::domain_error("conj_real_power: 0^r with r < 0");
  return 0.0;
}

cplx e_m(cplx z, int m) {
  if (m < 0) throw std::invalid_argument("e_m: m must be >= 0");
  double az = std::abs(z);
  if (az <= m + 1.0) {
    // tail series sum_{j>m} z^j/j!
    cplx term = 1.0;
    for (int j = 1; j <= m + 1; ++j) term *= z / static_cast<double>(j);
    cplx sum = 0.0;
    int j = m + 1;
    for (int iter = 0; iter < 1000; ++iter) {
      sum += term;
      ++j;
      term *= z / static_cast<double>(j);
      if (std::abs(term) <= 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
  }
  cplx poly = 0.0, term = 1.0;
  for (int j = 0; j <= m; ++j) {
    poly += term;
    term *= z / static_cast<double>(j + 1);
  }
  return std::exp(z) - poly;
}

cplx taylor_remainder(const DerivEvaluator& deriv, int m, cplx u, cplx delta) {
  cplx tip = deriv(0, u + delta);
  if (m < 0) return tip;

  cplx poly = 0.0;
  double magsum = std::abs(tip);
  cplx pw = 1.0;
  for (int j = 0; j <= m; ++j) {
    cplx term = deriv(j, u) * pw;
    poly += term;
    magsum += std::abs(term);
    pw *= delta / static_cast<double>(j + 1);
  }
  cplx naive = tip - poly;

  // When the subtraction eats more than ~4 digits, use the integral form
  //   (R_m psi)(u;delta) = delta^{m+1}/m! int_0^1 (1-a)^m psi^{(m+1)}(u+a delta) da,
  // which has no cancellation. Restricted to moderate |delta| so a fixed
  // Gauss rule resolves the integrand.
  if (std::abs(naive) >= 1e-4 * magsum || std::abs(delta) > 2.0) return naive;

  const GaussLegendre& gl = gauss_legendre(48);
  cplx acc = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    double a = 0.5 * (gl.nodes[i] + 1.0);
    double w = 0.5 * gl.weights[i];
    acc += w * std::pow(1.0 - a, m) * deriv(m + 1, u + a * delta);
  }
  cplx pref = 1.0;
  for (int j = 1; j <= m + 1; ++j) pref *= delta / static_cast<double>(j);
  pref *= static_cast<double>(m + 1);  // delta^{m+1}/m!
  return pref * acc;
}

cplx sym_diff(const std::function<cplx(cplx)>& psi, int n, cplx v, cplx z) {
  if (n < 1) throw std::invalid_argument("sym_diff: n must be >= 1");
  cplx sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    double c = binomial(n, j);
    cplx val = psi(z + static_cast<double>(n - 2 * j) * v);
    sum += (j % 2 == 0 ? c : -c) * val;
  }
  return sum;
}

namespace {

// symmetric cardinal B-spline of order n (support [-n/2, n/2], unit mass)
double bspline_m(int n, double s) {
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    double x = s + 0.5 * n - j;
    if (x <= 0.0) continue;
    double piece = (n == 1) ? 1.0 : std::pow(x, n - 1);
    acc += (j % 2 == 0 ? piece : -piece) * binomial(n, j);
  }
  return acc / gamma_fn(static_cast<double>(n));
}

}  // namespace

cplx sym_diff_stable(const DerivEvaluator& deriv, int n, cplx v, cplx z) {
  if (n < 1) throw std::invalid_argument("sym_diff_stable: n must be >= 1");
  cplx sum = 0.0;
  double magsum = 0.0;
  for (int j = 0; j <= n; ++j) {
    double c = binomial(n, j);
    cplx val = deriv(0, z + static_cast<double>(n - 2 * j) * v);
    sum += (j % 2 == 0 ? c : -c) * val;
    magsum += c * std::abs(val);
  }
  if (std::abs(sum) >= 1e-4 * magsum || std::abs(v) > 1.5) return sum;

  const GaussLegendre& gl = gauss_legendre(12);
  cplx acc = 0.0;
  for (int piece = 0; piece < n; ++piece) {
    double a = -0.5 * n + piece;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double s = a + 0.5 * (gl.nodes[i] + 1.0);
      acc += 0.5 * gl.weights[i] * bspline_m(n, s) * deriv(n, z + 2.0 * s * v);
    }
  }
  cplx pw = 1.0;
  for (int j = 0; j < n; ++j) pw *= 2.0 * v;
  return pw * acc;
}

double gamma_fn(double x) {
  if (x <= 0.0 && std::abs(x - std::round(x)) < kEpsInt) {
    std::ostringstream os;
    os << "gamma_fn: pole at x = " << x;
    throw std::domain_error(os.str());
  }
  return std::tgamma(x);
}

double binomial(int n, int j) {
  if (j < 0 || n < 0 || j > n) throw std::invalid_argument("binomial: need 0 <= j <= n");
  if (n > 66) throw std::invalid_argument("binomial: n too large for exact evaluation");
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 67>, 67> t{};
    for (int i = 0; i <= 66; ++i) {
      t[i][0] = 1;
      for (int k = 1; k <= i; ++k)
        t[i][k] = t[i - 1][k - 1] + (k <= i - 1 ? t[i - 1][k] : 0);
    }
    return t;
  }();
  return static_cast<double>(table[n][j]);
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-angle initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  auto [pos, inserted] = cache.emplace(n, std::move(gl));
  (void)inserted;
  return pos->second;
}

cplx GSpec::evaluate(double t) const {
  cplx sum = 0.0;
  for (const auto& term : terms) {
    cplx tq = (term.q == 0.0) ? cplx(1.0, 0.0)
                              : std::conj(cpow(cplx(t, 0.0), term.q));
    sum += term.a * tq * std::exp(cplx(0.0, term.v * t));
  }
  return sum;
}

bool GSpec::is_odd() const {
  for (double t : {0.37, 1.13, 2.71}) {
    if (std::abs(evaluate(-t) + evaluate(t)) > 1e-10 * (1.0 + std::abs(evaluate(t)))) return false;
  }
  return true;
}

bool GSpec::is_even() const {
  for (double t : {0.37, 1.13, 2.71}) {
    if (std::abs(evaluate(-t) - evaluate(t)) > 1e-10 * (1.0 + std::abs(evaluate(t)))) return false;
  }
  return true;
}

void GSpec::validate_for(double p) const {
  if (terms.empty()) throw std::invalid_argument("GSpec: empty term list");
  for (const auto& term : terms) {
    if (term.a == cplx(0.0, 0.0)) throw std::invalid_argument("GSpec: zero coefficient");
    if (term.q < 0) throw std::invalid_argument("GSpec: negative power order q");
    if (term.v != 0.0) {
      if (!(p > term.q - 1.0))
        throw std::invalid_argument("GSpec: order condition p > q - 1 violated");
    } else {
      if (!(p > term.q))
        throw std::invalid_argument("GSpec: order condition p > q violated for v = 0");
    }
  }
  if (!(zero_order > std::max(0.0, p)))
    throw std::invalid_argument("GSpec: vanishing order at 0 must exceed max(0, p)");
}

GSpec gspec_sin() {
  GSpec g;
  cplx half_over_i = cplx(0.0, -0.5);  // 1/(2i)
  g.terms.push_back({half_over_i, 0.0, 1.0});
  g.terms.push_back({-half_over_i, 0.0, -1.0});
  g.zero_order = 1.0;
  g.kind = GSpec::Kind::sine;
  g.n = 1;
  return g;
}

GSpec gspec_gn(int n) {
  if (n < 1) throw std::invalid_argument("gspec_gn: n must be >= 1");
  GSpec g;
  for (int j = 0; j <= n; ++j) {
    double c = binomial(n, j);
    g.terms.push_back({(j % 2 == 0 ? c : -c), 0.0, static_cast<double>(n - 2 * j)});
  }
  g.zero_order = static_cast<double>(n);
  g.kind = GSpec::Kind::g_n;
  g.n = n;
  return g;
}

}  // namespace charmoment
