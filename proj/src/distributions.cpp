#include "charmoment/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "charmoment/errors.hpp"

namespace charmoment {

namespace detail {

class DistNode {
 public:
  virtual ~DistNode() = default;

  virtual cplx cf_deriv_closed(double r, double t) const = 0;
  virtual bool has_closed_order(double r) const = 0;
  // Fractional orders that must not be auto-routed through the numeric path.
  virtual bool rejects_fractional() const { return false; }

  virtual bool is_discrete() const = 0;
  virtual std::vector<std::pair<double, double>> atoms() const {
    throw std::logic_error("atoms(): continuous model");
  }
  virtual double density(double) const { throw std::logic_error("density(): discrete model"); }
  // Effective support window for direct density integration; pad grows the
  // window with the moment order being integrated.
  virtual std::pair<double, double> density_window(double pad) const {
    (void)pad;
    throw std::logic_error("density_window(): discrete model");
  }

  virtual bool has_atom(double x) const = 0;
  virtual double atom_mass_at(double) const { return 0.0; }
  virtual bool density_positive_near(double x) const = 0;
  virtual double osc_scale() const = 0;
  virtual double osc_scale_about(double x) const {
    return std::max(osc_scale(), std::abs(x));
  }
  virtual std::string describe() const = 0;
};

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

class PointNode final : public DistNode {
 public:
  explicit PointNode(double x) : x_(x) {}

  cplx cf_deriv_closed(double r, double t) const override {
    cplx mod = std::exp(cplx(0.0, t * x_));
    if (is_integral_order(r) && std::llround(r) == 0) return mod;  // f^(0) = 1 at any atom
    return unit_ipow(r) * conj_real_power(x_, r) * mod;
  }
  bool has_closed_order(double r) const override { return x_ != 0.0 || r >= 0.0; }
  bool is_discrete() const override { return true; }
  std::vector<std::pair<double, double>> atoms() const override { return {{x_, 1.0}}; }
  bool has_atom(double x) const override { return x == x_; }
  double atom_mass_at(double x) const override { return x == x_ ? 1.0 : 0.0; }
  bool density_positive_near(double) const override { return false; }
  double osc_scale() const override { return std::abs(x_); }
  double osc_scale_about(double x) const override { return std::abs(x_ - x); }
  std::string describe() const override { return "point(x=" + fmt(x_) + ")"; }

 private:
  double x_;
};

class DiscreteNode final : public DistNode {
 public:
  DiscreteNode(std::vector<double> xs, std::vector<double> ws)
      : xs_(std::move(xs)), ws_(std::move(ws)) {
    if (xs_.empty() || xs_.size() != ws_.size())
      throw std::invalid_argument("discrete: x and w must be non-empty and equal length");
    double sum = 0;
    for (double w : ws_) {
      if (w < 0) throw std::invalid_argument("discrete: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("discrete: weights must sum to 1");
  }

  cplx cf_deriv_closed(double r, double t) const override {
    cplx sum = 0.0;
    bool zero_order = is_integral_order(r) && std::llround(r) == 0;
    for (size_t i = 0; i < xs_.size(); ++i) {
      cplx mod = std::exp(cplx(0.0, t * xs_[i]));
      sum += ws_[i] * (zero_order ? mod : unit_ipow(r) * conj_real_power(xs_[i], r) * mod);
    }
    return sum;
  }
  bool has_closed_order(double r) const override {
    return r >= 0.0 || !has_atom(0.0);
  }
  bool is_discrete() const override { return true; }
  std::vector<std::pair<double, double>> atoms() const override {
    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i < xs_.size(); ++i) out.emplace_back(xs_[i], ws_[i]);
    return out;
  }
  bool has_atom(double x) const override {
    return std::find(xs_.begin(), xs_.end(), x) != xs_.end();
  }
  double atom_mass_at(double x) const override {
    double m = 0;
    for (size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i] == x) m += ws_[i];
    return m;
  }
  bool density_positive_near(double) const override { return false; }
  double osc_scale() const override {
    double m = 0;
    for (double x : xs_) m = std::max(m, std::abs(x));
    return m;
  }
  double osc_scale_about(double x) const override {
    double m = 0;
    for (double xi : xs_) m = std::max(m, std::abs(xi - x));
    return m;
  }
  std::string describe() const override {
    std::string s = "discrete(x=[";
    for (size_t i = 0; i < xs_.size(); ++i) s += (i ? ", " : "") + fmt(xs_[i]);
    s += "], w=[";
    for (size_t i = 0; i < ws_.size(); ++i) s += (i ? ", " : "") + fmt(ws_[i]);
    return s + "])";
  }

 private:
  std::vector<double> xs_, ws_;
};

class ExpNode final : public DistNode {
 public:
  explicit ExpNode(double rate) : rate_(rate) {
    if (!(rate > 0)) throw std::invalid_argument("exp: rate must be > 0");
  }

  // f^(r)(t) = i^r rate Gamma(r+1) (rate - it)^{-(r+1)}, r > -1.
  cplx cf_deriv_closed(double r, double t) const override {
    return unit_ipow(r) * rate_ * gamma_fn(r + 1.0) * cpow(cplx(rate_, -t), -(r + 1.0));
  }
  bool has_closed_order(double r) const override { return r > -1.0; }
  bool is_discrete() const override { return false; }
  double density(double x) const override { return x >= 0 ? rate_ * std::exp(-rate_ * x) : 0.0; }
  std::pair<double, double> density_window(double pad) const override {
    return {0.0, (45.0 + 12.0 * pad) / rate_};
  }
  bool has_atom(double) const override { return false; }
  bool density_positive_near(double x) const override { return x >= 0; }
  double osc_scale() const override { return 1.0; }
  std::string describe() const override { return "exp(rate=" + fmt(rate_) + ")"; }

 private:
  double rate_;
};

class NormalNode final : public DistNode {
 public:
  static constexpr int kMaxOrder = 12;

  NormalNode(double mean, double sd) : mean_(mean), sd_(sd) {
    if (!(sd > 0)) throw std::invalid_argument("normal: sd must be > 0");
    // f^(j)(t) = P_j(t) f(t) with P_{j+1} = P_j' + (i mean - sd^2 t) P_j.
    polys_.resize(kMaxOrder + 1);
    polys_[0] = {cplx(1.0, 0.0)};
    for (int j = 0; j < kMaxOrder; ++j) {
      const auto& pj = polys_[j];
      std::vector<cplx> next(pj.size() + 1, cplx(0.0, 0.0));
      for (size_t k = 0; k + 1 < pj.size(); ++k) next[k] += static_cast<double>(k + 1) * pj[k + 1];
      for (size_t k = 0; k < pj.size(); ++k) {
        next[k] += cplx(0.0, mean_) * pj[k];
        next[k + 1] -= sd_ * sd_ * pj[k];
      }
      polys_[j + 1] = std::move(next);
    }
  }

  cplx cf_deriv_closed(double r, double t) const override {
    int j = static_cast<int>(std::llround(r));
    const auto& poly = polys_.at(j);
    cplx acc = 0.0;
    for (size_t k = poly.size(); k-- > 0;) acc = acc * t + poly[k];
    return acc * cf0(t);
  }
  bool has_closed_order(double r) const override {
    return is_integral_order(r) && std::llround(r) >= 0 && std::llround(r) <= kMaxOrder;
  }
  bool is_discrete() const override { return false; }
  double density(double x) const override {
    double z = (x - mean_) / sd_;
    return std::exp(-0.5 * z * z) / (sd_ * std::sqrt(2.0 * kPi));
  }
  std::pair<double, double> density_window(double pad) const override {
    double half = (14.0 + 2.0 * std::sqrt(pad + 1.0)) * sd_;
    return {mean_ - half, mean_ + half};
  }
  bool has_atom(double) const override { return false; }
  bool density_positive_near(double) const override { return true; }
  double osc_scale() const override { return std::max(1.0, std::abs(mean_)); }
  std::string describe() const override {
    return "normal(mean=" + fmt(mean_) + ", sd=" + fmt(sd_) + ")";
  }

 private:
  cplx cf0(double t) const { return std::exp(cplx(-0.5 * sd_ * sd_ * t * t, mean_ * t)); }

  double mean_, sd_;
  std::vector<std::vector<cplx>> polys_;
};

class NegNode final : public DistNode {
 public:
  explicit NegNode(std::shared_ptr<const DistNode> inner) : inner_(std::move(inner)) {}

  // f_{-X}^{(r)}(t) = conj(f_X^{(r)}(t)); follows from i^r E conj(X^r) e^{itX}
  // and conj((-x)^r) = e^{-i pi r} x^r.
  cplx cf_deriv_closed(double r, double t) const override {
    return std::conj(inner_->cf_deriv_closed(r, t));
  }
  bool has_closed_order(double r) const override { return inner_->has_closed_order(r); }
  bool rejects_fractional() const override { return inner_->rejects_fractional(); }
  bool is_discrete() const override { return inner_->is_discrete(); }
  std::vector<std::pair<double, double>> atoms() const override {
    auto a = inner_->atoms();
    for (auto& [x, w] : a) x = -x;
    return a;
  }
  double density(double x) const override { return inner_->density(-x); }
  std::pair<double, double> density_window(double pad) const override {
    auto [lo, hi] = inner_->density_window(pad);
    return {-hi, -lo};
  }
  bool has_atom(double x) const override { return inner_->has_atom(-x); }
  double atom_mass_at(double x) const override { return inner_->atom_mass_at(-x); }
  bool density_positive_near(double x) const override { return inner_->density_positive_near(-x); }
  double osc_scale() const override { return inner_->osc_scale(); }
  double osc_scale_about(double x) const override { return inner_->osc_scale_about(-x); }
  std::string describe() const override { return "neg(" + inner_->describe() + ")"; }

 private:
  std::shared_ptr<const DistNode> inner_;
};

class ShiftNode final : public DistNode {
 public:
  ShiftNode(std::shared_ptr<const DistNode> inner, double c) : inner_(std::move(inner)), c_(c) {}

  cplx cf_deriv_closed(double r, double t) const override {
    int n = static_cast<int>(std::llround(r));
    cplx mod = std::exp(cplx(0.0, t * c_));
    cplx sum = 0.0;
    cplx ic_pow = 1.0;  // (ic)^0 = 1 in the product rule, also for c = 0
    std::vector<cplx> pows(n + 1);
    for (int e = 0; e <= n; ++e) {
      pows[e] = ic_pow;
      ic_pow *= cplx(0.0, c_);
    }
    for (int j = 0; j <= n; ++j)
      sum += binomial(n, j) * pows[n - j] * inner_->cf_deriv_closed(static_cast<double>(j), t);
    return mod * sum;
  }
  bool has_closed_order(double r) const override {
    if (!is_integral_order(r) || std::llround(r) < 0) return false;
    for (long long j = 0; j <= std::llround(r); ++j)
      if (!inner_->has_closed_order(static_cast<double>(j))) return false;
    return true;
  }
  // No closed mixing rule for fractional orders of e^{itc} f(t).
  bool rejects_fractional() const override { return true; }
  bool is_discrete() const override { return inner_->is_discrete(); }
  std::vector<std::pair<double, double>> atoms() const override {
    auto a = inner_->atoms();
    for (auto& [x, w] : a) x += c_;
    return a;
  }
  double density(double x) const override { return inner_->density(x - c_); }
  std::pair<double, double> density_window(double pad) const override {
    auto [lo, hi] = inner_->density_window(pad);
    return {lo + c_, hi + c_};
  }
  bool has_atom(double x) const override { return inner_->has_atom(x - c_); }
  double atom_mass_at(double x) const override { return inner_->atom_mass_at(x - c_); }
  bool density_positive_near(double x) const override {
    return inner_->density_positive_near(x - c_);
  }
  double osc_scale() const override { return inner_->osc_scale() + std::abs(c_); }
  double osc_scale_about(double x) const override { return inner_->osc_scale_about(x - c_); }
  std::string describe() const override {
    return "shift(" + inner_->describe() + ", c=" + fmt(c_) + ")";
  }

 private:
  std::shared_ptr<const DistNode> inner_;
  double c_;
};

}  // namespace
}  // namespace detail

using detail::DistNode;

cplx Distribution::cf(double t) const { return node_->cf_deriv_closed(0.0, t); }

bool Distribution::has_closed_order(double r) const { return node_->has_closed_order(r); }

bool Distribution::moment_finite(double r) const {
  if (r >= 0.0) return true;  // all supported kinds have every positive moment
  if (node_->has_atom(0.0)) return false;
  if (node_->density_positive_near(0.0)) return r > -1.0;
  return true;
}

double Distribution::atom_mass_at(double x) const { return node_->atom_mass_at(x); }

double Distribution::oscillation_scale() const { return std::max(node_->osc_scale(), 1e-9); }

double Distribution::oscillation_scale_about(double x) const {
  return std::max(node_->osc_scale_about(x), 1e-9);
}

std::string Distribution::describe() const { return node_->describe(); }

Distribution point_mass(double x) {
  return Distribution(std::make_shared<detail::PointNode>(x));
}
Distribution finite_discrete(std::vector<double> xs, std::vector<double> ws) {
  return Distribution(std::make_shared<detail::DiscreteNode>(std::move(xs), std::move(ws)));
}
Distribution exponential(double rate) {
  return Distribution(std::make_shared<detail::ExpNode>(rate));
}
Distribution normal(double mean, double sd) {
  return Distribution(std::make_shared<detail::NormalNode>(mean, sd));
}
Distribution negated(Distribution inner) {
  return Distribution(std::make_shared<detail::NegNode>(inner.share()));
}
Distribution shifted(Distribution inner, double c) {
  return Distribution(std::make_shared<detail::ShiftNode>(inner.share(), c));
}

cplx cf_frac_deriv(const Distribution& model, double r, double t) {
  return cf_frac_deriv(model, r, t, QuadratureConfig{});
}

cplx cf_frac_deriv(const Distribution& model, double r, double t, const QuadratureConfig& cfg) {
  if (is_integral_order(r)) r = std::round(r);
  if (model.has_closed_order(r)) return model.node().cf_deriv_closed(r, t);
  if (model.node().rejects_fractional() && !is_integral_order(r))
    throw capability_error("cf_frac_deriv: fractional order not available for " +
                           model.describe());
  if (!model.moment_finite(r))
    throw capability_error("cf_frac_deriv: E|X|^r infinite at r = " + std::to_string(r));
  return marchaud_frac_deriv(model, r, t, cfg).value;
}

namespace {

constexpr double kDeltaLim = 1e-6;  // one-sided limit offset at negative integer orders

FracDerivEval marchaud_impl(const Distribution& model, double p, double t,
                            const QuadratureConfig& cfg, int depth) {
  FracDerivEval out;
  out.order = p;
  out.point = t;
  out.source = DerivSource::marchaud_numeric;

  if (!model.moment_finite(p))
    throw capability_error("marchaud_frac_deriv: E|X|^p infinite at p = " + std::to_string(p));
  if (depth > 6) throw numeric_error("marchaud_frac_deriv: composition too deep");

  QuadratureConfig local = cfg;
  local.tail_period_hint = std::clamp(kPi / model.oscillation_scale(), 1e-3, 1e3);

  if (is_integral_order(p)) {
    long long n = std::llround(p);
    if (n >= 0) {
      if (!model.has_closed_order(static_cast<double>(n)))
        throw capability_error("marchaud_frac_deriv: integer order " + std::to_string(n) +
                               " beyond the closed-form range of " + model.describe());
      out.value = cf_frac_deriv(model, static_cast<double>(n), t, cfg);
      out.source = DerivSource::closed_form;
      return out;
    }
    // one-sided limit q -> p+ realized at p + delta
    out.value = marchaud_impl(model, static_cast<double>(n) + kDeltaLim, t, cfg, depth + 1).value;
    return out;
  }

  if (p > 0.0) {
    long long k = static_cast<long long>(std::floor(p));
    if (!model.has_closed_order(static_cast<double>(k)))
      throw capability_error("marchaud_frac_deriv: needs the closed integer order " +
                             std::to_string(k) + " on " + model.describe());
    double lambda = p - static_cast<double>(k);
    cplx fk_t = cf_frac_deriv(model, static_cast<double>(k), t, cfg);
    Integrand head = [&model, k, t, fk_t, lambda, &cfg](double s) -> cplx {
      return (cf_frac_deriv(model, static_cast<double>(k), t - s, cfg) - fk_t) /
             std::pow(s, 1.0 + lambda);
    };
    Integrand tail = [&model, k, t, lambda, &cfg](double s) -> cplx {
      return cf_frac_deriv(model, static_cast<double>(k), t - s, cfg) /
             std::pow(s, 1.0 + lambda);
    };
    cplx analytic = -fk_t * std::pow(local.split_b, -lambda) / lambda;
    IntegralResult ir = integrate_split(head, tail, analytic, lambda, local);
    if (!ir.converged)
      throw numeric_error("marchaud_frac_deriv: singular integral did not converge");
    out.value = ir.value / gamma_fn(-lambda);
    return out;
  }

  if (p > -1.0) {
    Integrand f = [&model, t, p, &cfg](double s) -> cplx {
      return cf_frac_deriv(model, 0.0, t - s, cfg) / std::pow(s, 1.0 + p);
    };
    IntegralResult ir = integrate_zero_inf(f, 1.0 + p, local);
    if (!ir.converged)
      throw numeric_error("marchaud_frac_deriv: limit-sense integral did not converge");
    out.value = ir.value / gamma_fn(-p);
    return out;
  }

  // p < -1, non-integer: g^{(p)} = (g^{(ceil p)})^{(p - ceil p)}.
  long long c = static_cast<long long>(std::ceil(p));
  double q = p - static_cast<double>(c);  // in (-1, 0)
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.rel_tol = std::min(cfg.rel_tol, 1e-9);
  Integrand f = [&model, c, t, q, &inner_cfg, depth](double s) -> cplx {
    return marchaud_impl(model, static_cast<double>(c), t - s, inner_cfg, depth + 1).value /
           std::pow(s, 1.0 + q);
  };
  IntegralResult ir = integrate_zero_inf(f, 1.0 + q, local);
  if (!ir.converged)
    throw numeric_error("marchaud_frac_deriv: composed integral did not converge");
  out.value = ir.value / gamma_fn(-q);
  return out;
}

}  // namespace

FracDerivEval marchaud_frac_deriv(const Distribution& model, double p, double t,
                                  const QuadratureConfig& cfg) {
  return marchaud_impl(model, p, t, cfg, 0);
}

namespace {

// Self-contained adaptive Simpson for the brute-force oracle; shares no
// code with the quadrature module it cross-checks.
cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b, cplx fa, cplx fm,
                 cplx fb, cplx whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  cplx flm = f(lm), frm = f(rm);
  cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  cplx both = left + right;
  if (depth <= 0 || std::abs(both - whole) < 15.0 * tol) return both + (both - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

cplx simpson(const std::function<cplx(double)>& f, double a, double b, double tol) {
  if (!(a < b)) return 0.0;
  cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 36);
}

// int over x > 0 of x^s e^{iux} rho(x) dx, where rho(y) = node density seen
// through `dens`. Handles the integrable singularity at 0 for s in (-1,0).
cplx brute_half_line(const std::function<double(double)>& dens, double hi, double s, double u) {
  if (hi <= 0) return 0.0;
  auto raw = [&](double x) -> cplx {
    double d = dens(x);
    if (d == 0.0) return 0.0;
    return std::pow(x, s) * std::exp(cplx(0.0, u * x)) * d;
  };
  if (s >= 0.0) return simpson(raw, 0.0, hi, 1e-12);
  // x = y^{1/(1+s)} turns x^s dx into dy/(1+s)
  double q = 1.0 / (1.0 + s);
  auto g = [&](double y) -> cplx {
    double x = std::pow(y, q);
    double d = dens(x);
    if (d == 0.0) return 0.0;
    return q * std::exp(cplx(0.0, u * x)) * d;
  };
  return simpson(g, 0.0, std::pow(hi, 1.0 + s), 1e-12);
}

}  // namespace

cplx brute_moment_oracle(const Distribution& model, double s, double u, MomentPart part) {
  const DistNode& node = model.node();
  if (part == MomentPart::abs) {
    return brute_moment_oracle(model, s, u, MomentPart::pos) +
           brute_moment_oracle(model, s, u, MomentPart::neg);
  }
  if (part == MomentPart::signed_part) {
    return brute_moment_oracle(model, s, u, MomentPart::pos) -
           brute_moment_oracle(model, s, u, MomentPart::neg);
  }
  bool positive_side = (part == MomentPart::pos);

  if (node.is_discrete()) {
    cplx sum = 0.0;
    for (auto [x, w] : node.atoms()) {
      double xs = positive_side ? x : -x;
      if (xs > 0) {
        sum += w * std::pow(xs, s) * std::exp(cplx(0.0, u * x));
      } else if (xs == 0.0 && s < 0) {
        throw std::domain_error("brute_moment_oracle: atom at 0 with negative order");
      }
      // xs <= 0 contributes 0, including 0^0 = 0
    }
    return sum;
  }

  auto [lo, hi] = node.density_window(std::abs(s));
  if (positive_side) {
    auto dens = [&node](double x) { return node.density(x); };
    return brute_half_line(dens, hi, s, u);
  }
  auto dens = [&node](double y) { return node.density(-y); };
  return brute_half_line(dens, -lo, s, -u);
}

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream os;
    os << "distribution spec error at offset " << pos << ": " << what << " (near '"
       << text.substr(pos, 12) << "')";
    throw std::invalid_argument(os.str());
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected identifier");
    return text.substr(start, pos - start);
  }
  double number() {
    skip();
    size_t consumed = 0;
    double v = 0;
    try {
      v = std::stod(text.substr(pos), &consumed);
    } catch (const std::exception&) {
      fail("expected number");
    }
    pos += consumed;
    return v;
  }
  std::vector<double> number_list() {
    expect('[');
    std::vector<double> out;
    if (!eat(']')) {
      out.push_back(number());
      while (eat(',')) out.push_back(number());
      expect(']');
    }
    return out;
  }
  void expect_key(const std::string& key) {
    std::string k = ident();
    if (k != key) fail("expected '" + key + "=', got '" + k + "'");
    expect('=');
  }

  Distribution dist() {
    std::string name = ident();
    expect('(');
    Distribution out;
    if (name == "point") {
      expect_key("x");
      out = point_mass(number());
    } else if (name == "exp") {
      expect_key("rate");
      out = exponential(number());
    } else if (name == "normal") {
      expect_key("mean");
      double m = number();
      expect(',');
      expect_key("sd");
      out = normal(m, number());
    } else if (name == "discrete") {
      expect_key("x");
      auto xs = number_list();
      expect(',');
      expect_key("w");
      auto ws = number_list();
      out = finite_discrete(std::move(xs), std::move(ws));
    } else if (name == "neg") {
      out = negated(dist());
    } else if (name == "shift") {
      Distribution inner = dist();
      expect(',');
      expect_key("c");
      out = shifted(std::move(inner), number());
    } else {
      fail("unknown distribution '" + name + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace

Distribution parse_distribution(const std::string& text) {
  Parser p(text);
  Distribution d = p.dist();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return d;
}

}  // namespace charmoment
