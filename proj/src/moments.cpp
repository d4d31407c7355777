#include "charmoment/moments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "charmoment/constants.hpp"
#include "charmoment/errors.hpp"

namespace charmoment {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_moment(const Distribution& model, double order, const char* who) {
  if (!model.moment_finite(order)) {
    std::ostringstream os;
    os << who << ": E|X|^" << order << " is not finite for " << model.describe();
    throw capability_error(os.str());
  }
}

// Cached-at-u evaluator of one weighted remainder pair
//   (R_j psi)(u; t)/i^{p+1} + (-1)^{parity} (R_j psi)(u; -t)/(-i)^{p+1}
// for psi = f^(base). Derivatives at u are computed once; off-u queries go
// back to the model.
class RemainderPair {
 public:
  RemainderPair(const Distribution& model, double base, int j, double p, int parity, double u,
                const QuadratureConfig& cfg)
      : model_(model), base_(base), j_(j), u_(u), cfg_(cfg) {
    wplus_ = unit_ipow(-(p + 1.0));
    wminus_ = unit_ipow(p + 1.0);
    if (parity % 2 != 0) wminus_ = -wminus_;
    for (int jj = 0; jj <= j_; ++jj)
      at_u_.push_back(cf_frac_deriv(model_, base_ + jj, u_, cfg_));
    eval_ = [this](int order, cplx z) -> cplx {
      if (z == cplx(u_, 0.0) && order <= j_) return at_u_[order];
      return cf_frac_deriv(model_, base_ + order, z.real(), cfg_);
    };
  }

  cplx operator()(double t) const {
    cplx plus = taylor_remainder(eval_, j_, cplx(u_, 0.0), cplx(t, 0.0));
    cplx minus = taylor_remainder(eval_, j_, cplx(u_, 0.0), cplx(-t, 0.0));
    return plus * wplus_ + minus * wminus_;
  }

 private:
  const Distribution& model_;
  double base_;
  int j_;
  double u_;
  QuadratureConfig cfg_;
  cplx wplus_, wminus_;
  std::vector<cplx> at_u_;
  DerivEvaluator eval_;
};

QuadratureConfig with_hint(const QuadratureConfig& cfg, double spacing) {
  QuadratureConfig out = cfg;
  out.tail_period_hint = std::clamp(spacing, 1e-3, 1e3);
  return out;
}

MomentReport report_from(cplx value, const IntegralResult& ir, double prefactor_mag,
                         std::string method) {
  MomentReport rep;
  rep.value = value;
  rep.err_estimate = prefactor_mag * ir.err_estimate;
  rep.converged = ir.converged;
  rep.method = std::move(method);
  return rep;
}

}  // namespace

// --- generic engine ---------------------------------------------------------

MomentReport engine_generalized(const Distribution& model, const GSpec& g, double p, double r,
                                double u, const QuadratureConfig& cfg) {
  g.validate_for(p);
  require_moment(model, r + p, "engine_generalized");
  for (const auto& term : g.terms) require_moment(model, r + term.q, "engine_generalized");

  double maxv = 0;
  for (const auto& term : g.terms) maxv = std::max(maxv, std::abs(term.v));
  double scale = model.oscillation_scale();
  QuadratureConfig local = with_hint(cfg, kPi / (std::max(maxv, 0.25) * scale));

  // The g_n-shaped specs are exactly the symmetric difference of f^(r); use
  // the cancellation-protected evaluator for them near 0.
  DerivEvaluator dpsi = [&model, r, &cfg](int order, cplx z) -> cplx {
    return cf_frac_deriv(model, r + order, z.real(), cfg);
  };
  const bool diff_shape = (g.kind == GSpec::Kind::g_n || g.kind == GSpec::Kind::sine);
  const cplx diff_norm = (g.kind == GSpec::Kind::sine) ? cplx(0.0, -0.5) : cplx(1.0, 0.0);
  Integrand head = [&](double t) -> cplx {
    if (diff_shape) {
      return diff_norm * sym_diff_stable(dpsi, g.n, cplx(t, 0.0), cplx(u, 0.0)) /
             std::pow(t, p + 1.0);
    }
    cplx sum = 0.0;
    for (const auto& term : g.terms) {
      cplx tq = (term.q == 0.0) ? cplx(1.0, 0.0) : std::pow(t, term.q) * unit_ipow(-term.q);
      sum += term.a * tq * cf_frac_deriv(model, r + term.q, u + term.v * t, cfg);
    }
    return sum / std::pow(t, p + 1.0);
  };
  // v = 0 terms are stationary in t; their tails are exact power integrals
  // (condition p > q guarantees convergence).
  Integrand tail = [&](double t) -> cplx {
    cplx sum = 0.0;
    for (const auto& term : g.terms) {
      if (term.v == 0.0) continue;
      cplx tq = (term.q == 0.0) ? cplx(1.0, 0.0) : std::pow(t, term.q) * unit_ipow(-term.q);
      sum += term.a * tq * cf_frac_deriv(model, r + term.q, u + term.v * t, cfg);
    }
    return sum / std::pow(t, p + 1.0);
  };
  cplx analytic = 0.0;
  for (const auto& term : g.terms) {
    if (term.v != 0.0) continue;
    analytic += term.a * unit_ipow(-term.q) * cf_frac_deriv(model, r + term.q, u, cfg) /
                ((p - term.q) * std::pow(local.split_b, p - term.q));
  }
  double alpha = p + 1.0 - g.zero_order;
  IntegralResult ir =
      integrate_split(head, tail, analytic, (alpha > 0 && alpha < 1) ? alpha : 0.0, local);
  return report_from(unit_ipow(-r) * ir.value, ir, 1.0, "engine_generalized");
}

std::pair<cplx, cplx> gspec_constants(const GSpec& g, double p, const QuadratureConfig& cfg) {
  if (g.kind == GSpec::Kind::g_n) {
    GnConstant c = c_plus_gn(g.n, p);
    return {c.c_plus, c.c_minus};
  }
  if (g.kind == GSpec::Kind::sine) {
    // sin t = g_1(t)/(2i)
    GnConstant c = c_plus_gn(1, p);
    cplx cp = c.c_plus / cplx(0.0, 2.0);
    return {cp, -cp};
  }
  g.validate_for(p);
  double maxv = 0;
  for (const auto& term : g.terms) maxv = std::max(maxv, std::abs(term.v));
  QuadratureConfig local = with_hint(cfg, kPi / std::max(maxv, 0.25));
  double alpha = p + 1.0 - g.zero_order;
  if (!(alpha > 0 && alpha < 1)) alpha = 0.0;
  auto one = [&](double sign) -> cplx {
    Integrand head = [&g, p, sign](double t) -> cplx {
      return g.evaluate(sign * t) / std::pow(t, p + 1.0);
    };
    Integrand tail = [&g, p, sign](double t) -> cplx {
      cplx sum = 0.0;
      for (const auto& term : g.terms) {
        if (term.v == 0.0) continue;
        cplx tq = (term.q == 0.0)
                      ? cplx(1.0, 0.0)
                      : std::conj(cpow(cplx(sign * t, 0.0), term.q));
        sum += term.a * tq * std::exp(cplx(0.0, term.v * sign * t));
      }
      return sum / std::pow(t, p + 1.0);
    };
    cplx analytic = 0.0;
    for (const auto& term : g.terms) {
      if (term.v != 0.0) continue;
      cplx sq = (term.q == 0.0) ? cplx(1.0, 0.0)
                                : std::conj(cpow(cplx(sign, 0.0), term.q));
      analytic += term.a * sq / ((p - term.q) * std::pow(local.split_b, p - term.q));
    }
    IntegralResult ir = integrate_split(head, tail, analytic, alpha, local);
    if (!ir.converged) throw numeric_error("gspec_constants: quadrature did not converge");
    return ir.value;
  };
  return {one(1.0), one(-1.0)};
}

PartMoments solve_pair(const Distribution& model, const GSpec& g_odd, const GSpec& g_even,
                       double p, double r, double u, const QuadratureConfig& cfg) {
  if (!g_odd.is_odd()) throw std::invalid_argument("solve_pair: g_odd is not odd");
  if (!g_even.is_even()) throw std::invalid_argument("solve_pair: g_even is not even");
  cplx c_o = gspec_constants(g_odd, p, cfg).first;
  cplx c_e = gspec_constants(g_even, p, cfg).first;
  if (std::abs(c_o * c_e) < 1e-14)
    throw numeric_error("solve_pair: vanishing constant product c_p+(g1) c_p+(g2)");

  MomentReport so = engine_generalized(model, g_odd, p, r, u, cfg);
  MomentReport se = engine_generalized(model, g_even, p, r, u, cfg);
  cplx a = so.value / c_o;  // pos - e^{-i pi r} neg
  cplx b = se.value / c_e;  // pos + e^{-i pi r} neg

  PartMoments out;
  out.pos = 0.5 * (a + b);
  out.neg = unit_ipow(2.0 * r) * 0.5 * (b - a);
  out.abs = out.pos + out.neg;
  out.signed_part = out.pos - out.neg;
  out.err_estimate = so.err_estimate / std::abs(c_o) + se.err_estimate / std::abs(c_e);
  out.converged = so.converged && se.converged;
  return out;
}

// --- Taylor-remainder representations ----------------------------------------

MomentReport pos_part_pinelis(const Distribution& model, double p, double r, double u,
                              const QuadratureConfig& cfg) {
  if (!(p > 0)) throw std::invalid_argument("pos_part_pinelis: p must be > 0");
  // The m = ell+1 instance of the split representation is the identity that
  // regroups this integrand without touching the (0, b) part, so the raw
  // remainder integrand (and its small-t behaviour) is preserved while the
  // tail's power terms are integrated exactly.
  OrderDecomposition od = OrderDecomposition::of(p);
  MomentReport rep =
      pos_part_stabilized(model, p, r, u, cfg.split_b, static_cast<int>(od.ell) + 1, cfg);
  rep.method = "pinelis";
  return rep;
}

int default_stabilized_m(double p) {
  OrderDecomposition od = OrderDecomposition::of(p);
  return od.ell >= 1 ? static_cast<int>(od.ell) : static_cast<int>(od.ell) + 1;
}

MomentReport pos_part_stabilized(const Distribution& model, double p, double r, double u,
                                 double b, int m, const QuadratureConfig& cfg) {
  if (!(p > 0)) throw std::invalid_argument("pos_part_stabilized: p must be > 0");
  if (!(b > 0)) throw std::invalid_argument("pos_part_stabilized: b must be > 0");
  require_moment(model, r, "pos_part_stabilized");
  require_moment(model, r + p, "pos_part_stabilized");
  OrderDecomposition od = OrderDecomposition::of(p);
  double p_eff = od.is_integer ? std::round(p) : p;
  const int ell = static_cast<int>(od.ell);

  const bool tautological = (m == ell + 1);
  if (!tautological) {
    bool mid_range = (p >= 1.0 - kEpsInt) && m >= 1 && m <= ell;
    bool low_range = !od.is_integer && m <= 0;
    if (!mid_range && !low_range) {
      std::ostringstream os;
      os << "pos_part_stabilized: m = " << m << " not admissible for p = " << p;
      throw std::invalid_argument(os.str());
    }
    if (low_range) require_moment(model, ell - m + r + 1.0, "pos_part_stabilized");
    if (std::abs(p_eff - ell + m) < kEpsInt)
      throw std::invalid_argument("pos_part_stabilized: p - ell + m vanishes");
  }

  cplx atom = 0.0;
  if (od.is_integer)
    atom = cf_frac_deriv(model, p_eff + r, u, cfg) * unit_ipow(-(p_eff + r)) * 0.5;

  const double gamma_p1 = gamma_fn(p_eff + 1.0);
  QuadratureConfig local = with_hint(cfg, kPi / model.oscillation_scale());

  // (a) reduced head integral of the (m-1)-remainder of f^(ell-m+r+1)
  RemainderPair rem_a(model, ell - m + r + 1.0, m - 1, p_eff, ell - (m - 1), u, cfg);
  double head_pow = p_eff - ell + m;
  Integrand fa = [&](double t) -> cplx { return rem_a(t) / std::pow(t, head_pow); };
  double alpha = (!od.is_integer && m >= 0) ? od.lambda : 0.0;
  IntegralResult ia = integrate_finite(fa, 0.0, b, alpha, local);
  cplx part_a = gamma_fn(head_pow) / gamma_p1 * ia.value;
  double err = std::abs(gamma_fn(head_pow) / gamma_p1) * ia.err_estimate;

  // (b) boundary terms at t = b
  cplx part_b = 0.0;
  for (int j = m; j <= ell; ++j) {
    RemainderPair rem_j(model, ell - j + r, j, p_eff, ell - j, u, cfg);
    part_b -= gamma_fn(p_eff - ell + j) / std::pow(b, p_eff - ell + j) * rem_j(b) / gamma_p1;
  }

  // (c) raw-f tail from b. An atom at 0 with r = 0 leaves a constant in
  // f^(r)(u +- t); peel it so the tail integrand is purely oscillatory or
  // decaying, and integrate the constant with the same closed form the
  // power-term sum (d) uses.
  cplx wplus = unit_ipow(-(p_eff + 1.0));
  cplx wminus = unit_ipow(p_eff + 1.0);
  cplx flat = (is_integral_order(r) && std::llround(r) == 0) ? model.atom_mass_at(0.0) : 0.0;
  Integrand fc = [&](double t) -> cplx {
    return ((cf_frac_deriv(model, r, u + t, cfg) - flat) * wplus +
            (cf_frac_deriv(model, r, u - t, cfg) - flat) * wminus) /
           std::pow(t, p_eff + 1.0);
  };
  IntegralResult ic = integrate_tail_limit(fc, b, local);
  err += ic.err_estimate;
  cplx flat_tail = (wplus + wminus) * flat / (gamma_fn(1.0) * (p_eff - 0) * std::pow(b, p_eff - 0));

  // (d) exact integrals of the power terms on (b, inf)
  cplx part_d = 0.0;
  for (int j = 0; j <= ell; ++j) {
    cplx w = wplus + (j % 2 == 0 ? wminus : -wminus);
    part_d -= w * cf_frac_deriv(model, j + r, u, cfg) /
              (gamma_fn(j + 1.0) * (p_eff - j) * std::pow(b, p_eff - j));
  }

  double pref = gamma_p1 / kTwoPi;
  cplx value = atom + pref * unit_ipow(-r) * (part_a + part_b + ic.value + flat_tail + part_d);
  MomentReport rep;
  rep.value = value;
  rep.err_estimate = pref * err;
  rep.converged = ia.converged && ic.converged;
  rep.method = "stabilized";
  rep.snapped_integer_order = od.is_integer && p != p_eff;
  return rep;
}

PartMoments pos_part_frac_closed(const Distribution& model, double p, double u) {
  OrderDecomposition od = OrderDecomposition::of(p);
  if (!(p > 0) || od.is_integer)
    throw std::invalid_argument("pos_part_frac_closed: p must be positive and non-integral");
  if (!model.has_closed_order(p))
    throw capability_error("pos_part_frac_closed: no closed-form fractional order for " +
                           model.describe());
  require_moment(model, p, "pos_part_frac_closed");

  const double lambda = od.lambda;
  const double sgn_ell = (od.ell % 2 == 0) ? 1.0 : -1.0;
  cplx denom = 2.0 * unit_ipow(od.ell + 1.0) * std::sin(kPi * lambda);
  cplx fp_u = cf_frac_deriv(model, p, u);
  cplx fp_mu = std::conj(cf_frac_deriv(model, p, -u));
  cplx il = unit_ipow(lambda), ilm = unit_ipow(-lambda);

  PartMoments out;
  out.pos = (il * fp_u - sgn_ell * ilm * fp_mu) / denom;
  out.neg = (il * fp_mu - sgn_ell * ilm * fp_u) / denom;
  out.abs = (il - sgn_ell * ilm) * (fp_u + fp_mu) / denom;
  out.signed_part = (il + sgn_ell * ilm) * (fp_u - fp_mu) / denom;
  out.err_estimate = 1e-14 * (std::abs(fp_u) + std::abs(fp_mu)) / std::abs(denom);
  out.converged = true;
  return out;
}

MomentReport u0_moments(const Distribution& model, double p, MomentPart part,
                        const QuadratureConfig& cfg) {
  if (!(p > 0)) throw std::invalid_argument("u0_moments: p must be > 0");
  require_moment(model, p, "u0_moments");
  OrderDecomposition od = OrderDecomposition::of(p);

  if (!od.is_integer && model.has_closed_order(p)) {
    PartMoments pm = pos_part_frac_closed(model, p, 0.0);
    MomentReport rep;
    switch (part) {
      case MomentPart::pos: rep.value = pm.pos; break;
      case MomentPart::neg: rep.value = pm.neg; break;
      case MomentPart::abs: rep.value = pm.abs; break;
      case MomentPart::signed_part: rep.value = pm.signed_part; break;
    }
    rep.err_estimate = pm.err_estimate;
    rep.method = "u0_frac_closed";
    return rep;
  }

  const int ell = static_cast<int>(od.ell);
  const double lambda = od.lambda;
  double p_eff = od.is_integer ? std::round(p) : p;

  DerivEvaluator ev = [&model, ell, &cfg](int order, cplx z) -> cplx {
    return cf_frac_deriv(model, ell + order, z.real(), cfg);
  };
  auto D = [&](double t) -> cplx {
    return taylor_remainder(ev, 0, cplx(0.0, 0.0), cplx(t, 0.0));
  };
  auto F = [&](double t) -> cplx { return cf_frac_deriv(model, ell, t, cfg); };
  cplx fl0 = cf_frac_deriv(model, ell, 0.0, cfg);

  QuadratureConfig local = with_hint(cfg, kPi / model.oscillation_scale());
  const double tail_pow = std::pow(local.split_b, -lambda) / lambda;  // int_b t^{-lambda-1}

  cplx wp1 = unit_ipow(-(p_eff + 1.0));  // 1/i^{p+1}
  Integrand head, tail;
  cplx analytic = 0.0;
  double atom = 0.0;
  double pref = gamma_fn(lambda + 1.0) / kPi;
  double ex_p = od.is_integer
                    ? (cf_frac_deriv(model, p_eff, 0.0, cfg) * unit_ipow(-p_eff)).real()
                    : 0.0;
  long long pint = od.is_integer ? std::llround(p_eff) : 0;
  switch (part) {
    case MomentPart::pos:
      if (od.is_integer) atom = 0.5 * ex_p;
      head = [&](double t) -> cplx { return (D(t) * wp1).real() / std::pow(t, lambda + 1.0); };
      tail = [&](double t) -> cplx { return (F(t) * wp1).real() / std::pow(t, lambda + 1.0); };
      analytic = -(fl0 * wp1).real() * tail_pow;
      break;
    case MomentPart::neg:
      if (od.is_integer) atom = 0.5 * ex_p * (pint % 2 == 0 ? 1.0 : -1.0);
      head = [&](double t) -> cplx {
        return (std::conj(D(t)) * wp1).real() / std::pow(t, lambda + 1.0);
      };
      tail = [&](double t) -> cplx {
        return (std::conj(F(t)) * wp1).real() / std::pow(t, lambda + 1.0);
      };
      analytic = -(std::conj(fl0) * wp1).real() * tail_pow;
      break;
    case MomentPart::abs:
      if (od.is_integer && pint % 2 == 0) atom = ex_p;
      pref *= 2.0 * (-std::sin(kPi * p_eff / 2.0));  // Re(i^{p+1})
      head = [&](double t) -> cplx { return D(t).real() / std::pow(t, lambda + 1.0); };
      tail = [&](double t) -> cplx { return F(t).real() / std::pow(t, lambda + 1.0); };
      analytic = -fl0.real() * tail_pow;
      break;
    case MomentPart::signed_part:
      if (od.is_integer && pint % 2 == 1) atom = ex_p;
      pref *= 2.0 * std::cos(kPi * p_eff / 2.0);  // Re(i^p)
      head = [&](double t) -> cplx { return D(t).imag() / std::pow(t, lambda + 1.0); };
      tail = [&](double t) -> cplx { return F(t).imag() / std::pow(t, lambda + 1.0); };
      analytic = -fl0.imag() * tail_pow;
      break;
  }

  IntegralResult ir = integrate_split(head, tail, analytic, od.is_integer ? 0.0 : lambda, local);
  MomentReport rep = report_from(atom + pref * ir.value, ir, std::abs(pref), "u0_integral");
  rep.snapped_integer_order = od.is_integer && p != p_eff;
  return rep;
}

double abs_moment_laue(const Distribution& model, double p) {
  OrderDecomposition od = OrderDecomposition::of(p);
  if (od.is_integer) throw std::invalid_argument("abs_moment_laue: p must be non-integral");
  cplx fp0 = cf_frac_deriv(model, p, 0.0);
  const int ell = static_cast<int>(od.ell);
  if (ell % 2 == 0) {
    double sgn = (ell / 2) % 2 == 0 ? 1.0 : -1.0;
    return (sgn * fp0).real() / std::cos(kPi * od.lambda / 2.0);
  }
  double sgn = ((ell + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return (sgn * fp0).real() / std::sin(kPi * od.lambda / 2.0);
}

MomentReport abs_moment_zolotarev(const Distribution& model, double p,
                                  const QuadratureConfig& cfg) {
  if (!(p > 0)) throw std::invalid_argument("abs_moment_zolotarev: p must be > 0");
  if (is_integral_order(p) && std::llround(p) % 2 == 0)
    throw std::invalid_argument("abs_moment_zolotarev: p must not be an even integer");
  require_moment(model, p, "abs_moment_zolotarev");
  const int m = static_cast<int>(std::floor(p / 2.0 + kEpsInt));
  const double q = p - 2.0 * m;  // in (0, 2)

  DerivEvaluator ev = [&model, m, &cfg](int order, cplx z) -> cplx {
    return cf_frac_deriv(model, 2 * m + order, z.real(), cfg);
  };
  double f2m0 = cf_frac_deriv(model, 2 * m, 0.0, cfg).real();
  Integrand head = [&](double t) -> cplx {
    cplx d = taylor_remainder(ev, 0, cplx(0.0, 0.0), cplx(t, 0.0));
    return d.real() / std::pow(t, q + 1.0);
  };
  Integrand tail = [&](double t) -> cplx {
    return cf_frac_deriv(model, 2 * m, t, cfg).real() / std::pow(t, q + 1.0);
  };
  QuadratureConfig local = with_hint(cfg, kPi / model.oscillation_scale());
  cplx analytic = -f2m0 * std::pow(local.split_b, -q) / q;
  double alpha = q > 1.0 ? q - 1.0 : 0.0;
  IntegralResult ir = integrate_split(head, tail, analytic, alpha, local);

  double pref = 2.0 * (m % 2 == 0 ? -1.0 : 1.0) * gamma_fn(q + 1.0) / kPi *
                std::sin(kPi * q / 2.0);
  return report_from(pref * ir.value, ir, std::abs(pref), "zolotarev");
}

MomentReport abs_moment_vonbahr(const Distribution& model, double p, const QuadratureConfig& cfg) {
  if (!(p > 0)) throw std::invalid_argument("abs_moment_vonbahr: p must be > 0");
  if (is_integral_order(p) && std::llround(p) % 2 == 0)
    throw std::invalid_argument("abs_moment_vonbahr: p must not be an even integer");
  require_moment(model, p, "abs_moment_vonbahr");
  OrderDecomposition od = OrderDecomposition::of(p);
  double p_eff = od.is_integer ? std::round(p) : p;

  DerivEvaluator ev = [&model, &cfg](int order, cplx z) -> cplx {
    return cf_frac_deriv(model, order, z.real(), cfg);
  };
  Integrand head = [&](double t) -> cplx {
    cplx rl = taylor_remainder(ev, static_cast<int>(od.ell), cplx(0.0, 0.0), cplx(t, 0.0));
    return rl.real() / std::pow(t, p_eff + 1.0);
  };
  // Re(R_ell f)(0;t) = Re f(t) - sum_j Re f^(j)(0) t^j/j!; past b the power
  // terms integrate exactly.
  Integrand tail = [&](double t) -> cplx {
    return model.cf(t).real() / std::pow(t, p_eff + 1.0);
  };
  QuadratureConfig local = with_hint(cfg, kPi / model.oscillation_scale());
  cplx analytic = 0.0;
  for (int j = 0; j <= static_cast<int>(od.ell); ++j) {
    double re_fj = cf_frac_deriv(model, j, 0.0, cfg).real();
    analytic -= re_fj / (gamma_fn(j + 1.0) * (p_eff - j) * std::pow(local.split_b, p_eff - j));
  }
  IntegralResult ir = integrate_split(head, tail, analytic, od.is_integer ? 0.0 : od.lambda,
                                      local);

  double pref = -2.0 * gamma_fn(p_eff + 1.0) / kPi * std::sin(kPi * p_eff / 2.0);
  return report_from(pref * ir.value, ir, std::abs(pref), "vonbahr");
}

// --- symmetric differences ----------------------------------------------------

MomentReport symdiff_single(const Distribution& model, int n, double p, double r, double u,
                            const QuadratureConfig& cfg) {
  if (!gn_window_contains(n, p)) {
    std::ostringstream os;
    os << "symdiff_single: p = " << p << " outside the admissible window for n = " << n;
    throw std::invalid_argument(os.str());
  }
  require_moment(model, r, "symdiff_single");
  require_moment(model, r + p, "symdiff_single");

  cplx c = c_plus_gn(n, p).c_plus;
  DerivEvaluator dpsi = [&model, r, &cfg](int order, cplx z) -> cplx {
    return cf_frac_deriv(model, r + order, z.real(), cfg);
  };
  Integrand head = [&](double t) -> cplx {
    return sym_diff_stable(dpsi, n, cplx(t, 0.0), cplx(u, 0.0)) / std::pow(t, p + 1.0);
  };
  // Even-order differences carry the constant centre term
  // (-1)^{n/2} C(n, n/2) f^(r)(u), whose tail integrates in closed form.
  cplx centre = 0.0;
  if (n % 2 == 0) {
    double cb = binomial(n, n / 2);
    centre = ((n / 2) % 2 == 0 ? cb : -cb) * cf_frac_deriv(model, r, u, cfg);
  }
  Integrand tail = [&, centre](double t) -> cplx {
    return (sym_diff_stable(dpsi, n, cplx(t, 0.0), cplx(u, 0.0)) - centre) /
           std::pow(t, p + 1.0);
  };
  double alpha = p + 1.0 - n;
  QuadratureConfig local = with_hint(cfg, kPi / (n * model.oscillation_scale()));
  cplx analytic = (n % 2 == 0) ? centre * std::pow(local.split_b, -p) / p : cplx(0.0, 0.0);
  IntegralResult ir =
      integrate_split(head, tail, analytic, (alpha > 0 && alpha < 1) ? alpha : 0.0, local);
  cplx pref = unit_ipow(-r) / c;
  return report_from(pref * ir.value, ir, std::abs(pref), "symdiff_single");
}

PartMoments symdiff_pair(const Distribution& model, int n_odd, int m_even, double p, double r,
                         double u, const QuadratureConfig& cfg) {
  if (n_odd % 2 != 1 || m_even % 2 != 0 || m_even < 2)
    throw std::invalid_argument("symdiff_pair: need odd n and even m");
  if (!(n_odd > p) || !(m_even > p))
    throw std::invalid_argument("symdiff_pair: orders must exceed p");
  if (!(p > 0)) throw std::invalid_argument("symdiff_pair: p must be > 0");

  MomentReport so = symdiff_single(model, n_odd, p, r, u, cfg);
  MomentReport se = symdiff_single(model, m_even, p, r, u, cfg);
  cplx a = so.value;  // pos - e^{-i pi r} neg
  cplx b = se.value;  // pos + e^{-i pi r} neg

  PartMoments out;
  out.pos = 0.5 * (a + b);
  out.neg = unit_ipow(2.0 * r) * 0.5 * (b - a);
  out.abs = out.pos + out.neg;
  out.signed_part = out.pos - out.neg;
  out.err_estimate = so.err_estimate + se.err_estimate;
  out.converged = so.converged && se.converged;
  return out;
}

HalfEqualProb cdf_halfequal(const Distribution& model, double x, int m,
                            const QuadratureConfig& cfg) {
  if (m < 0) throw std::invalid_argument("cdf_halfequal: m must be >= 0");
  const int n = 2 * m + 1;
  std::function<cplx(cplx)> psi = [&model, x](cplx z) -> cplx {
    double t = z.real();
    return std::exp(cplx(0.0, -t * x)) * model.cf(t);
  };
  Integrand f = [&](double t) -> cplx {
    return sym_diff(psi, n, cplx(t, 0.0), cplx(0.0, 0.0)) / t;
  };
  QuadratureConfig local = with_hint(cfg, kPi / (n * model.oscillation_scale_about(x)));
  IntegralResult ir = integrate_zero_inf(f, 0.0, local);

  double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  double cn = binomial(2 * m, m);
  // (-1)^m/(2 pi i) * integral, real in exact arithmetic
  cplx corr = sgn * ir.value / (cplx(0.0, kTwoPi) * cn);

  HalfEqualProb out;
  out.x = x;
  out.prob = 0.5 - corr.real();
  out.m_used = m;
  out.err_estimate = ir.err_estimate / (kTwoPi * cn) + std::abs(corr.imag());
  out.converged = ir.converged;
  return out;
}

MomentReport truncated_moment(const Distribution& model, double r, double x, int m,
                              TruncationSide side, const QuadratureConfig& cfg) {
  if (m < 0) throw std::invalid_argument("truncated_moment: m must be >= 0");
  require_moment(model, r, "truncated_moment");
  const int n = 2 * m + 1;
  std::function<cplx(cplx)> psi = [&model, r, x, &cfg](cplx z) -> cplx {
    double t = z.real();
    return std::exp(cplx(0.0, -t * x)) * cf_frac_deriv(model, r, t, cfg);
  };
  Integrand f = [&](double t) -> cplx {
    return sym_diff(psi, n, cplx(t, 0.0), cplx(0.0, 0.0)) / t;
  };
  QuadratureConfig local = with_hint(cfg, kPi / (n * model.oscillation_scale_about(x)));
  IntegralResult ir = integrate_zero_inf(f, 0.0, local);

  double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  double cn = binomial(2 * m, m);
  cplx base = cf_frac_deriv(model, r, 0.0, cfg) * unit_ipow(-r) * 0.5;
  cplx corr = sgn * unit_ipow(-(r + 1.0)) * ir.value / (kTwoPi * cn);

  MomentReport rep;
  rep.value = (side == TruncationSide::below) ? base - corr : base + corr;
  rep.err_estimate = ir.err_estimate / (kTwoPi * cn);
  rep.converged = ir.converged;
  rep.method = side == TruncationSide::below ? "truncated_below" : "truncated_above";
  return rep;
}

// --- c.f. of the positive part --------------------------------------------------

MomentReport cf_pos_part(const Distribution& model, double u, const QuadratureConfig& cfg) {
  Integrand f = [&](double t) -> cplx {
    return (model.cf(u + t) - model.cf(u - t) - model.cf(t) + model.cf(-t)) / t;
  };
  QuadratureConfig local = with_hint(cfg, kPi / model.oscillation_scale());
  IntegralResult ir = integrate_zero_inf(f, 0.0, local);
  cplx value = 0.5 * (1.0 + model.cf(u)) + ir.value / cplx(0.0, kTwoPi);
  return report_from(value, ir, 1.0 / kTwoPi, "cf_pos_part");
}

MomentReport pos_part_total_order(const Distribution& model, double s, double u,
                                  const QuadratureConfig& cfg) {
  require_moment(model, s, "pos_part_total_order");
  if (s > kEpsInt) {
    double r = std::ceil(s) - 1.0;
    if (is_integral_order(s)) r = std::round(s) - 1.0;
    double p = s - r;  // in (0, 1]
    MomentReport rep = pos_part_pinelis(model, p, r, u, cfg);
    rep.method = "total_order";
    return rep;
  }
  // s <= 0: pick p in (0,1) keeping r = s - p inside the model's
  // negative-moment range and away from the Gamma poles at negative integers.
  for (double p : {0.5, 0.25, 0.75, 0.125, 0.375, 0.0625}) {
    double r = s - p;
    if (!model.moment_finite(r) || is_integral_order(r)) continue;
    MomentReport rep = pos_part_pinelis(model, p, r, u, cfg);
    rep.method = "total_order";
    return rep;
  }
  throw capability_error("pos_part_total_order: no admissible split for s = " +
                         std::to_string(s) + " on " + model.describe());
}

// --- dispatch --------------------------------------------------------------------

namespace {

MomentReport one_part(const MomentRequest& req, MomentMethod method) {
  const Distribution& model = req.model;
  double p = req.p, r = req.r, u = req.u;
  auto pos_of = [&](const Distribution& mdl, double uu) -> MomentReport {
    switch (method) {
      case MomentMethod::pinelis:
        return pos_part_pinelis(mdl, p, r, uu, req.cfg);
      case MomentMethod::stabilized: {
        int m = req.stabilized_m.value_or(default_stabilized_m(p));
        return pos_part_stabilized(mdl, p, r, uu, req.split_b, m, req.cfg);
      }
      default:
        throw std::logic_error("one_part: not a positive-part method");
    }
  };

  switch (req.part) {
    case MomentPart::pos:
      return pos_of(model, u);
    case MomentPart::neg: {
      // E X_-^{r+p} e^{iuX} = E (-X)_+^{r+p} e^{i(-u)(-X)}
      return pos_of(negated(model), -u);
    }
    case MomentPart::abs:
    case MomentPart::signed_part: {
      MomentReport a = pos_of(model, u);
      MomentReport b = pos_of(negated(model), -u);
      MomentReport rep;
      rep.value = req.part == MomentPart::abs ? a.value + b.value : a.value - b.value;
      rep.err_estimate = a.err_estimate + b.err_estimate;
      rep.converged = a.converged && b.converged;
      rep.method = a.method;
      return rep;
    }
  }
  throw std::logic_error("one_part: unreachable");
}

MomentReport by_method(const MomentRequest& req, MomentMethod method) {
  switch (method) {
    case MomentMethod::pinelis:
    case MomentMethod::stabilized:
      return one_part(req, method);
    case MomentMethod::frac_closed: {
      PartMoments pm = pos_part_frac_closed(req.model, req.p, req.u);
      MomentReport rep;
      switch (req.part) {
        case MomentPart::pos: rep.value = pm.pos; break;
        case MomentPart::neg: rep.value = pm.neg; break;
        case MomentPart::abs: rep.value = pm.abs; break;
        case MomentPart::signed_part: rep.value = pm.signed_part; break;
      }
      rep.err_estimate = pm.err_estimate;
      rep.converged = pm.converged;
      rep.method = "frac_closed";
      return rep;
    }
    case MomentMethod::symdiff: {
      int n = req.symdiff_n.value_or(1);
      if (n % 2 == 0) ++n;
      while (!(n > req.p)) n += 2;
      int m = 2;
      while (!(m > req.p)) m += 2;
      PartMoments pm = symdiff_pair(req.model, n, m, req.p, req.r, req.u, req.cfg);
      MomentReport rep;
      switch (req.part) {
        case MomentPart::pos: rep.value = pm.pos; break;
        case MomentPart::neg: rep.value = pm.neg; break;
        case MomentPart::abs: rep.value = pm.abs; break;
        case MomentPart::signed_part: rep.value = pm.signed_part; break;
      }
      rep.err_estimate = pm.err_estimate;
      rep.converged = pm.converged;
      rep.method = "symdiff";
      return rep;
    }
    case MomentMethod::engine_g: {
      int n = 1;
      while (!(n > req.p)) n += 2;
      int m = 2;
      while (!(m > req.p)) m += 2;
      PartMoments pm = solve_pair(req.model, gspec_gn(n), gspec_gn(m), req.p, req.r, req.u,
                                  req.cfg);
      MomentReport rep;
      switch (req.part) {
        case MomentPart::pos: rep.value = pm.pos; break;
        case MomentPart::neg: rep.value = pm.neg; break;
        case MomentPart::abs: rep.value = pm.abs; break;
        case MomentPart::signed_part: rep.value = pm.signed_part; break;
      }
      rep.err_estimate = pm.err_estimate;
      rep.converged = pm.converged;
      rep.method = "engine_g";
      return rep;
    }
  }
  throw std::logic_error("by_method: unreachable");
}

}  // namespace

MomentReport compute_moment(const MomentRequest& req) {
  MomentMethod method = req.method.value_or(req.p >= 1.0 ? MomentMethod::stabilized
                                                         : MomentMethod::pinelis);
  MomentReport rep = by_method(req, method);
  if (req.cross_check) {
    MomentMethod alt = (method == MomentMethod::stabilized) ? MomentMethod::pinelis
                                                            : MomentMethod::stabilized;
    try {
      MomentReport other = by_method(req, alt);
      rep.cross_residual = std::abs(rep.value - other.value);
    } catch (const std::exception&) {
      // alternate route unavailable; leave the residual unset
    }
  }
  return rep;
}

}  // namespace charmoment
