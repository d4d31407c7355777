#include "charmoment/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "charmoment/constants.hpp"
#include "charmoment/distributions.hpp"
#include "charmoment/errors.hpp"
#include "charmoment/moments.hpp"
#include "charmoment/risk.hpp"

namespace charmoment {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Record {
  std::string command, dist, params, method;
  cplx value;
  double err = 0;
  bool converged = true;
};

void emit_records(std::ostream& out, const std::vector<Record>& records) {
  out << "command\tdist\tparams\tvalue_re\tvalue_im\terr_estimate\tmethod\tconverged\n";
  for (const auto& r : records) {
    out << r.command << '\t' << r.dist << '\t' << r.params << '\t' << num(r.value.real()) << '\t'
        << num(r.value.imag()) << '\t' << num(r.err) << '\t' << r.method << '\t'
        << (r.converged ? "true" : "false") << '\n';
  }
}

void emit_text(std::ostream& out, const std::vector<Record>& records) {
  for (const auto& r : records) {
    out << r.command << " " << r.dist;
    if (!r.params.empty()) out << " [" << r.params << "]";
    out << "\n  value = " << num(r.value.real());
    if (r.value.imag() != 0.0) out << (r.value.imag() < 0 ? " - " : " + ")
                                   << num(std::abs(r.value.imag())) << "i";
    out << "\n  err_estimate <= " << num(r.err) << "  method = " << r.method
        << (r.converged ? "" : "  [NOT CONVERGED]") << "\n";
  }
}

MomentPart parse_part(const std::string& s) {
  if (s == "pos") return MomentPart::pos;
  if (s == "neg") return MomentPart::neg;
  if (s == "abs") return MomentPart::abs;
  if (s == "signed") return MomentPart::signed_part;
  throw std::invalid_argument("--part: expected pos|neg|abs|signed, got '" + s + "'");
}

std::optional<MomentMethod> parse_method(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  if (s == "pinelis") return MomentMethod::pinelis;
  if (s == "stabilized") return MomentMethod::stabilized;
  if (s == "symdiff") return MomentMethod::symdiff;
  if (s == "frac_closed") return MomentMethod::frac_closed;
  if (s == "engine") return MomentMethod::engine_g;
  throw std::invalid_argument(
      "--method: expected auto|pinelis|stabilized|symdiff|frac_closed|engine, got '" + s + "'");
}

struct VerifyCase {
  std::string name;
  double got = 0, want = 0, tol = 0;
  bool pass() const { return std::abs(got - want) <= tol; }
};

int run_verify(const QuadratureConfig& cfg, std::ostream& out) {
  std::vector<VerifyCase> cases;

  {
    QuadratureConfig c = cfg;
    c.tail_period_hint = kPi;
    Integrand f1 = [](double t) -> cplx { return std::sin(t) / t; };
    cases.push_back({"int sin(t)/t = pi/2", integrate_zero_inf(f1, 0.0, c).value.real(),
                     kPi / 2.0, 1e-8});
    Integrand f3 = [](double t) -> cplx { return std::pow(std::sin(t), 3) / t; };
    cases.push_back({"int sin^3(t)/t = pi/4", integrate_zero_inf(f3, 0.0, c).value.real(),
                     kPi / 4.0, 1e-8});
  }

  for (auto [n, p] : std::vector<std::pair<int, double>>{{1, 0.5}, {2, 0.7}, {3, 1.6}, {4, 2.3}}) {
    GnConstant gc = c_plus_gn(n, p);
    cplx direct = c_direct_quadrature(n, p, cfg);
    std::ostringstream name;
    name << "c_p+(g_" << n << ") closed vs quadrature, p=" << p;
    cases.push_back({name.str(), std::abs(gc.c_plus - direct), 0.0, 1e-6 * std::abs(direct)});
  }

  Distribution ex = exponential(1.0);
  for (double p : {0.5, 1.5, 2.5}) {
    double want = gamma_fn(p + 1.0);
    cases.push_back({"exp pinelis p=" + num(p),
                     pos_part_pinelis(ex, p, 0.0, 0.0, cfg).value.real(), want, 1e-5 * want});
    cases.push_back({"exp stabilized p=" + num(p),
                     pos_part_stabilized(ex, p, 0.0, 0.0, 1.0, default_stabilized_m(p), cfg)
                         .value.real(),
                     want, 1e-5 * want});
    cases.push_back({"exp frac_closed p=" + num(p),
                     pos_part_frac_closed(ex, p, 0.0).pos.real(), want, 1e-5 * want});
  }

  Distribution nrm = normal(0.0, 1.0);
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    double want = 0.5 * std::erfc(-x / std::sqrt(2.0));
    cases.push_back({"normal cdf x=" + num(x), cdf_halfequal(nrm, x, 0, cfg).prob, want, 1e-6});
  }

  int failed = 0;
  for (const auto& c : cases) {
    bool ok = c.pass();
    if (!ok) ++failed;
    out << (ok ? "PASS  " : "FAIL  ") << c.name << "  (got " << num(c.got) << ", want "
        << num(c.want) << ", tol " << num(c.tol) << ")\n";
  }
  out << (failed == 0 ? "all checks passed" : "SOME CHECKS FAILED") << " (" << cases.size() - failed
      << "/" << cases.size() << ")\n";
  return failed == 0 ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"characteristic-function calculus: positive-part, absolute, signed and truncated "
               "moments, the regularized CDF, the c.f. of X+, and coherent risk bounds"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  QuadratureConfig cfg;
  std::string output_mode = "text";
  app.add_option("--rel-tol", cfg.rel_tol, "relative quadrature tolerance");
  app.add_option("--abs-tol", cfg.abs_tol, "absolute quadrature tolerance");
  app.add_option("--split-b", cfg.split_b, "head/tail split point for (0,inf) integrals");
  app.add_option("--tail-terms", cfg.max_tail_terms, "tail panel budget");
  app.add_option("--output", output_mode, "text|records");

  std::string dist_spec, part_str = "pos", method_str = "auto", side_str = "below";
  double s_val = 0, p_val = 0, r_val = 0, u_val = 0, x_val = 0, alpha = 1, q_val = 0.1, b_val = 1;
  double cn_p = 0.5;
  int m_val = 0, n_val = 0, grid = 64, cn_n = 1;
  bool cross = false;
  std::optional<double> bracket_lo, bracket_hi;

  auto* cmd_moment = app.add_subcommand("moment", "E X_+^s e^{iuX} and part variants");
  cmd_moment->add_option("--dist", dist_spec, "distribution spec")->required();
  auto* opt_s = cmd_moment->add_option("--s", s_val, "total moment order (p = s, r = 0)");
  auto* opt_p = cmd_moment->add_option("--p", p_val, "engine order p > 0");
  cmd_moment->add_option("--r", r_val, "extra derivative order r");
  cmd_moment->add_option("--u", u_val, "frequency u");
  cmd_moment->add_option("--part", part_str, "pos|neg|abs|signed");
  cmd_moment->add_option("--method", method_str, "auto|pinelis|stabilized|symdiff|frac_closed|engine");
  cmd_moment->add_option("--b", b_val, "stabilized split point b");
  auto* opt_m = cmd_moment->add_option("--m", m_val, "stabilized reduction index m");
  auto* opt_n = cmd_moment->add_option("--n", n_val, "symdiff odd order n");
  cmd_moment->add_flag("--cross", cross, "cross-check against the alternate method");

  auto* cmd_cfpos = app.add_subcommand("cf-pos", "characteristic function of X_+");
  cmd_cfpos->add_option("--dist", dist_spec, "distribution spec")->required();
  cmd_cfpos->add_option("--u", u_val, "argument u")->required();

  auto* cmd_cdf = app.add_subcommand("cdf", "P(X < x) + P(X = x)/2 by inversion");
  cmd_cdf->add_option("--dist", dist_spec, "distribution spec")->required();
  cmd_cdf->add_option("--x", x_val, "evaluation point")->required();
  cmd_cdf->add_option("--m", m_val, "difference order index (n = 2m+1)");

  auto* cmd_trunc = app.add_subcommand("truncated", "E conj(X^r) 1{X below/above x}");
  cmd_trunc->add_option("--dist", dist_spec, "distribution spec")->required();
  cmd_trunc->add_option("--r", r_val, "moment order r");
  cmd_trunc->add_option("--x", x_val, "truncation point")->required();
  cmd_trunc->add_option("--m", m_val, "difference order index (n = 2m+1)");
  cmd_trunc->add_option("--side", side_str, "below|above");

  auto* cmd_risk = app.add_subcommand("risk", "quantile bound Q_alpha or tail bound P_alpha");
  cmd_risk->add_option("--dist", dist_spec, "distribution spec")->required();
  cmd_risk->add_option("--alpha", alpha, "risk sensitivity alpha > 0")->required();
  auto* opt_q = cmd_risk->add_option("--q", q_val, "quantile level for Q_alpha");
  auto* opt_x = cmd_risk->add_option("--x", x_val, "threshold for P_alpha");
  cmd_risk->add_option("--bracket-lo", [&bracket_lo](CLI::results_t v) {
    bracket_lo = std::stod(v[0]);
    return true;
  }, "search bracket lower edge");
  cmd_risk->add_option("--bracket-hi", [&bracket_hi](CLI::results_t v) {
    bracket_hi = std::stod(v[0]);
    return true;
  }, "search bracket upper edge");
  cmd_risk->add_option("--grid", grid, "coarse grid size");

  auto* cmd_const = app.add_subcommand("constants", "closed-form c_p+(g_n) vs quadrature");
  cmd_const->add_option("--n", cn_n, "difference order n >= 1")->required();
  cmd_const->add_option("--p", cn_p, "order p in the admissible window")->required();

  auto* cmd_verify = app.add_subcommand("verify", "run the built-in oracle suite");

  std::vector<const char*> argv;
  std::string prog = "charmoment";
  argv.push_back(prog.c_str());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::vector<Record> records;
  int status = 0;

  try {
    if (cmd_verify->parsed()) {
      return run_verify(cfg, out);
    }

    if (cmd_moment->parsed()) {
      if (opt_s->count() && opt_p->count())
        throw std::invalid_argument("give either --s or --p, not both");
      Distribution model = parse_distribution(dist_spec);
      Record rec;
      rec.command = "moment";
      rec.dist = model.describe();
      MomentReport rep;
      MomentPart part = parse_part(part_str);
      if (opt_s->count() && s_val <= kEpsInt) {
        if (part != MomentPart::pos)
          throw std::invalid_argument("--part with --s <= 0 is not supported");
        rep = pos_part_total_order(model, s_val, u_val, cfg);
        rec.params = "s=" + num(s_val) + ",u=" + num(u_val) + ",part=pos";
      } else {
        MomentRequest req;
        req.model = model;
        req.p = opt_s->count() ? s_val : p_val;
        req.r = opt_s->count() ? 0.0 : r_val;
        req.u = u_val;
        req.part = part;
        req.method = parse_method(method_str);
        req.split_b = b_val;
        if (opt_m->count()) req.stabilized_m = m_val;
        if (opt_n->count()) req.symdiff_n = n_val;
        req.cross_check = cross;
        req.cfg = cfg;
        rep = compute_moment(req);
        rec.params = "p=" + num(req.p) + ",r=" + num(req.r) + ",u=" + num(u_val) +
                     ",part=" + part_str;
        if (rep.cross_residual) rec.params += ",cross_residual=" + num(*rep.cross_residual);
        if (rep.snapped_integer_order) rec.params += ",snapped_integer_order=true";
      }
      rec.value = rep.value;
      rec.err = rep.err_estimate;
      rec.method = rep.method;
      rec.converged = rep.converged;
      if (!rep.converged) status = 3;
      records.push_back(rec);
    } else if (cmd_cfpos->parsed()) {
      Distribution model = parse_distribution(dist_spec);
      MomentReport rep = cf_pos_part(model, u_val, cfg);
      records.push_back({"cf-pos", model.describe(), "u=" + num(u_val), rep.method, rep.value,
                         rep.err_estimate, rep.converged});
      if (!rep.converged) status = 3;
    } else if (cmd_cdf->parsed()) {
      Distribution model = parse_distribution(dist_spec);
      HalfEqualProb hp = cdf_halfequal(model, x_val, m_val, cfg);
      records.push_back({"cdf", model.describe(), "x=" + num(x_val) + ",m=" + num(m_val),
                         "halfequal", cplx(hp.prob, 0.0), hp.err_estimate, hp.converged});
      if (!hp.converged) status = 3;
    } else if (cmd_trunc->parsed()) {
      Distribution model = parse_distribution(dist_spec);
      TruncationSide side;
      if (side_str == "below") side = TruncationSide::below;
      else if (side_str == "above") side = TruncationSide::above;
      else throw std::invalid_argument("--side must be below or above");
      MomentReport rep = truncated_moment(model, r_val, x_val, m_val, side, cfg);
      records.push_back({"truncated", model.describe(),
                         "r=" + num(r_val) + ",x=" + num(x_val) + ",m=" + num(m_val) + ",side=" +
                             side_str,
                         rep.method, rep.value, rep.err_estimate, rep.converged});
      if (!rep.converged) status = 3;
    } else if (cmd_risk->parsed()) {
      if (opt_q->count() == opt_x->count())
        throw std::invalid_argument("risk needs exactly one of --q or --x");
      Distribution model = parse_distribution(dist_spec);
      RiskOptions opt;
      opt.bracket_lo = bracket_lo;
      opt.bracket_hi = bracket_hi;
      opt.grid_points = grid;
      opt.cfg = cfg;
      RiskResult rr;
      std::string params;
      if (opt_q->count()) {
        rr = q_alpha(model, alpha, q_val, opt);
        params = "alpha=" + num(alpha) + ",q=" + num(q_val);
      } else {
        rr = p_alpha(model, alpha, x_val, opt);
        params = "alpha=" + num(alpha) + ",x=" + num(x_val);
      }
      params += ",minimizer=" + num(rr.minimizer);
      if (rr.at_bracket_edge) params += ",at_bracket_edge=true";
      if (!rr.convexity_guaranteed) params += ",convexity_guaranteed=false";
      records.push_back({"risk", model.describe(), params, opt_q->count() ? "q_alpha" : "p_alpha",
                         cplx(rr.value, 0.0), 0.0, true});
    } else if (cmd_const->parsed()) {
      GnConstant gc = c_plus_gn(cn_n, cn_p);
      cplx direct = c_direct_quadrature(cn_n, cn_p, cfg);
      std::string params = "n=" + num(cn_n) + ",p=" + num(cn_p) +
                           ",quad_re=" + num(direct.real()) + ",quad_im=" + num(direct.imag()) +
                           ",abs_diff=" + num(std::abs(gc.c_plus - direct));
      const char* branch = gc.branch == GnBranch::generic ? "generic"
                           : gc.branch == GnBranch::lhospital ? "lhospital"
                                                              : "near_integer_blend";
      records.push_back({"constants", "-", params, branch, gc.c_plus,
                         std::abs(gc.c_plus - direct), true});
    }
  } catch (const numeric_error& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const capability_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  }

  if (output_mode == "records")
    emit_records(out, records);
  else
    emit_text(out, records);
  return status;
}

}  // namespace charmoment
