#include "charmoment/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <limits>
#include <vector>

namespace charmoment {

namespace {

int log_level() {
  static const int level = [] {
    const char* e = std::getenv("CHARMOMENT_LOG");
    if (!e) return 0;
    if (std::strcmp(e, "debug") == 0) return 2;
    if (std::strcmp(e, "info") == 0) return 1;
    return 0;
  }();
  return level;
}

// QUADPACK dqk15 nodes and weights.
const double kXgk[8] = {
    .991455371120812639206854697526329, .949107912342758524526189684047851,
    .864864423359769072789712788640926, .741531185599394439863864773280788,
    .58608723546769113029414483825873,  .405845151377397166906606412076961,
    .207784955007898467600689403773245, 0.};
const double kWgk[8] = {
    .02293532201052922496373200805897,  .063092092629978553290700663189204,
    .104790010322250183839876322541518, .140653259715525918745189590510238,
    .16900472663926790282658342659855,  .190350578064785409913256402421014,
    .204432940075298892414161999234649, .209482141084727828012999174891714};
const double kWg[4] = {.129484966168869693270611432679082, .27970539148927666790146777142378,
                       .381830050505118944950369775488975, .417959183673469387755102040816327};

struct PanelEstimate {
  cplx value = 0.0;
  double err = 0.0;
  double resabs = 0.0;
};

PanelEstimate gk15(const Integrand& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cplx fc = f(c);
  cplx kronrod = kWgk[7] * fc;
  cplx gauss = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  evals += 15;
  for (int i = 0; i < 7; ++i) {
    cplx f1 = f(c - h * kXgk[i]);
    cplx f2 = f(c + h * kXgk[i]);
    kronrod += kWgk[i] * (f1 + f2);
    resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  PanelEstimate out;
  out.value = kronrod * h;
  out.resabs = resabs * std::abs(h);
  double diff = std::abs(kronrod - gauss) * std::abs(h);
  // |K - G| with a roundoff floor, so subdivision stops once a panel is at
  // the noise level of its own samples.
  out.err = std::max(diff, 5e-15 * out.resabs);
  return out;
}

struct Segment {
  double a, b;
  PanelEstimate est;
};

IntegralResult adapt(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  IntegralResult res;
  std::vector<Segment> segs;
  segs.push_back({a, b, gk15(f, a, b, res.evaluations)});
  int panels = 1;
  while (panels < cfg.max_panels) {
    cplx total = 0.0;
    double err = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].est.value;
      err += segs[i].est.err;
      if (segs[i].est.err > segs[worst].est.err) worst = i;
    }
    double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (err <= tol) break;
    Segment s = segs[worst];
    double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) break;  // cannot refine further
    segs[worst] = {s.a, mid, gk15(f, s.a, mid, res.evaluations)};
    segs.push_back({mid, s.b, gk15(f, mid, s.b, res.evaluations)});
    ++panels;
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  cplx total = 0.0;
  double err = 0.0;
  for (const auto& s : segs) {
    total += s.est.value;
    err += s.est.err;
  }
  res.value = total;
  res.err_estimate = err;
  res.converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
  if (log_level() >= 2)
    std::fprintf(stderr, "[quad] finite (%g,%g): %d panels, err %.3e, conv %d\n", a, b, panels,
                 err, res.converged ? 1 : 0);
  return res;
}

// One Levin u-transform anchored at a fixed base panel. The order is capped
// near the double-precision sweet spot; extrapolation quality is tracked by
// the distance between successive extrapolants.
class LevinTable {
 public:
  explicit LevinTable(long long base) : base_(base) {}

  bool full() const { return static_cast<int>(num_.size()) >= kMaxOrder + 1; }
  int entries() const { return static_cast<int>(num_.size()); }

  void add(cplx partial_sum, cplx term) {
    if (full() || frozen_) return;
    // once terms reach the roundoff floor of the sums the transform can only
    // amplify noise; keep whatever plateau was reached
    if (std::abs(term) < 1e-15 * std::abs(partial_sum)) {
      frozen_ = true;
      return;
    }
    cplx omega = (kBeta + static_cast<double>(base_ + entries())) * term;
    if (std::abs(omega) < 1e-280)
      omega = (omega == cplx(0.0, 0.0)) ? cplx(1e-280, 0.0) : omega * (1e-280 / std::abs(omega));
    num_.push_back(partial_sum / omega);
    den_.push_back(cplx(1.0, 0.0) / omega);
    int j = static_cast<int>(num_.size()) - 1;
    for (int k = j - 1; k >= 0; --k) {
      int i = j - k;
      double bk = kBeta + static_cast<double>(base_ + k);
      double c = bk * std::pow(bk + i - 1.0, i - 2) / std::pow(bk + i, i - 1.0);
      num_[k] = num_[k + 1] - c * num_[k];
      den_[k] = den_[k + 1] - c * den_[k];
    }
    prev2_ = prev_;
    prev_ = value_;
    if (std::abs(den_.front()) > 1e-290) value_ = num_.front() / den_.front();
    // keep the bottom of the accuracy-vs-order curve; in doubles the
    // extrapolants first settle and then pick up roundoff again
    if (entries() >= 6) {
      double s = std::abs(value_ - prev_) + std::abs(value_ - prev2_);
      if (s < best_settle_) {
        best_settle_ = s;
        best_value_ = value_;
      }
    }
  }

  cplx value() const { return best_value_; }
  double settle() const { return best_settle_; }

 private:
  static constexpr double kBeta = 1.0;
  static constexpr int kMaxOrder = 16;
  long long base_;
  std::vector<cplx> num_, den_;
  cplx value_ = 0.0, prev_ = 0.0, prev2_ = 0.0;
  cplx best_value_ = 0.0;
  double best_settle_ = std::numeric_limits<double>::infinity();
  bool frozen_ = false;
};

// Wynn epsilon table over the same window; the complement of the Levin
// transform (rational extrapolation handles several oscillation frequencies
// at once, which the single-model u-transform does not).
class WynnTable {
 public:
  bool full() const { return count_ >= kMaxEntries; }
  int entries() const { return count_; }

  void add(cplx partial_sum) {
    if (full() || frozen_) return;
    // a vanishing difference means the sums already coincide to machine
    // precision; updating further would only feed 1/0 junk into the table
    if (!diag_.empty() &&
        std::abs(partial_sum - last_sum_) < 1e-15 * (std::abs(partial_sum) + 1e-300)) {
      frozen_ = true;
      return;
    }
    last_sum_ = partial_sum;
    diag_.push_back(partial_sum);
    cplx prev_col = 0.0;  // epsilon_{-1}
    for (int i = static_cast<int>(diag_.size()) - 2; i >= 0; --i) {
      cplx tmp = diag_[i];
      cplx d = diag_[i + 1] - diag_[i];
      if (std::abs(d) < 1e-300) d = 1e-300;
      diag_[i] = prev_col + 1.0 / d;
      prev_col = tmp;
    }
    ++count_;
    prev2_ = prev_;
    prev_ = value_;
    // highest even epsilon column on the current anti-diagonal
    value_ = ((count_ - 1) % 2 == 0) ? diag_.front() : diag_[1];
    if (count_ >= 7) {
      double s = std::abs(value_ - prev_) + std::abs(value_ - prev2_);
      if (s < best_settle_) {
        best_settle_ = s;
        best_value_ = value_;
      }
    }
  }

  cplx value() const { return best_value_; }
  double settle() const { return best_settle_; }

 private:
  static constexpr int kMaxEntries = 25;
  std::vector<cplx> diag_;
  cplx value_ = 0.0, prev_ = 0.0, prev2_ = 0.0;
  cplx best_value_ = 0.0;
  cplx last_sum_ = 0.0;
  double best_settle_ = std::numeric_limits<double>::infinity();
  bool frozen_ = false;
  int count_ = 0;
};

}  // namespace

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                double endpoint_exponent, const QuadratureConfig& cfg) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite: need a < b");
  if (endpoint_exponent > 0.0 && endpoint_exponent < 1.0) {
    const double alpha = endpoint_exponent;
    const double q = 1.0 / (1.0 - alpha);
    const double smax = std::pow(b - a, 1.0 - alpha);
    Integrand g = [&f, a, alpha, q](double s) -> cplx {
      double t = a + std::pow(s, q);
      return f(t) * (q * std::pow(s, alpha * q));
    };
    return adapt(g, 0.0, smax, cfg);
  }
  return adapt(f, a, b, cfg);
}

IntegralResult integrate_tail_limit(const Integrand& f, double b, const QuadratureConfig& cfg) {
  IntegralResult res;
  const double dt = cfg.tail_period_hint;
  if (!(dt > 0)) throw std::invalid_argument("integrate_tail_limit: node spacing must be > 0");

  // Extrapolation tables anchored every few panels; the anchor variety keeps
  // a usable window even when the first panels are irregular.
  std::vector<LevinTable> levins;
  std::vector<WynnTable> wynns;
  const int kBaseStride = 8;

  cplx plain_sum = 0.0;
  double total_abs = 0.0;
  double rule_err = 0.0;
  int tiny_run = 0;
  int good_streak = 0;

  // The limit of the partial sums is bounded by the total panel mass; an
  // extrapolant outside that is table junk, not a candidate.
  auto best_settle = [&](cplx* val) -> double {
    double best = std::numeric_limits<double>::infinity();
    double bound = 3.0 * total_abs + 10.0 * cfg.abs_tol;
    for (const auto& t : levins)
      if (t.settle() < best && std::abs(t.value()) <= bound) {
        best = t.settle();
        *val = t.value();
      }
    for (const auto& t : wynns)
      if (t.settle() < best && std::abs(t.value()) <= bound) {
        best = t.settle();
        *val = t.value();
      }
    return best;
  };

  // bounded bisection keeps each panel at rule precision; generous depth so
  // a wide first panel with an algebraic ramp still resolves
  std::function<PanelEstimate(double, double, int)> panel = [&](double a, double c,
                                                                int depth) -> PanelEstimate {
    PanelEstimate pe = gk15(f, a, c, res.evaluations);
    if (depth >= 11 || pe.err <= 1e-12 * std::max(1e-300, pe.resabs)) return pe;
    PanelEstimate p1 = panel(a, 0.5 * (a + c), depth + 1);
    PanelEstimate p2 = panel(0.5 * (a + c), c, depth + 1);
    p1.value += p2.value;
    p1.err += p2.err;
    p1.resabs += p2.resabs;
    return p1;
  };

  double t0 = b;
  const int max_terms = std::max(cfg.max_tail_terms, cfg.accel_order + 4);
  for (int k = 0; k < max_terms; ++k) {
    double t1 = t0 + dt;
    PanelEstimate pe = panel(t0, t1, 0);
    rule_err += pe.err;
    plain_sum += pe.value;
    total_abs += std::abs(pe.value);
    res.tail_terms_used = k + 1;

    if (k % kBaseStride == 0) {
      levins.emplace_back(k);
      wynns.emplace_back();
    }
    for (auto& t : levins) t.add(plain_sum, pe.value);
    for (auto& t : wynns) t.add(plain_sum);

    if (std::abs(pe.value) < cfg.abs_tol) {
      if (++tiny_run >= 3) {
        res.value = plain_sum;
        res.err_estimate = rule_err + 3.0 * cfg.abs_tol;
        res.converged = true;
        if (log_level() >= 2)
          std::fprintf(stderr, "[quad] tail from %g: plain sum after %d panels\n", b, k + 1);
        return res;
      }
    } else {
      tiny_run = 0;
    }

    if (k + 1 >= std::max(6, cfg.accel_order)) {
      cplx val = plain_sum;
      double settle = best_settle(&val);
      double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::max(std::abs(plain_sum), std::abs(val)));
      if (settle + rule_err <= tol) {
        if (++good_streak >= 2) {
          res.value = val;
          res.err_estimate = settle + rule_err;
          res.converged = true;
          if (log_level() >= 2)
            std::fprintf(stderr,
                         "[quad] tail from %g: accelerated after %d panels, settle %.3e\n", b,
                         k + 1, settle);
          return res;
        }
      } else {
        good_streak = 0;
      }
    }
    t0 = t1;
  }

  // budget exhausted: report the best extrapolant with converged = false
  cplx val = plain_sum;
  double settle = best_settle(&val);
  res.value = std::isfinite(settle) ? val : plain_sum;
  res.err_estimate = (std::isfinite(settle) ? settle : std::abs(plain_sum)) + rule_err;
  res.converged = false;
  if (log_level() >= 1)
    std::fprintf(stderr, "[quad] tail from %g: no convergence in %d panels (err est %.3e)\n", b,
                 res.tail_terms_used, res.err_estimate);
  return res;
}

IntegralResult integrate_zero_inf(const Integrand& f, double zero_exponent,
                                  const QuadratureConfig& cfg) {
  return integrate_split(f, f, 0.0, zero_exponent, cfg);
}

IntegralResult integrate_split(const Integrand& head, const Integrand& reduced_tail,
                               cplx analytic_tail, double zero_exponent,
                               const QuadratureConfig& cfg) {
  IntegralResult h = integrate_finite(head, 0.0, cfg.split_b, zero_exponent, cfg);
  IntegralResult t = integrate_tail_limit(reduced_tail, cfg.split_b, cfg);
  IntegralResult res;
  res.value = h.value + t.value + analytic_tail;
  res.err_estimate = h.err_estimate + t.err_estimate;
  res.converged = h.converged && t.converged;
  res.evaluations = h.evaluations + t.evaluations;
  res.tail_terms_used = t.tail_terms_used;
  return res;
}

}  // namespace charmoment
