#include "decaycert/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace decaycert {

namespace {

void check_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw error("kernels.NonFinite", where);
}

}  // namespace

Kernel2 Kernel2::exponential_scaled(double m0, double lambda0) {
  if (!(m0 > 0.0)) throw error("kernels.BadParameter", "m0 must be > 0");
  if (!(lambda0 > 0.0)) throw error("kernels.BadParameter", "lambda0 must be > 0");
  return Kernel2(ExponentialScaled{m0, lambda0});
}

Kernel2 Kernel2::coefficient_integral(ScalarFn a) {
  return Kernel2(CoefficientIntegral{std::move(a)});
}

Kernel2 Kernel2::scaled_by(Kernel2 base, ScalarFn b) {
  if (!base.decay_type())
    throw error("kernels.BadParameter", "cannot gain-scale a future kernel");
  return Kernel2(ScaledBy{std::make_shared<const Kernel2>(std::move(base)),
                          std::move(b)});
}

Kernel2 Kernel2::power_singular(double scale, double alpha, double beta) {
  if (!(scale >= 0.0)) throw error("kernels.BadParameter", "scale must be >= 0");
  if (alpha < 0.0 || alpha >= 1.0)
    throw error("kernels.BadParameter", "alpha must lie in [0,1)");
  return Kernel2(PowerSingular{scale, alpha, beta});
}

Kernel2 Kernel2::future_exponential(double scale, double beta) {
  if (!(scale >= 0.0)) throw error("kernels.BadParameter", "scale must be >= 0");
  return Kernel2(FutureExponential{scale, beta});
}

Kernel2 Kernel2::tabulated(double t_lo, double t_hi, double s_lo, double s_hi,
                           int nt, int ns, std::vector<double> values) {
  if (nt < 2 || ns < 2 || !(t_hi > t_lo) || !(s_hi > s_lo))
    throw error("kernels.BadParameter", "degenerate table");
  if (static_cast<int>(values.size()) != nt * ns)
    throw error("kernels.BadParameter", "table size mismatch");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw error("kernels.BadParameter", "table value not finite nonnegative");
  return Kernel2(Tabulated{t_lo, t_hi, s_lo, s_hi, nt, ns, std::move(values)});
}

bool Kernel2::decay_type() const {
  return !std::holds_alternative<FutureExponential>(form_);
}

double Kernel2::operator()(double t, double s) const {
  struct Eval {
    double t, s;
    double operator()(const ExponentialScaled& k) const {
      return k.m0 * std::exp(-k.lambda0 * (t - s));
    }
    double operator()(const CoefficientIntegral& k) const {
      QuadratureConfig cfg;
      return std::exp(-k.a.integral(s, t, cfg));
    }
    double operator()(const ScaledBy& k) const {
      const double gain = k.b(s);
      if (gain < 0.0)
        throw error("kernels.NegativeValue",
                    "gain function must be nonnegative on the kernel domain");
      return (*k.base)(t, s) * gain;
    }
    double operator()(const PowerSingular& k) const {
      if (!(t > s))
        throw error("kernels.BadDomain", "power-singular kernel needs t > s");
      return k.scale * std::pow(t - s, -k.alpha) * std::exp(-k.beta * (t - s));
    }
    double operator()(const FutureExponential& k) const {
      if (!(s >= t))
        throw error("kernels.BadDomain", "future kernel needs s >= t");
      return k.scale * std::exp(k.beta * (t - s));
    }
    double operator()(const Tabulated& k) const {
      const double eps = 1e-12 * (1.0 + std::abs(t) + std::abs(s));
      if (t < k.t_lo - eps || t > k.t_hi + eps || s < k.s_lo - eps ||
          s > k.s_hi + eps)
        throw error("kernels.TableRangeExceeded",
                    "tabulated kernel queried outside its grid");
      const double ft = std::clamp((t - k.t_lo) / (k.t_hi - k.t_lo), 0.0, 1.0) *
                        (k.nt - 1);
      const double fs = std::clamp((s - k.s_lo) / (k.s_hi - k.s_lo), 0.0, 1.0) *
                        (k.ns - 1);
      const int it = std::min(static_cast<int>(ft), k.nt - 2);
      const int is = std::min(static_cast<int>(fs), k.ns - 2);
      const double wt = ft - it, ws = fs - is;
      auto at = [&](int i, int j) { return k.values[i * k.ns + j]; };
      return (1 - wt) * ((1 - ws) * at(it, is) + ws * at(it, is + 1)) +
             wt * ((1 - ws) * at(it + 1, is) + ws * at(it + 1, is + 1));
    }
  };
  const double v = std::visit(Eval{t, s}, form_);
  check_finite(v, "kernel evaluation");
  return v;
}

Kernel2 Kernel2::translated(double tau) const {
  struct Shift {
    double tau;
    Kernel2 operator()(const ExponentialScaled& k) const {
      return Kernel2::exponential_scaled(k.m0, k.lambda0);
    }
    Kernel2 operator()(const CoefficientIntegral& k) const {
      return Kernel2::coefficient_integral(k.a.shifted(tau));
    }
    Kernel2 operator()(const ScaledBy& k) const {
      return Kernel2::scaled_by(k.base->translated(tau), k.b.shifted(tau));
    }
    Kernel2 operator()(const PowerSingular& k) const {
      return Kernel2::power_singular(k.scale, k.alpha, k.beta);
    }
    Kernel2 operator()(const FutureExponential& k) const {
      return Kernel2::future_exponential(k.scale, k.beta);
    }
    Kernel2 operator()(const Tabulated& k) const {
      return Kernel2::tabulated(k.t_lo - tau, k.t_hi - tau, k.s_lo - tau,
                                k.s_hi - tau, k.nt, k.ns, k.values);
    }
  };
  return std::visit(Shift{tau}, form_);
}

std::string Kernel2::describe() const {
  struct Desc {
    std::string operator()(const ExponentialScaled& k) const {
      std::ostringstream os;
      os << "exponential_scaled(m0=" << k.m0 << ", lambda0=" << k.lambda0 << ")";
      return os.str();
    }
    std::string operator()(const CoefficientIntegral& k) const {
      return "coefficient_integral(a=" + k.a.label() + ")";
    }
    std::string operator()(const ScaledBy& k) const {
      return "scaled_by(" + k.base->describe() + ", b=" + k.b.label() + ")";
    }
    std::string operator()(const PowerSingular& k) const {
      std::ostringstream os;
      os << "power_singular(scale=" << k.scale << ", alpha=" << k.alpha
         << ", beta=" << k.beta << ")";
      return os.str();
    }
    std::string operator()(const FutureExponential& k) const {
      std::ostringstream os;
      os << "future_exponential(scale=" << k.scale << ", beta=" << k.beta << ")";
      return os.str();
    }
    std::string operator()(const Tabulated& k) const {
      std::ostringstream os;
      os << "tabulated(" << k.nt << "x" << k.ns << ")";
      return os.str();
    }
  };
  return std::visit(Desc{}, form_);
}

// ---------------------------------------------------------------------------
// structural helpers
// ---------------------------------------------------------------------------

namespace {

// K(t,s) = m0 * exp(-rate*(t-s)) * gain(s) when this pattern matches
struct ExpFamily {
  double m0 = 1.0;
  double rate = 0.0;
  ScalarFn gain = ScalarFn::constant(1.0);
  bool constant_gain = true;
};

std::optional<ExpFamily> as_exp_family(const Kernel2& k) {
  if (const auto* e = std::get_if<Kernel2::ExponentialScaled>(&k.form())) {
    ExpFamily fam;
    fam.m0 = e->m0;
    fam.rate = e->lambda0;
    return fam;
  }
  if (const auto* c = std::get_if<Kernel2::CoefficientIntegral>(&k.form())) {
    if (c->a.is_constant() && c->a.constant_value() > 0.0) {
      ExpFamily fam;
      fam.m0 = 1.0;
      fam.rate = c->a.constant_value();
      return fam;
    }
    return std::nullopt;
  }
  if (const auto* sb = std::get_if<Kernel2::ScaledBy>(&k.form())) {
    auto base = as_exp_family(*sb->base);
    if (!base || !base->constant_gain) return std::nullopt;
    base->gain = sb->b;
    base->constant_gain = sb->b.is_constant();
    return base;
  }
  return std::nullopt;
}

// antiderivative of the coefficient at grid nodes (exact when available,
// cell-by-cell Simpson otherwise)
std::vector<double> coefficient_primitive(const ScalarFn& a,
                                          const std::vector<double>& nodes,
                                          const QuadratureConfig& cfg) {
  std::vector<double> prim(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i)
    prim[i] = prim[i - 1] + a.integral(nodes[i - 1], nodes[i], cfg);
  return prim;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// int_0^t K1(t, s) ds for a fixed t
double past_integral(const Kernel2& k, double t, const QuadratureConfig& cfg) {
  if (t <= 0.0) return 0.0;
  if (const auto* e = std::get_if<Kernel2::ExponentialScaled>(&k.form()))
    return e->m0 / e->lambda0 * (1.0 - std::exp(-e->lambda0 * t));
  if (const auto* p = std::get_if<Kernel2::PowerSingular>(&k.form()))
    return integrate_power_singular(p->scale, p->alpha, p->beta, t, cfg);
  if (const auto* sb = std::get_if<Kernel2::ScaledBy>(&k.form())) {
    if (const auto* p = std::get_if<Kernel2::PowerSingular>(&sb->base->form())) {
      // substitute w = (t-s)^(1-alpha); the gain rides along smoothly
      const double pw = 1.0 - p->alpha;
      const ScalarFn gain = sb->b;
      const double beta = p->beta;
      auto g = [&](double w) {
        const double u = std::pow(w, 1.0 / pw);
        return std::exp(-beta * u) * gain(t - u);
      };
      return p->scale / pw *
             integrate_trapezoid(g, 0.0, std::pow(t, pw), cfg);
    }
  }
  const auto f = [&](double s) { return k(t, s); };
  return integrate_simpson(f, 0.0, t, cfg);
}

// int_t^infty K2(t, s) ds; analytic for the future exponential
double future_integral(const Kernel2& k, double t, const QuadratureConfig& cfg) {
  if (const auto* fe = std::get_if<Kernel2::FutureExponential>(&k.form())) {
    if (fe->scale == 0.0) return 0.0;
    if (!(fe->beta > 0.0))
      throw error("kernels.DivergentTail",
                  "future exponential kernel with nonpositive rate");
    return fe->scale / fe->beta;
  }
  if (const auto* tb = std::get_if<Kernel2::Tabulated>(&k.form())) {
    const double lo = std::max(t, tb->s_lo), hi = tb->s_hi;
    if (!(hi > lo)) return 0.0;
    const auto f = [&](double s) { return k(t, s); };
    return integrate_simpson(f, lo, hi, cfg);
  }
  throw error("kernels.DivergentTail",
              "no integrable tail known for " + k.describe());
}

}  // namespace

// ---------------------------------------------------------------------------
// theta_sup
// ---------------------------------------------------------------------------

SupEstimate theta_sup(const Kernel2& E, double horizon,
                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (!E.decay_type())
    throw error("kernels.NotDecayType", "theta_sup needs a decay-type kernel");
  if (!(horizon > 0.0))
    throw error("kernels.BadParameter", "horizon must be positive");

  if (const auto* e = std::get_if<Kernel2::ExponentialScaled>(&E.form()))
    return SupEstimate{e->m0, e->m0, 0.0};  // maximum at t = s

  if (const auto* c = std::get_if<Kernel2::CoefficientIntegral>(&E.form())) {
    // sup exp(-(A(t)-A(s))) = exp(-min_{t>=s}(A(t)-A(s)))
    double prev = 0.0, value = 0.0, pad = 0.0;
    int n = 257;
    for (int level = 0; level <= cfg.max_refinements; ++level) {
      const auto nodes = linspace(0.0, horizon, n);
      const auto prim = coefficient_primitive(c->a, nodes, cfg);
      double run_max = prim[0];
      double min_diff = 0.0;
      int argmin = 0;
      for (int i = 0; i < n; ++i) {
        run_max = std::max(run_max, prim[i]);
        const double diff = prim[i] - run_max;
        if (diff < min_diff) {
          min_diff = diff;
          argmin = i;
        }
      }
      if (argmin == n - 1 && prim[n - 1] < prim[n - 2])
        throw error("kernels.HorizonTooSmall",
                    "coefficient kernel still increasing at the horizon");
      value = std::exp(-min_diff);
      check_finite(value, "theta_sup");
      if (level > 0) {
        pad = std::abs(value - prev);
        if (pad <= std::max(cfg.abs_tol, cfg.rel_tol * value)) break;
      }
      prev = value;
      n = 2 * (n - 1) + 1;
    }
    return SupEstimate{value + pad, value, pad};
  }

  // generic triangular grid sweep
  double prev = 0.0, value = 0.0, pad = 0.0;
  int n = 65;
  for (int level = 0; level <= cfg.max_refinements; ++level) {
    const auto nodes = linspace(0.0, horizon, n);
    double best = 0.0;
    int arg_t = 0;
    for (int j = 0; j < n; ++j) {
      for (int i = j; i < n; ++i) {
        const double v = E(nodes[i], nodes[j]);
        if (v > best) {
          best = v;
          arg_t = i;
        }
      }
    }
    if (arg_t == n - 1) {
      const double edge = E(nodes[n - 1], nodes[0]);
      const double inner = E(nodes[n - 2], nodes[0]);
      if (edge > inner)
        throw error("kernels.HorizonTooSmall",
                    "kernel supremum still increasing at the horizon");
    }
    value = best;
    if (level > 0) {
      pad = std::abs(value - prev);
      if (pad <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)) &&
          level >= 2)
        break;
    }
    prev = value;
    n = 2 * (n - 1) + 1;
    if (n > 4097) break;  // quadratic sweep budget
  }
  return SupEstimate{value + pad, value, pad};
}

// ---------------------------------------------------------------------------
// kappa_sup
// ---------------------------------------------------------------------------

SupEstimate kappa_sup(const std::optional<Kernel2>& k1,
                      const std::optional<Kernel2>& k2, double horizon,
                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(horizon > 0.0))
    throw error("kernels.BadParameter", "horizon must be positive");
  if (k1 && !k1->decay_type())
    throw error("kernels.NotDecayType", "K1 must be a past (decay) kernel");

  // the future part first: constant in t for the future exponential
  double future_const = 0.0;
  bool future_is_const = true;
  if (k2) {
    if (std::holds_alternative<Kernel2::FutureExponential>(k2->form()))
      future_const = future_integral(*k2, 0.0, cfg);
    else
      future_is_const = false;
  }

  if (!k1) {
    if (!k2) return SupEstimate{0.0, 0.0, 0.0};
    if (future_is_const)
      return SupEstimate{future_const, future_const, 0.0};
  }

  // exponential family with constant gain: the supremum is the exact
  // t -> infinity limit  b * m0 / rate
  if (k1 && future_is_const) {
    if (auto fam = as_exp_family(*k1); fam && fam->constant_gain) {
      const double gain = fam->gain.constant_value();
      const double limit = gain * fam->m0 / fam->rate + future_const;
      check_finite(limit, "kappa_sup");
      return SupEstimate{limit, limit, 0.0};
    }
    // power-singular past kernel: increasing in t, bounded tail
    if (const auto* p = std::get_if<Kernel2::PowerSingular>(&k1->form())) {
      if (!(p->beta > 0.0))
        throw error("kernels.DivergentTail",
                    "power-singular kernel with nonpositive rate");
      const double span = cfg.tail_span(p->beta);
      const double at_span = past_integral(*k1, span, cfg);
      const double tail =
          p->scale * std::pow(span, -p->alpha) * std::exp(-p->beta * span) /
          p->beta;
      const double raw = at_span + future_const;
      return SupEstimate{raw + tail, raw, tail};
    }
  }

  // generic sweep over a refining t-grid, reporting both the refinement
  // delta and the sensitivity to halving the horizon
  double prev = 0.0, value = 0.0, refine_pad = 0.0, half_value = 0.0;
  int n = 129;
  for (int level = 0; level <= cfg.max_refinements; ++level) {
    const auto nodes = linspace(0.0, horizon, n);
    double best = 0.0, best_half = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = k1 ? past_integral(*k1, nodes[i], cfg) : 0.0;
      v += k2 ? (future_is_const ? future_const
                                 : future_integral(*k2, nodes[i], cfg))
              : 0.0;
      check_finite(v, "kappa_sup");
      best = std::max(best, v);
      if (nodes[i] <= 0.5 * horizon) best_half = std::max(best_half, v);
    }
    value = best;
    half_value = best_half;
    if (level > 0) {
      refine_pad = std::abs(value - prev);
      if (refine_pad <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)) &&
          level >= 1)
        break;
    }
    prev = value;
    n = 2 * (n - 1) + 1;
    if (n > 8193) break;
  }
  const double horizon_pad = std::max(0.0, value - half_value);
  const double pad = refine_pad + horizon_pad;
  return SupEstimate{value + pad, value, pad};
}

// ---------------------------------------------------------------------------
// decay majorant
// ---------------------------------------------------------------------------

double DecayMajorant::eval(double t) const {
  if (t <= 0.0) return values.front();
  if (t >= t_max) return tail_bound;
  const auto idx = static_cast<std::size_t>(t / dt);
  return values[std::min(idx, values.size() - 1)];
}

DecayMajorant decay_majorant(const Kernel2& E, double t_max, int n_s_samples,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  if (!E.decay_type())
    throw error("kernels.NotDecayType", "majorant needs a decay-type kernel");
  if (!(t_max > 0.0) || n_s_samples < 1)
    throw error("kernels.BadParameter", "bad majorant grid");

  const int n_t = std::max(129, n_s_samples);
  DecayMajorant maj;
  maj.t_max = t_max;
  maj.dt = t_max / (n_t - 1);
  maj.values.assign(n_t, 0.0);

  const auto* exp_form = std::get_if<Kernel2::ExponentialScaled>(&E.form());
  const auto* coeff_form = std::get_if<Kernel2::CoefficientIntegral>(&E.form());

  std::vector<double> s_nodes = linspace(0.0, t_max, std::max(2, n_s_samples));
  std::vector<double> raw(n_t, 0.0);

  if (exp_form) {
    // translation identity: the s-sweep is constant
    for (int i = 0; i < n_t; ++i)
      raw[i] = exp_form->m0 * std::exp(-exp_form->lambda0 * (maj.dt * i));
  } else if (coeff_form && coeff_form->a.has_antiderivative()) {
    for (int i = 0; i < n_t; ++i) {
      const double t = maj.dt * i;
      double best = 0.0;
      for (double s : s_nodes)
        best = std::max(best, std::exp(-coeff_form->a.integral(s, s + t, cfg)));
      raw[i] = best;
    }
  } else {
    for (int i = 0; i < n_t; ++i) {
      const double t = maj.dt * i;
      double best = 0.0;
      for (double s : s_nodes) best = std::max(best, E(t + s, s));
      raw[i] = best;
    }
  }
  for (double v : raw) check_finite(v, "decay_majorant");

  // running maximum from the right makes the table nonincreasing
  maj.values = raw;
  for (int i = n_t - 2; i >= 0; --i)
    maj.values[i] = std::max(maj.values[i], maj.values[i + 1]);
  maj.tail_bound = maj.values.back();

  const double theta_grid = maj.values.front();
  if (maj.tail_bound > 0.5 * theta_grid)
    throw error("kernels.NoUniformDecay",
                "envelope never falls below half its supremum before t_max");
  return maj;
}

}  // namespace decaycert
