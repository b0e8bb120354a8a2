#include "decaycert/systems.hpp"

#include <algorithm>
#include <cmath>

namespace decaycert {

Kernel2 fde_decay_kernel(const ScalarFDE& sys, double tau) {
  return Kernel2::coefficient_integral(sys.a.shifted(tau));
}

Kernel2 fde_gain_kernel(const ScalarFDE& sys, double tau) {
  return Kernel2::scaled_by(fde_decay_kernel(sys, tau), sys.b.shifted(tau));
}

FdeCertificate scalar_fde_certificate(const ScalarFDE& sys,
                                      const std::vector<double>& tau_grid,
                                      double horizon,
                                      const QuadratureConfig& cfg) {
  if (tau_grid.empty())
    throw error("systems.BadParameter", "empty tau grid");

  // uniform-decay plausibility check on the first translate; a coefficient
  // that fails it cannot satisfy the certificate hypotheses anyway
  decay_majorant(fde_decay_kernel(sys, tau_grid.front()), horizon, 65, cfg);

  FdeCertificate cert;
  bool all_gas = true, all_geas = true;
  for (double tau : tau_grid) {
    const auto theta = theta_sup(fde_decay_kernel(sys, tau), horizon, cfg);
    const auto kappa =
        kappa_sup(fde_gain_kernel(sys, tau), std::nullopt, horizon, cfg);
    cert.rows.push_back({tau, theta.value, kappa.value});
    cert.theta_max = std::max(cert.theta_max, theta.value);
    cert.kappa_max = std::max(cert.kappa_max, kappa.value);
    if (!(kappa.value < 1.0)) all_gas = false;
    if (!(kappa.value < 1.0 / (1.0 + theta.value))) all_geas = false;
  }
  cert.verdict = all_geas  ? Verdict::geas
                 : all_gas ? Verdict::gas_only
                           : Verdict::uncertified;
  return cert;
}

PeriodicCoefficientReport periodic_certificate(const ScalarFn& a, double omega,
                                               double beta,
                                               const QuadratureConfig& cfg) {
  if (!(omega > 0.0))
    throw error("systems.BadParameter", "period must be positive");
  if (!(beta >= 0.0))
    throw error("systems.BadParameter", "gain bound must be nonnegative");

  PeriodicCoefficientReport rep;
  rep.I = a.integral(0.0, omega, cfg);
  if (!(rep.I > 0.0))
    throw error("systems.NonPositiveMeanCoefficient",
                "the coefficient must have positive mean over one period");

  rep.I_minus = integrate_positive_part([&](double t) { return -a(t); }, 0.0,
                                        omega, cfg);
  rep.I_plus = rep.I + rep.I_minus;
  rep.Lambda = rep.I / omega;
  rep.theta_bound = std::exp(rep.I_minus);
  rep.kappa_bound = beta * omega * std::exp(rep.I_plus) / rep.I;
  rep.beta1 = rep.I / (omega * std::exp(rep.I_plus));
  rep.beta2 = rep.beta1 / (1.0 + std::exp(rep.I_minus));

  // exact grid functionals over one period of initial times; the closed-form
  // bounds must dominate them
  ScalarFDE fde;
  fde.a = a;
  fde.b = ScalarFn::constant(beta);
  const double horizon = 10.0 * omega;
  for (int k = 0; k < 8; ++k) {
    const double tau = omega * k / 8.0;
    rep.exact_theta_tau_max =
        std::max(rep.exact_theta_tau_max,
                 theta_sup(fde_decay_kernel(fde, tau), horizon, cfg).raw);
    rep.exact_kappa_tau_max = std::max(
        rep.exact_kappa_tau_max,
        kappa_sup(fde_gain_kernel(fde, tau), std::nullopt, horizon, cfg).raw);
  }
  rep.bound_dominates_exact =
      rep.theta_bound >= rep.exact_theta_tau_max - cfg.abs_tol &&
      rep.kappa_bound >= rep.exact_kappa_tau_max - cfg.abs_tol;
  return rep;
}

CoarseSineThresholds sine_example_coarse_thresholds(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw error("systems.BadParameter", "offset must lie in (0,1)");
  const double pi = std::acos(-1.0);
  const double gas = eps * std::exp(-(2.0 + 2.0 * pi * eps));
  return CoarseSineThresholds{gas, gas / (1.0 + std::exp(2.0))};
}

SuperlinearCertificate superlinear_certificate(const SuperlinearSystem& sys) {
  if (!(sys.p > sys.q) || !(sys.q >= 1.0))
    throw error("systems.BadParameter", "need p > q >= 1");
  if (sys.alpha.empty() || !(sys.alpha[0] > 0.0))
    throw error("systems.BadParameter", "need alpha_0 > 0");
  if (!(sys.M >= 0.0) || !(sys.N >= 0.0))
    throw error("systems.BadParameter", "forcing bound pair must be >= 0");
  // the forcing integral bound is a hypothesis of the dissipation estimate;
  // no certificate without it
  verify_forcing_bound(sys, 50.0, QuadratureConfig{});

  SuperlinearCertificate cert;
  cert.gamma_exp = sys.p * (sys.q - 1.0) / (sys.p - sys.q) + 1.0;
  cert.alpha_sum = 0.0;
  for (std::size_t i = 1; i < sys.alpha.size(); ++i)
    cert.alpha_sum += sys.alpha[i];
  const double gp1 = cert.gamma_exp + 1.0;
  cert.c0 = gp1 * sys.alpha[0];
  cert.c1 = 0.5 * cert.c0;
  cert.c2 = gp1 * sys.N;
  cert.theta = std::exp(cert.c2);
  cert.kappa0 = cert.alpha_sum * gp1 * cert.theta / cert.c1;

  // the admissible scale must satisfy four strict upper limits
  struct Limit {
    double value;
    const char* name;
  };
  std::vector<Limit> limits;
  if (cert.kappa0 > 0.0)
    limits.push_back({1.0 / ((1.0 + cert.theta) * cert.kappa0),
                      "eps*kappa0 < 1/(1+theta)"});
  limits.push_back({cert.c0 / (2.0 * gp1 * (cert.alpha_sum + sys.M)),
                    "eps*(gamma+1)*(alpha_sum+M) < c0/2"});
  limits.push_back({1.0, "eps < 1"});
  if (cert.alpha_sum > 0.0)
    limits.push_back({sys.alpha[0] / cert.alpha_sum, "eps*alpha_sum < alpha0"});

  double cap = limits[0].value;
  const char* binding = limits[0].name;
  for (const auto& lim : limits)
    if (lim.value < cap) {
      cap = lim.value;
      binding = lim.name;
    }
  cert.binding_constraint = binding;
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    cert.dissipative = false;
    throw error("systems.Infeasible",
                std::string("no admissible scale; binding constraint: ") +
                    binding);
  }

  // logarithmic sweep, keeping the largest feasible scale
  const double lo = 1e-8, hi = cap * (1.0 - 1e-9);
  double best = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double eps =
        lo * std::pow(hi / lo, static_cast<double>(i) / 59.0);
    const bool ok =
        (cert.kappa0 == 0.0 ||
         eps * cert.kappa0 < 1.0 / (1.0 + cert.theta)) &&
        eps * gp1 * (cert.alpha_sum + sys.M) < cert.c0 / 2.0 && eps < 1.0 &&
        (cert.alpha_sum == 0.0 || eps * cert.alpha_sum < sys.alpha[0]);
    if (ok) best = std::max(best, eps);
  }
  cert.eps_star = best;
  cert.dissipative = best > 0.0;
  return cert;
}

void verify_forcing_bound(const SuperlinearSystem& sys, double window_span,
                          const QuadratureConfig& cfg) {
  const double tol = 1e-7 * (1.0 + sys.M + sys.N);
  for (double len : {0.5, 1.0, 2.0, 5.0, 10.0, window_span}) {
    if (!(len > 0.0)) continue;
    for (double s = -window_span; s + len <= window_span + 1e-9; s += len / 3.0) {
      double total = 0.0;
      for (const auto& b : sys.beta) total += b.integral(s, s + len, cfg);
      if (total > sys.M * len + sys.N + tol)
        throw error("systems.ForcingBoundViolated",
                    "sum int beta_i exceeds M(t-s)+N on a sampled window");
    }
  }
}

InequalityData linear_lag_map(const LinearLag& sys) {
  InequalityData data = halanay_map(sys.a, sys.b);
  data.r = sys.lag;
  return data;
}

DelaySystemSpec build_rhs(const ScalarFDE& sys) {
  DelaySystemSpec spec;
  spec.dim = 1;
  spec.max_lag = sys.r;
  const ScalarFn a = sys.a, b = sys.b;
  if (sys.functional == ScalarFDE::Functional::delayed_point) {
    const double lag = sys.lag;
    if (lag < 0.0 || lag > sys.r + 1e-12)
      throw error("systems.BadParameter", "realization lag must lie in [0, r]");
    spec.delays = {[lag](double) { return lag; }};
    spec.rhs = [a, b](double t, const Vec& x, const std::vector<Vec>& xd) {
      return Vec{-a(t) * x[0] + b(t) * xd[0][0]};
    };
  } else {
    if (sys.sup_offsets.empty())
      throw error("systems.BadParameter", "need offsets for the sup variant");
    for (double s : sys.sup_offsets)
      if (s < 0.0 || s > sys.r + 1e-12)
        throw error("systems.BadParameter", "offset outside [0, r]");
    for (double s : sys.sup_offsets)
      spec.delays.push_back([s](double) { return s; });
    spec.rhs = [a, b](double t, const Vec& x, const std::vector<Vec>& xd) {
      double peak = 0.0;
      for (const Vec& v : xd) peak = std::max(peak, std::abs(v[0]));
      return Vec{-a(t) * x[0] + b(t) * peak};
    };
  }
  return spec;
}

DelaySystemSpec build_rhs(const SuperlinearSystem& sys) {
  if (sys.Fi.size() != sys.delays.size())
    throw error("systems.BadParameter", "one delay per delayed term");
  DelaySystemSpec spec;
  spec.dim = sys.dim;
  spec.max_lag = sys.max_lag;
  for (double r : sys.delays) {
    if (r < 0.0 || r > sys.max_lag + 1e-12)
      throw error("systems.BadParameter", "delay outside [0, max_lag]");
    spec.delays.push_back([r](double) { return r; });
  }
  const auto F0 = sys.F0;
  const auto Fi = sys.Fi;
  spec.rhs = [F0, Fi](double t, const Vec& x, const std::vector<Vec>& xd) {
    Vec out = F0(t, x);
    for (std::size_t i = 0; i < Fi.size(); ++i) {
      const Vec add = Fi[i](t, xd[i]);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += add[j];
    }
    return out;
  };
  return spec;
}

DelaySystemSpec build_rhs(const LinearLag& sys) {
  DelaySystemSpec spec;
  spec.dim = 1;
  spec.max_lag = sys.lag;
  const double a = sys.a, b = sys.b, lag = sys.lag;
  spec.delays = {[lag](double) { return lag; }};
  spec.rhs = [a, b](double, const Vec& x, const std::vector<Vec>& xd) {
    return Vec{-a * x[0] + b * xd[0][0]};
  };
  return spec;
}

}  // namespace decaycert
