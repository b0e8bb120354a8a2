#include "decaycert/run.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "decaycert/attractor.hpp"
#include "decaycert/certificate.hpp"
#include "decaycert/config.hpp"
#include "decaycert/oracle.hpp"
#include "decaycert/report.hpp"
#include "decaycert/sectorial.hpp"
#include "decaycert/systems.hpp"

namespace decaycert {

namespace {

QuadratureConfig quad_config(const Config& cfg) {
  QuadratureConfig q;
  q.rel_tol = cfg.get_double("quadrature", "rel_tol", q.rel_tol);
  q.abs_tol = cfg.get_double("quadrature", "abs_tol", q.abs_tol);
  q.max_refinements = static_cast<int>(
      cfg.get_int("quadrature", "max_refinements", q.max_refinements));
  q.tail_cutoff = cfg.get_double("quadrature", "tail_cutoff", 0.0);
  return q;
}

Kernel2 kernel_from_config(const Config& cfg, const std::string& section) {
  const std::string kind = cfg.get_string(section, "kind");
  if (kind == "exponential")
    return Kernel2::exponential_scaled(cfg.get_double(section, "m0"),
                                       cfg.get_double(section, "lambda0"));
  if (kind == "coefficient")
    return Kernel2::coefficient_integral(
        function_from_config(cfg, cfg.get_string(section, "function")));
  if (kind == "scaled_exponential")
    return Kernel2::scaled_by(
        Kernel2::exponential_scaled(cfg.get_double(section, "m0"),
                                    cfg.get_double(section, "lambda0")),
        ScalarFn::constant(cfg.get_double(section, "gain")));
  if (kind == "scaled_coefficient")
    return Kernel2::scaled_by(
        Kernel2::coefficient_integral(
            function_from_config(cfg, cfg.get_string(section, "function"))),
        function_from_config(cfg, cfg.get_string(section, "gain_function")));
  if (kind == "power_singular")
    return Kernel2::power_singular(cfg.get_double(section, "scale"),
                                   cfg.get_double(section, "alpha"),
                                   cfg.get_double(section, "beta"));
  if (kind == "future_exponential")
    return Kernel2::future_exponential(cfg.get_double(section, "scale"),
                                       cfg.get_double(section, "beta"));
  throw error("cli.ParseError", "unknown kernel kind '" + kind + "'");
}

struct InequalityBundle {
  InequalityData data;
  std::optional<ExponentialDecay> exp_decay;  // when E is exponential
  double default_horizon = 40.0;
};

InequalityBundle inequality_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("system", "kind");
  InequalityBundle out{InequalityData{Kernel2::exponential_scaled(1.0, 1.0),
                                      std::nullopt, std::nullopt, 0.0, 0.0},
                       std::nullopt, 40.0};
  if (kind == "halanay") {
    const double alpha = cfg.get_double("system", "alpha");
    const double beta = cfg.get_double("system", "beta");
    out.data = halanay_map(alpha, beta);
    out.data.r = cfg.get_double("system", "lag", 1.0);
    out.data.rho = cfg.get_double("system", "rho", 0.0);
    out.exp_decay = ExponentialDecay{1.0, alpha};
    out.default_horizon = 40.0 / alpha;
    return out;
  }
  if (kind == "linear_lag") {
    const LinearLag sys{cfg.get_double("system", "a"),
                        cfg.get_double("system", "b"),
                        cfg.get_double("system", "lag")};
    out.data = linear_lag_map(sys);
    out.data.rho = cfg.get_double("system", "rho", 0.0);
    out.exp_decay = ExponentialDecay{1.0, sys.a};
    out.default_horizon = 40.0 / sys.a;
    return out;
  }
  if (kind == "inequality") {
    out.data.E = kernel_from_config(cfg, "kernel E");
    if (cfg.has_section("kernel K1"))
      out.data.k1 = kernel_from_config(cfg, "kernel K1");
    if (cfg.has_section("kernel K2"))
      out.data.k2 = kernel_from_config(cfg, "kernel K2");
    out.data.rho = cfg.get_double("system", "rho", 0.0);
    out.data.r = cfg.get_double("system", "lag", 0.0);
    if (const auto* e =
            std::get_if<Kernel2::ExponentialScaled>(&out.data.E.form())) {
      out.exp_decay = ExponentialDecay{e->m0, e->lambda0};
      out.default_horizon = 40.0 / e->lambda0;
    }
    return out;
  }
  throw error("cli.ParseError",
              "system kind '" + kind + "' does not define an inequality");
}

ScalarFDE fde_from_config(const Config& cfg) {
  ScalarFDE sys;
  sys.a = function_from_config(cfg, cfg.get_string("system", "a", "a"));
  sys.b = function_from_config(cfg, cfg.get_string("system", "b", "b"));
  sys.lag = cfg.get_double("system", "lag", 1.0);
  sys.r = cfg.get_double("system", "r", sys.lag);
  const std::string functional =
      cfg.get_string("system", "functional", "delayed_point");
  if (functional == "sampled_supremum") {
    sys.functional = ScalarFDE::Functional::sampled_supremum;
    sys.sup_offsets = cfg.get_list("system", "offsets");
  } else if (functional != "delayed_point") {
    throw error("cli.ParseError", "unknown functional '" + functional + "'");
  }
  return sys;
}

// the configurable superlinear family: x' = -cubic x^3 + gain x(t-lag) + forcing
SuperlinearSystem superlinear_from_config(const Config& cfg) {
  const double cubic = cfg.get_double("system", "cubic");
  const double gain = cfg.get_double("system", "gain", 0.0);
  const double lag = cfg.get_double("system", "lag", 1.0);
  if (!(cubic > 0.0))
    throw error("cli.ParseError", "cubic coefficient must be positive");

  ScalarFn forcing = ScalarFn::zero();
  const bool has_forcing = cfg.has_section("function forcing");
  if (has_forcing) forcing = function_from_config(cfg, "forcing");

  SuperlinearSystem sys;
  sys.dim = 1;
  sys.p = 3.0;
  sys.q = 1.0;
  sys.max_lag = lag;
  sys.F0 = [cubic, forcing](double t, const Vec& x) {
    return Vec{-cubic * x[0] * x[0] * x[0] + forcing(t)};
  };
  if (gain != 0.0) {
    sys.Fi = {[gain](double, const Vec& xd) { return Vec{gain * xd[0]}; }};
    sys.delays = {lag};
  }
  // with forcing f: (F0 x, x) <= -(cubic/2) x^4 + |f| outside the unit ball,
  // so alpha0 halves when a forcing term is present
  const double alpha0_default = has_forcing ? 0.5 * cubic : cubic;
  sys.alpha = {cfg.get_double("system", "alpha0", alpha0_default),
               std::abs(gain)};
  sys.beta = {has_forcing ? ScalarFn::custom(
                                [forcing](double t) { return std::abs(forcing(t)); },
                                "|forcing|")
                          : ScalarFn::zero(),
              ScalarFn::zero()};
  sys.M = cfg.get_double("system", "M", has_forcing ? 1.0 : 0.0);
  sys.N = cfg.get_double("system", "N", has_forcing ? 1.0 : 0.0);
  return sys;
}

NeuralDemo neural_from_config(const Config& cfg) {
  const int n = static_cast<int>(cfg.get_int("system", "n_neurons", 2));
  const int m = static_cast<int>(cfg.get_int("system", "mesh_points", 3));
  std::vector<double> diffusion =
      cfg.get_list("system", "diffusion", std::vector<double>(n, 1.0));
  auto b = cfg.has("system", "b")
               ? cfg.get_matrix("system", "b")
               : std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0));
  auto T = cfg.get_matrix("system", "T");
  auto delays = cfg.has("system", "delays")
                    ? cfg.get_matrix("system", "delays")
                    : std::vector<std::vector<double>>(
                          n, std::vector<double>(n, 1.0));
  const std::string act = cfg.get_string("system", "activation", "tanh_pair");
  NeuralActivation activation =
      act == "tanh_pair"      ? tanh_pair_activation()
      : act == "tanh_delayed" ? tanh_delayed_activation()
      : act == "linear_delayed"
          ? linear_delayed_activation()
          : throw error("cli.ParseError", "unknown activation '" + act + "'");
  std::vector<ScalarFn> J;
  for (int i = 1; i <= n; ++i) {
    const std::string name = "J" + std::to_string(i);
    J.push_back(cfg.has_section("function " + name)
                    ? function_from_config(cfg, name)
                    : ScalarFn::zero());
  }
  return neural_demo_build(n, m, diffusion, b, T, activation, delays, J);
}

History history_from_config(const Config& cfg, int dim, double max_lag) {
  const std::string kind = cfg.get_string("history", "kind", "constant");
  if (kind == "constant") {
    auto value =
        cfg.get_list("history", "value", std::vector<double>(dim, 1.0));
    if (static_cast<int>(value.size()) == 1 && dim > 1)
      value.assign(dim, value[0]);
    return History::constant(value);
  }
  if (kind == "polynomial") {
    const auto rows = cfg.get_matrix("history", "coefficients");
    return History::polynomial(rows, max_lag);
  }
  throw error("cli.ParseError", "unknown history kind '" + kind + "'");
}

DelaySystemSpec spec_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("system", "kind");
  if (kind == "halanay")
    return build_rhs(LinearLag{cfg.get_double("system", "alpha"),
                               cfg.get_double("system", "beta"),
                               cfg.get_double("system", "lag", 1.0)});
  if (kind == "linear_lag")
    return build_rhs(LinearLag{cfg.get_double("system", "a"),
                               cfg.get_double("system", "b"),
                               cfg.get_double("system", "lag")});
  if (kind == "scalar_fde" || kind == "periodic") {
    if (kind == "periodic") {
      ScalarFDE sys;
      sys.a = function_from_config(cfg, "a");
      sys.b = ScalarFn::constant(cfg.get_double("system", "beta"));
      sys.lag = cfg.get_double("system", "lag", 1.0);
      sys.r = sys.lag;
      return build_rhs(sys);
    }
    return build_rhs(fde_from_config(cfg));
  }
  if (kind == "superlinear") return build_rhs(superlinear_from_config(cfg));
  if (kind == "neural") return neural_from_config(cfg).spec;
  throw error("cli.ParseError", "system kind '" + kind + "' is not simulable");
}

void report_constants(Report& rep, const CertificateConstants& consts) {
  rep.set("theta", consts.theta);
  rep.set("kappa", consts.kappa);
  rep.set_optional("mu", consts.mu);
  rep.set_optional("c", consts.c);
  rep.set_optional("gamma", consts.gamma);
  rep.set_optional("sigma", consts.sigma);
  rep.set("verdict", to_string(consts.verdict));
  rep.set("formula.mu", "1/(1-kappa)");
  rep.set("formula.c", "max(theta/(1-kappa), 1)");
  rep.set("formula.gamma", "(mu+1)/(1-kappa*c)");
  rep.set("formula.sigma", "(1+kappa*c)/2");
  rep.set("note.M", "certificate constant M, distinct from the semigroup "
                    "constant M_sect and the future-kernel scale Mfut");
}

void report_certificate(Report& rep, const ExpDecayCertificate& cert) {
  rep.set("certificate.t0", cert.t0);
  rep.set("certificate.t1", cert.t1);
  rep.set("certificate.T", cert.T);
  rep.set("certificate.lambda", cert.lambda);
  rep.set("certificate.M", cert.M);
  rep.set("formula.certificate.T", "max(t0,t1)+r");
  rep.set("formula.certificate.lambda", "-ln(sigma)/(2T)");
  rep.set("formula.certificate.M", "c*exp(lambda*T)");
}

std::string csv_of_trajectory(const Trajectory& traj) {
  std::ostringstream os;
  traj.write_csv(os);
  return os.str();
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_certify(const Config& cfg, const RunConfig& rc) {
  const std::string kind = cfg.get_string("system", "kind");
  const QuadratureConfig q = quad_config(cfg);
  Report rep;
  rep.set("command", "certify");
  rep.set("system.kind", kind);
  rep.set("seed", static_cast<std::int64_t>(rc.seed));

  if (kind == "scalar_fde") {
    const ScalarFDE sys = fde_from_config(cfg);
    const auto tau_grid =
        cfg.get_list("certify", "tau_grid", std::vector<double>{0.0});
    const double horizon = cfg.get_double("certify", "horizon", 40.0);
    const auto cert = scalar_fde_certificate(sys, tau_grid, horizon, q);
    for (std::size_t i = 0; i < cert.rows.size(); ++i) {
      const std::string prefix = "tau[" + std::to_string(i) + "]";
      rep.set(prefix + ".tau", cert.rows[i].tau);
      rep.set(prefix + ".theta", cert.rows[i].theta);
      rep.set(prefix + ".kappa", cert.rows[i].kappa);
    }
    rep.set("theta_max", cert.theta_max);
    rep.set("kappa_max", cert.kappa_max);
    rep.set("verdict", to_string(cert.verdict));
    emit_report(rep, "scalar equation certificate", rc.output_dir);
    return cert.verdict == Verdict::geas ? 0 : 1;
  }

  if (kind == "periodic") {
    const ScalarFn a = function_from_config(cfg, "a");
    const double omega = cfg.get_double("system", "omega");
    const double beta = cfg.get_double("system", "beta");
    const auto pr = periodic_certificate(a, omega, beta, q);
    rep.set("I", pr.I);
    rep.set("I_plus", pr.I_plus);
    rep.set("I_minus", pr.I_minus);
    rep.set("Lambda", pr.Lambda);
    rep.set("theta_bound", pr.theta_bound);
    rep.set("kappa_bound", pr.kappa_bound);
    rep.set("beta1", pr.beta1);
    rep.set("beta2", pr.beta2);
    rep.set("exact_kappa_tau_max", pr.exact_kappa_tau_max);
    rep.set("exact_theta_tau_max", pr.exact_theta_tau_max);
    rep.set("bound_dominates_exact", pr.bound_dominates_exact);
    rep.set("beta", beta);
    const Verdict verdict = beta < pr.beta2   ? Verdict::geas
                            : beta < pr.beta1 ? Verdict::gas_only
                                              : Verdict::uncertified;
    rep.set("verdict", to_string(verdict));
    emit_report(rep, "periodic coefficient certificate", rc.output_dir);
    return verdict == Verdict::geas ? 0 : 1;
  }

  if (kind == "superlinear") {
    const SuperlinearSystem sys = superlinear_from_config(cfg);
    const auto cert = superlinear_certificate(sys);  // checks the forcing bound
    rep.set("gamma_exp", cert.gamma_exp);
    rep.set("alpha_sum", cert.alpha_sum);
    rep.set("c0", cert.c0);
    rep.set("c1", cert.c1);
    rep.set("c2", cert.c2);
    rep.set("theta", cert.theta);
    rep.set("kappa0", cert.kappa0);
    rep.set("eps_star", cert.eps_star);
    rep.set("dissipative", cert.dissipative);
    rep.set("binding_constraint", cert.binding_constraint);
    rep.set_optional("rho_empirical", cert.rho_empirical);
    emit_report(rep, "superlinear dissipativity certificate", rc.output_dir);
    return cert.dissipative ? 0 : 1;
  }

  // halanay | linear_lag | inequality
  const InequalityBundle bundle = inequality_from_config(cfg);
  const double horizon =
      cfg.get_double("certify", "horizon", bundle.default_horizon);
  const auto theta = theta_sup(bundle.data.E, horizon, q);
  const auto kappa = kappa_sup(bundle.data.k1, bundle.data.k2, horizon, q);
  const auto consts = derive_constants(theta.value, kappa.value);
  report_constants(rep, consts);
  rep.set("theta_pad", theta.pad);
  rep.set("kappa_pad", kappa.pad);
  rep.set("rho", bundle.data.rho);
  rep.set("lag", bundle.data.r);
  if (consts.verdict == Verdict::geas && bundle.exp_decay) {
    const auto cert = exp_certificate(consts, *bundle.exp_decay, bundle.data.r);
    report_certificate(rep, cert);
    const double y0 = cfg.get_double("certify", "y0", 1.0);
    const auto bds = bounds(consts, y0, bundle.data.rho);
    rep.set("bounds.y0", y0);
    rep.set("bounds.uniform", bds.uniform);
    rep.set("bounds.ultimate", bds.ultimate);
    rep.set("bounds.apriori", bds.apriori);
  }
  emit_report(rep, "decay certificate", rc.output_dir);
  return consts.verdict == Verdict::geas ? 0 : 1;
}

int cmd_simulate(const Config& cfg, const RunConfig& rc) {
  const DelaySystemSpec spec = spec_from_config(cfg);
  const History phi = history_from_config(cfg, spec.dim, spec.max_lag);
  const double tau = cfg.get_double("simulate", "tau", 0.0);
  const double t_end = cfg.get_double("simulate", "t_end", tau + 20.0);
  const double h = cfg.get_double("simulate", "h", 0.01);
  const Trajectory traj = integrate(spec, phi, tau, t_end, h);
  emit_file(rc.output_dir, "trajectory.csv", csv_of_trajectory(traj));

  Report rep;
  rep.set("command", "simulate");
  rep.set("system.kind", cfg.get_string("system", "kind"));
  rep.set("seed", static_cast<std::int64_t>(rc.seed));
  rep.set("tau", tau);
  rep.set("t_end", traj.t_end());
  rep.set("h", h);
  rep.set("steps", static_cast<std::int64_t>(traj.mesh().size() - 1));
  rep.set("history_norm", phi.sup_norm());
  rep.set("final_norm", traj.eval_norm(traj.t_end()));
  rep.set("final_segment_norm", traj.segment_norm(traj.t_end()));
  emit_report(rep, "simulation", rc.output_dir);
  return 0;
}

int cmd_verify(const Config& cfg, const RunConfig& rc) {
  const std::string kind = cfg.get_string("system", "kind");
  const QuadratureConfig q = quad_config(cfg);
  Report rep;
  rep.set("command", "verify");
  rep.set("system.kind", kind);
  rep.set("seed", static_cast<std::int64_t>(rc.seed));

  CertificateConstants consts;
  std::optional<ExpDecayCertificate> cert;
  double rho = 0.0;
  double lag = 0.0;

  if (kind == "halanay" || kind == "linear_lag" || kind == "inequality") {
    const InequalityBundle bundle = inequality_from_config(cfg);
    const double horizon =
        cfg.get_double("certify", "horizon", bundle.default_horizon);
    const auto theta = theta_sup(bundle.data.E, horizon, q);
    const auto kappa = kappa_sup(bundle.data.k1, bundle.data.k2, horizon, q);
    consts = derive_constants(theta.value, kappa.value);
    rho = bundle.data.rho;
    lag = bundle.data.r;
    if (consts.verdict == Verdict::geas && bundle.exp_decay)
      cert = exp_certificate(consts, *bundle.exp_decay, lag);
  } else if (kind == "scalar_fde" || kind == "periodic") {
    ScalarFDE sys;
    if (kind == "periodic") {
      sys.a = function_from_config(cfg, "a");
      sys.b = ScalarFn::constant(cfg.get_double("system", "beta"));
      sys.lag = cfg.get_double("system", "lag", 1.0);
      sys.r = sys.lag;
    } else {
      sys = fde_from_config(cfg);
    }
    const double horizon = cfg.get_double("certify", "horizon", 40.0);
    const auto fc = scalar_fde_certificate(
        sys, cfg.get_list("certify", "tau_grid", std::vector<double>{0.0}),
        horizon, q);
    consts = derive_constants(fc.theta_max, fc.kappa_max);
    lag = sys.r;
    if (consts.verdict == Verdict::geas) {
      const auto majorant =
          decay_majorant(fde_decay_kernel(sys, 0.0), horizon, 257, q);
      cert = exp_certificate(consts, majorant, lag);
    }
  } else {
    throw error("cli.ParseError", "verify does not support kind '" + kind + "'");
  }

  report_constants(rep, consts);
  if (consts.verdict != Verdict::geas || !cert) {
    rep.set("envelope.passed", false);
    rep.set("envelope.reason", "no exponential certificate issued");
    emit_report(rep, "envelope verification", rc.output_dir);
    return 1;
  }
  report_certificate(rep, *cert);

  const DelaySystemSpec spec = spec_from_config(cfg);
  const History phi = history_from_config(cfg, spec.dim, spec.max_lag);
  const double tau = cfg.get_double("simulate", "tau", 0.0);
  const double t_end =
      cfg.get_double("simulate", "t_end", tau + std::max(2.0 * cert->T, 20.0));
  const double h = cfg.get_double("simulate", "h", 0.01);
  const Trajectory traj = integrate(spec, phi, tau, t_end, h);
  emit_file(rc.output_dir, "trajectory.csv", csv_of_trajectory(traj));

  const double tol = cfg.get_double("verify", "tol", 1e-6);
  const auto env = verify_envelope(traj, *cert, consts.gamma.value_or(0.0),
                                   rho, tol);
  rep.set("envelope.passed", env.passed);
  rep.set("envelope.max_violation", env.max_violation);
  rep.set("envelope.worst_time", env.worst_time);
  rep.set("envelope.samples", static_cast<std::int64_t>(env.samples));
  rep.set("envelope.tolerance", env.tolerance);
  emit_report(rep, "envelope verification", rc.output_dir);
  return env.passed ? 0 : 1;
}

int cmd_attractor(const Config& cfg, const RunConfig& rc) {
  const DelaySystemSpec spec = spec_from_config(cfg);
  const double r = std::max(spec.max_lag, 1e-6);
  const double t_star = cfg.get_double("attractor", "t_star", 0.0);
  const double radius = cfg.get_double("attractor", "radius", 2.0);
  const int n_nodes = static_cast<int>(cfg.get_int("attractor", "n_nodes", 33));
  const int n_random = static_cast<int>(cfg.get_int("attractor", "n_random", 8));
  const double h = cfg.get_double("attractor", "h", 0.01);
  const double tol = cfg.get_double("attractor", "tol", 1e-3);

  std::vector<double> schedule =
      cfg.get_list("attractor", "tau_schedule", std::vector<double>{});
  if (schedule.empty())
    for (double mult : {10.0, 20.0, 40.0, 80.0, 160.0})
      schedule.push_back(t_star - mult * std::max(r, 1.0));

  const SetCloud cloud0 =
      sample_cloud(spec.dim, r, n_nodes, radius, n_random, rc.seed);

  double ball = cfg.get_double("attractor", "ball_radius", 0.0);
  const bool measured = !(ball > 0.0);
  PullbackReport rep0 = pullback_attractor(spec, t_star, cloud0, schedule, h,
                                           tol, measured ? 1e300 : ball);
  if (measured) {
    double peak = 0.0;
    for (std::size_t i = 0; i < rep0.attractor_sample.segments.size(); ++i)
      peak = std::max(peak, rep0.attractor_sample.segment_norm(i));
    rep0.ball_radius = peak;
    rep0.contained_in_ball = rep0.dropped_total == 0;
  }

  Report rep;
  rep.set("command", "attractor");
  rep.set("system.kind", cfg.get_string("system", "kind"));
  rep.set("seed", static_cast<std::int64_t>(rc.seed));
  rep.set("t_star", t_star);
  rep.set("segments", static_cast<std::int64_t>(cloud0.segments.size()));
  rep.set("converged", rep0.converged);
  rep.set("dropped", static_cast<std::int64_t>(rep0.dropped_total));
  rep.set("contained_in_ball", rep0.contained_in_ball);
  rep.set("ball_radius", rep0.ball_radius);
  rep.set("ball_radius_source", measured ? "measured" : "configured");
  rep.set("tabulation_dt", rep0.tabulation_dt);
  rep.set("note.sample", "a finite cloud is a sample of the attractor family; "
                         "uniqueness is not certified numerically");
  for (std::size_t i = 0; i < rep0.dH_history.size(); ++i)
    rep.set("dH[" + std::to_string(i) + "]", rep0.dH_history[i]);
  std::ostringstream cloud_csv;
  write_cloud_csv(rep0.attractor_sample, cloud_csv);
  emit_file(rc.output_dir, "attractor.csv", cloud_csv.str());
  emit_report(rep, "pullback attractor sample", rc.output_dir);
  return rep0.converged ? 0 : 1;
}

int cmd_halanay(const Config& cfg, const RunConfig& rc) {
  const double alpha = cfg.get_double("system", "alpha");
  const double beta = cfg.get_double("system", "beta");
  const double lag = cfg.get_double("system", "lag", 1.0);
  const QuadratureConfig q = quad_config(cfg);

  const InequalityData data = halanay_map(alpha, beta);
  const double horizon = 40.0 / alpha;
  const auto theta = theta_sup(data.E, horizon, q);
  const auto kappa = kappa_sup(data.k1, data.k2, horizon, q);
  const auto consts = derive_constants(theta.value, kappa.value);

  Report rep;
  rep.set("command", "halanay");
  rep.set("seed", static_cast<std::int64_t>(rc.seed));
  rep.set("alpha", alpha);
  rep.set("beta", beta);
  rep.set("lag", lag);
  report_constants(rep, consts);

  if (beta > 0.0 && beta < alpha) {
    const double chen = chen_rate(alpha, beta, lag);
    const double root = characteristic_root(alpha, beta, lag);
    rep.set("chen_rate", chen);
    rep.set("characteristic_root", root);
    rep.set("duality_gap", std::abs(chen + root));
  } else {
    rep.set_undefined("chen_rate");
    rep.set("characteristic_root", characteristic_root(alpha, beta, lag));
  }

  if (consts.verdict == Verdict::geas) {
    const auto cert =
        exp_certificate(consts, ExponentialDecay{1.0, alpha}, lag);
    report_certificate(rep, cert);
    if (beta > 0.0 && beta < alpha)
      rep.set("lambda_below_chen_rate",
              cert.lambda <= chen_rate(alpha, beta, lag));
  }

  // empirical probe of the band where only plain attraction is certified:
  // majorant decay rates for kappa in [1/(1+theta), 1); observational only
  if (cfg.get_bool("halanay", "sweep", true)) {
    int idx = 0;
    for (double kap : {0.55, 0.65, 0.75, 0.85, 0.95}) {
      auto probe = halanay_map(1.0, kap);
      probe.r = lag;
      const auto table = majorant_fixed_point(probe, 1.0, 30.0, 751);
      // log-slope over the late half of the table
      double t0 = 15.0, t1 = 28.0;
      const double v0 = std::max(table.eval(t0), 1e-300);
      const double v1 = std::max(table.eval(t1), 1e-300);
      const double rate = (std::log(v0) - std::log(v1)) / (t1 - t0);
      const std::string key = "sweep[" + std::to_string(idx++) + "]";
      rep.set(key + ".kappa", kap);
      rep.set(key + ".empirical_rate", rate);
    }
    rep.set("note.sweep",
            "empirical decay of the extremal majorant beyond the exponential "
            "threshold; observational only");
  }
  emit_report(rep, "differential comparison report", rc.output_dir);
  return consts.verdict == Verdict::geas ? 0 : 1;
}

int cmd_sectorial(const Config& cfg, const RunConfig& rc) {
  SectorialParams params;
  params.alpha = cfg.get_double("system", "alpha", 0.0);
  params.beta = cfg.get_double("system", "beta");
  params.M_sect = cfg.get_double("system", "M", 1.0);
  params.L = cfg.get_double("system", "L", 0.0);
  params.C0 = cfg.get_double("system", "C0", params.L);
  params.C1 = cfg.get_double("system", "C1", 0.0);
  const std::string variant_name =
      cfg.get_string("system", "variant", "stable");
  const Kappa0Variant variant = variant_name == "full" ? Kappa0Variant::full
                                : variant_name == "stable"
                                    ? Kappa0Variant::stable
                                    : throw error("cli.ParseError",
                                                  "variant must be full|stable");
  const auto verdict = sectorial_thresholds(params, variant, quad_config(cfg));

  Report rep;
  rep.set("command", "sectorial");
  rep.set("seed", static_cast<std::int64_t>(rc.seed));
  rep.set("alpha", params.alpha);
  rep.set("beta", params.beta);
  rep.set("M_sect", params.M_sect);
  rep.set("L", params.L);
  rep.set("C0", params.C0);
  rep.set("C1", params.C1);
  rep.set("variant", variant_name);
  rep.set("kappa0", verdict.kappa0);
  rep.set("equilibrium_exists", verdict.equilibrium_exists);
  rep.set("gas", verdict.gas);
  rep.set("geas", verdict.geas);
  rep.set_optional("rho_eq", verdict.rho_eq);
  rep.set("formula.kappa0",
          "sup_t int_0^t (t-s)^-alpha e^-beta(t-s) ds (+1/beta in full)");
  emit_report(rep, "sectorial thresholds", rc.output_dir);
  return verdict.equilibrium_exists ? 0 : 1;
}

int cmd_oracle(const Config& cfg, const RunConfig& rc) {
  const InequalityBundle bundle = inequality_from_config(cfg);
  const double y0 = cfg.get_double("oracle", "y0", 1.0);
  const double t_max = cfg.get_double("oracle", "t_max", 20.0);
  const int n_grid = static_cast<int>(cfg.get_int("oracle", "n_grid", 2001));

  Report rep;
  rep.set("command", "oracle");
  rep.set("system.kind", cfg.get_string("system", "kind"));
  rep.set("seed", static_cast<std::int64_t>(rc.seed));
  rep.set("y0", y0);
  rep.set("rho", bundle.data.rho);

  MajorantTable table;
  try {
    table = majorant_fixed_point(bundle.data, y0, t_max, n_grid);
  } catch (const error& e) {
    if (std::string(e.code()) == "oracle.NotContractive") {
      rep.set("contractive", false);
      emit_report(rep, "inequality majorant", rc.output_dir);
      return 1;
    }
    throw;
  }
  rep.set("contractive", true);
  rep.set("iterations", static_cast<std::int64_t>(table.iterations));
  rep.set("residual", table.residual);

  const QuadratureConfig q = quad_config(cfg);
  const double horizon =
      cfg.get_double("certify", "horizon", bundle.default_horizon);
  const auto consts =
      derive_constants(theta_sup(bundle.data.E, horizon, q).value,
                       kappa_sup(bundle.data.k1, bundle.data.k2, horizon, q).value);
  const auto bds = bounds(consts, y0, bundle.data.rho);
  double peak = 0.0;
  for (std::size_t i = 0; i < table.grid.size(); ++i)
    if (table.grid[i] >= 0.0) peak = std::max(peak, table.values[i]);
  rep.set("majorant_peak", peak);
  rep.set("bound.uniform", bds.uniform);
  rep.set("bound.ultimate", bds.ultimate);
  rep.set("majorant_final", table.values.back());
  rep.set("within_uniform_bound", peak <= bds.uniform + 1e-3 * (1.0 + bds.uniform));

  std::ostringstream csv;
  table.write_csv(csv);
  emit_file(rc.output_dir, "majorant.csv", csv.str());
  emit_report(rep, "inequality majorant", rc.output_dir);
  return 0;
}

int cmd_demo(const Config& cfg, const RunConfig& rc) {
  const NeuralDemo demo = neural_from_config(cfg);
  const QuadratureConfig q = quad_config(cfg);
  const auto verdict =
      sectorial_thresholds(demo.params, Kappa0Variant::stable, q);

  const double pi = std::acos(-1.0);
  const double period = cfg.get_double("demo", "period", 2.0 * pi);
  const double transient = cfg.get_double("demo", "transient", 4.0 * period);
  const double t_end = cfg.get_double("demo", "t_end", transient + 3.0 * period);
  const double h = cfg.get_double("demo", "h", 0.005);
  const double tol = cfg.get_double("demo", "tol", 1e-4);

  const History phi1 =
      History::constant(Vec(demo.spec.dim, cfg.get_double("demo", "level1", 0.5)));
  const History phi2 =
      History::constant(Vec(demo.spec.dim, cfg.get_double("demo", "level2", -0.4)));
  const Trajectory t1 = integrate(demo.spec, phi1, 0.0, t_end, h);
  const Trajectory t2 = integrate(demo.spec, phi2, 0.0, t_end, h);

  double pair_gap = 0.0, periodic_gap = 0.0;
  for (double t = transient; t + period <= t_end + 1e-9; t += h) {
    const Vec a = t1.eval(t), b = t2.eval(t), c = t1.eval(t + period);
    double g1 = 0.0, g2 = 0.0;
    for (int j = 0; j < demo.spec.dim; ++j) {
      g1 += (a[j] - b[j]) * (a[j] - b[j]);
      g2 += (a[j] - c[j]) * (a[j] - c[j]);
    }
    pair_gap = std::max(pair_gap, std::sqrt(g1));
    periodic_gap = std::max(periodic_gap, std::sqrt(g2));
  }

  Report rep;
  rep.set("command", "demo");
  rep.set("seed", static_cast<std::int64_t>(rc.seed));
  rep.set("n_neurons", static_cast<std::int64_t>(demo.n_neurons));
  rep.set("mesh_points", static_cast<std::int64_t>(demo.mesh_points));
  rep.set("mesh_h", demo.mesh_h);
  rep.set("beta_estimate", demo.params.beta);
  rep.set("lipschitz", demo.params.L);
  rep.set("M_sect", demo.params.M_sect);
  rep.set("symmetric_coupling", demo.symmetric);
  rep.set("gershgorin_lower", demo.gershgorin_lower);
  rep.set("estimate_based", demo.estimate_based);
  rep.set("kappa0", verdict.kappa0);
  rep.set("equilibrium_exists", verdict.equilibrium_exists);
  rep.set("gas", verdict.gas);
  rep.set("geas", verdict.geas);
  rep.set("pairwise_gap", pair_gap);
  rep.set("periodicity_gap", periodic_gap);
  rep.set("tolerance", tol);
  const bool ok = pair_gap < tol && periodic_gap < tol;
  rep.set("passed", ok);
  emit_file(rc.output_dir, "trajectory.csv", csv_of_trajectory(t1));
  emit_report(rep, "neural network demo", rc.output_dir);
  return ok ? 0 : 1;
}

}  // namespace

int run(const RunConfig& rc) {
  try {
    Config cfg = Config::parse_file(rc.input_path);
    for (const auto& ov : rc.overrides) cfg.apply_override(ov);

    if (rc.command == "certify") return cmd_certify(cfg, rc);
    if (rc.command == "simulate") return cmd_simulate(cfg, rc);
    if (rc.command == "verify") return cmd_verify(cfg, rc);
    if (rc.command == "attractor") return cmd_attractor(cfg, rc);
    if (rc.command == "halanay") return cmd_halanay(cfg, rc);
    if (rc.command == "sectorial") return cmd_sectorial(cfg, rc);
    if (rc.command == "oracle") return cmd_oracle(cfg, rc);
    if (rc.command == "demo") return cmd_demo(cfg, rc);
    throw error("cli.ParseError", "unknown command '" + rc.command + "'");
  } catch (const error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace decaycert
