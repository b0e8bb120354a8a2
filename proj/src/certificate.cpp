#include "decaycert/certificate.hpp"

#include <cmath>

namespace decaycert {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::geas: return "GEAS";
    case Verdict::gas_only: return "GAS_only";
    case Verdict::uncertified: return "Uncertified";
  }
  return "?";
}

CertificateConstants derive_constants(double theta, double kappa) {
  if (!(theta > 0.0))
    throw error("certificate.BadParameter", "theta must be positive");
  if (!(kappa >= 0.0))
    throw error("certificate.BadParameter", "kappa must be nonnegative");

  CertificateConstants out;
  out.theta = theta;
  out.kappa = kappa;
  if (kappa >= 1.0) {
    out.verdict = Verdict::uncertified;
    return out;
  }

  out.mu = 1.0 / (1.0 - kappa);
  out.c = std::max(theta / (1.0 - kappa), 1.0);
  const double kc = kappa * *out.c;
  if (kc < 1.0) {
    out.gamma = (*out.mu + 1.0) / (1.0 - kc);
    out.sigma = (1.0 + kc) / 2.0;
  }
  out.verdict =
      kappa < 1.0 / (1.0 + theta) ? Verdict::geas : Verdict::gas_only;
  return out;
}

namespace {

ExpDecayCertificate finish_certificate(const CertificateConstants& consts,
                                       double t0, double t1, double r) {
  ExpDecayCertificate cert;
  cert.t0 = t0;
  cert.t1 = t1;
  cert.T = std::max(t0, t1) + r;
  cert.lambda = -std::log(*consts.sigma) / (2.0 * cert.T);
  cert.M = *consts.c * std::exp(cert.lambda * cert.T);
  return cert;
}

void require_geas(const CertificateConstants& consts) {
  if (consts.verdict != Verdict::geas)
    throw error("certificate.NotGEAS",
                "exponential certificate needs verdict GEAS, got " +
                    to_string(consts.verdict));
}

}  // namespace

ExpDecayCertificate exp_certificate(const CertificateConstants& consts,
                                    const ExponentialDecay& decay, double r) {
  require_geas(consts);
  if (!(decay.m0 > 0.0) || !(decay.lambda0 > 0.0))
    throw error("certificate.BadParameter", "decay pair must be positive");

  const double kc = consts.kappa_c();
  const double t0 = std::max(0.0, std::log(decay.m0 * *consts.gamma)) /
                    decay.lambda0;
  const double t1 =
      std::max(0.0, std::log(2.0 * decay.m0 / (1.0 - kc))) / decay.lambda0;
  return finish_certificate(consts, t0, t1, r);
}

ExpDecayCertificate exp_certificate(const CertificateConstants& consts,
                                    const DecayMajorant& majorant, double r) {
  require_geas(consts);
  const double kc = consts.kappa_c();

  // first grid crossing of each threshold, padded by one grid step
  auto first_crossing = [&](double threshold, bool strict) -> double {
    for (std::size_t i = 0; i < majorant.values.size(); ++i) {
      const double v = majorant.values[i];
      if (strict ? (v < threshold) : (v <= threshold))
        return majorant.dt * static_cast<double>(i + 1);
    }
    throw error("certificate.MajorantTooShort",
                "majorant table never crosses the certificate threshold");
  };

  const double t0 = first_crossing(1.0 / *consts.gamma, false);
  const double t1 = first_crossing((1.0 - kc) / 2.0, true);
  return finish_certificate(consts, t0, t1, r);
}

SolutionBounds bounds(const CertificateConstants& consts, double y0_norm,
                      double rho) {
  if (consts.verdict == Verdict::uncertified)
    throw error("certificate.Uncertified",
                "bounds are meaningless without kappa < 1");
  if (!(y0_norm >= 0.0) || !(rho >= 0.0))
    throw error("certificate.BadParameter", "norms must be nonnegative");

  const double c = *consts.c, mu = *consts.mu;
  return SolutionBounds{c * y0_norm + mu * rho, mu * rho,
                        (c + 1.0) * (y0_norm + 1.0) + mu * rho};
}

InequalityData halanay_map(double alpha, double beta) {
  if (!(alpha > 0.0))
    throw error("certificate.BadParameter", "alpha must be positive");
  if (!(beta >= 0.0))
    throw error("certificate.BadParameter", "beta must be nonnegative");

  Kernel2 E = Kernel2::exponential_scaled(1.0, alpha);
  InequalityData data{E, std::nullopt, std::nullopt, 0.0, 0.0};
  if (beta > 0.0)
    data.k1 = Kernel2::scaled_by(E, ScalarFn::constant(beta));
  return data;
}

double chen_rate(double alpha, double beta, double r) {
  if (!(beta > 0.0) || !(beta < alpha))
    throw error("certificate.BadParameter", "need 0 < beta < alpha");
  if (!(r >= 0.0)) throw error("certificate.BadParameter", "lag must be >= 0");
  if (r == 0.0) return alpha - beta;

  // g(mu) = beta e^(mu r) - (alpha - mu) is strictly increasing
  auto g = [&](double mu) { return beta * std::exp(mu * r) - (alpha - mu); };
  double lo = 0.0, hi = alpha * (1.0 - 1e-12);
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) < 1e-13 * alpha) break;
    (gm < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

double HaleEnvelope::at(double t) const {
  return coefficient * std::exp(-exponent_rate * t);
}

HaleEnvelope hale_envelope(double K, double L, double Mfut, double alpha,
                           double gamma_rate) {
  if (!(alpha > 0.0))
    throw error("certificate.BadParameter", "alpha must be positive");
  if (Mfut != 0.0 && !(gamma_rate > 0.0))
    throw error("certificate.BadParameter",
                "future term needs a positive rate");

  const double beta = L / alpha + (Mfut != 0.0 ? Mfut / gamma_rate : 0.0);
  if (!(beta < 1.0))
    throw error("certificate.BetaNotLessThanOne",
                "L/alpha + Mfut/gamma must be < 1");

  HaleEnvelope env;
  env.beta = beta;
  env.coefficient = K / (1.0 - beta);
  env.exponent_rate = alpha - L / (1.0 - beta);
  env.decays = env.exponent_rate > 0.0;
  return env;
}

}  // namespace decaycert
