#pragma once

#include <optional>
#include <string>

#include "decaycert/kernels.hpp"

namespace decaycert {

enum class Verdict { geas, gas_only, uncertified };

std::string to_string(Verdict v);

// The inequality data: decay kernel E, past gain kernel K1, future kernel
// K2, nonnegative offset rho, and the sup-norm window r.
struct InequalityData {
  Kernel2 E;
  std::optional<Kernel2> k1;
  std::optional<Kernel2> k2;
  double rho = 0.0;
  double r = 0.0;
};

// Stability constants derived from the pair (theta, kappa):
//   mu    = 1/(1-kappa)             (kappa < 1)
//   c     = max(theta/(1-kappa), 1)
//   gamma = (mu+1)/(1-kappa*c)      (kappa*c < 1)
//   sigma = (1+kappa*c)/2           (kappa*c < 1)
// Verdict: geas iff kappa < 1/(1+theta); gas_only iff 1/(1+theta) <= kappa < 1;
// uncertified iff kappa >= 1. Constants that would be meaningless are held as
// an explicit absent state, never as infinities.
struct CertificateConstants {
  double theta = 0.0;
  double kappa = 0.0;
  std::optional<double> mu, c, gamma, sigma;
  Verdict verdict = Verdict::uncertified;

  double kappa_c() const { return kappa * c.value(); }
};

CertificateConstants derive_constants(double theta, double kappa);

// Exponential decay envelope  ||y_t|| <= M ||y_0|| e^(-lambda t) + gamma rho
// with T = max(t0, t1) + r, lambda = -ln(sigma)/(2T), M = c e^(lambda T).
struct ExpDecayCertificate {
  double t0 = 0.0;
  double t1 = 0.0;
  double T = 0.0;
  double lambda = 0.0;
  double M = 0.0;
};

// E(t,s) = m0 exp(-lambda0 (t-s)) shortcut with fully explicit constants.
struct ExponentialDecay {
  double m0;
  double lambda0;
};

ExpDecayCertificate exp_certificate(const CertificateConstants& consts,
                                    const ExponentialDecay& decay, double r);

// General branch: thresholds read off a sampled decay majorant, padded by
// one grid step to stay conservative.
ExpDecayCertificate exp_certificate(const CertificateConstants& consts,
                                    const DecayMajorant& majorant, double r);

// uniform  = c*y0 + mu*rho      (holds for all t >= 0)
// ultimate = mu*rho             (holds eventually)
// apriori  = (c+1)(y0+1)+mu*rho (holds on any existence interval, K2 = 0)
struct SolutionBounds {
  double uniform;
  double ultimate;
  double apriori;
};

SolutionBounds bounds(const CertificateConstants& consts, double y0_norm,
                      double rho);

// The classical differential comparison  y' <= -alpha y + beta ||y_t||
// mapped onto the integral inequality: E = e^(-alpha(t-s)), K1 = beta E.
InequalityData halanay_map(double alpha, double beta);

// The rate mu solving beta e^(mu r) = alpha - mu in (0, alpha - beta];
// the integral-form comparison rate for 0 < beta < alpha.
double chen_rate(double alpha, double beta, double r);

// Envelope (1-b)^(-1) K exp(-[alpha - (1-b)^(-1) L] t) with
// b = L/alpha + Mfut/gamma_rate < 1; decays is true when the exponent is
// genuinely negative.
struct HaleEnvelope {
  double beta;
  double coefficient;
  double exponent_rate;  // decay rate; negative value means growth
  bool decays;

  double at(double t) const;
};

HaleEnvelope hale_envelope(double K, double L, double Mfut, double alpha,
                           double gamma_rate);

}  // namespace decaycert
