#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decaycert/dde.hpp"
#include "decaycert/scalar_function.hpp"

namespace decaycert {

// kappa0 = sup_t ( int_0^t (t-s)^(-alpha) e^(-beta(t-s)) ds
//                 [+ int_t^inf e^(beta(t-s)) ds  in the full variant] ).
// The first integral increases to Gamma(1-alpha) beta^(alpha-1); the future
// part is the constant 1/beta.
enum class Kappa0Variant { full, stable };

double kappa0(double alpha, double beta, Kappa0Variant variant,
              const QuadratureConfig& cfg);

struct SectorialParams {
  double alpha = 0.0;   // fractional exponent in [0,1)
  double beta = 1.0;    // spectral gap
  double M_sect = 1.0;  // semigroup constant, >= 1
  double L = 0.0;       // Lipschitz constant of the nonlinearity
  double C0 = 0.0;      // growth coefficient
  double C1 = 0.0;      // growth offset
};

// equilibrium_exists iff L < 1/(kappa0 M); geas iff L < 1/(kappa0 M (1+M));
// gas requires the stable-spectrum variant with L < 1/(kappa0 M). The
// equilibrium radius C1 M (1 - kappa0 C0 M)^(-1) int (1+s^(-alpha)) e^(-beta s)
// is reported when its denominator is positive.
struct SectorialVerdict {
  double kappa0 = 0.0;
  bool equilibrium_exists = false;
  bool gas = false;
  bool geas = false;
  std::optional<double> rho_eq;
};

SectorialVerdict sectorial_thresholds(const SectorialParams& params,
                                      Kappa0Variant variant,
                                      const QuadratureConfig& cfg);

// L = 2 ( sum_i ( sum_j |T_ij| L_j )^2 )^(1/2)
double neural_lipschitz(const std::vector<std::vector<double>>& T,
                        const std::vector<double>& Lg);

// per-neuron activation g(u, v) of the current and delayed value with
// |g(u1,v1) - g(u2,v2)| <= L (|u1-u2| + |v1-v2|)
struct NeuralActivation {
  std::function<double(double, double)> g;
  double lipschitz = 1.0;
  std::string name;
};

NeuralActivation tanh_pair_activation();     // (tanh u + tanh v)/2, L = 1/2
NeuralActivation tanh_delayed_activation();  // tanh v, L = 1
NeuralActivation linear_delayed_activation();  // v, L = 1

// Dirichlet second-difference discretization of the reaction-diffusion
// network on (0,1): n_neurons fields on mesh_points interior nodes, linear
// part A - B, delayed coupling T g_j, periodic inputs J_i(t) sin(pi x).
struct NeuralDemo {
  DelaySystemSpec spec;
  SectorialParams params;  // artifact estimate for the discrete system
  bool symmetric = false;
  bool estimate_based = true;
  double gershgorin_lower = 0.0;  // fallback bound on the symmetric part
  int n_neurons = 0;
  int mesh_points = 0;
  double mesh_h = 0.0;
};

NeuralDemo neural_demo_build(int n_neurons, int mesh_points,
                             const std::vector<double>& diffusion,
                             const std::vector<std::vector<double>>& b,
                             const std::vector<std::vector<double>>& T,
                             const NeuralActivation& g,
                             const std::vector<std::vector<double>>& delays,
                             const std::vector<ScalarFn>& J);

}  // namespace decaycert
