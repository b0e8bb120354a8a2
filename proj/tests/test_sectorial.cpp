#include <doctest.h>

#include <cmath>

#include "decaycert/dde.hpp"
#include "decaycert/sectorial.hpp"

using namespace decaycert;

namespace {
const double kPi = std::acos(-1.0);
const QuadratureConfig kCfg;
}  // namespace

TEST_CASE("kappa0 closed forms") {
  CHECK(kappa0(0.0, 1.0, Kappa0Variant::full, kCfg) ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK(kappa0(0.5, 1.0, Kappa0Variant::full, kCfg) ==
        doctest::Approx(std::sqrt(kPi) + 1.0).epsilon(1e-7));
  CHECK(kappa0(0.5, 1.0, Kappa0Variant::stable, kCfg) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-7));
  // general gamma-function oracle
  for (double alpha : {0.25, 0.75})
    for (double beta : {0.5, 2.0})
      CHECK(kappa0(alpha, beta, Kappa0Variant::stable, kCfg) ==
            doctest::Approx(std::tgamma(1.0 - alpha) *
                            std::pow(beta, alpha - 1.0))
                .epsilon(1e-6));
}

TEST_CASE("kappa0 monotonicity in the parameters") {
  double prev_beta = 1e18;
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    const double v = kappa0(0.3, beta, Kappa0Variant::full, kCfg);
    CHECK(v < prev_beta);
    prev_beta = v;
  }
  double prev_alpha = 0.0;
  for (double alpha : {0.0, 0.3, 0.6, 0.9}) {
    const double v = kappa0(alpha, 0.5, Kappa0Variant::stable, kCfg);
    CHECK(v > prev_alpha);
    prev_alpha = v;
  }
}

TEST_CASE("threshold verdicts") {
  // stable variant at alpha=0, beta=1: kappa0 = 1
  SectorialParams p;
  p.alpha = 0.0;
  p.beta = 1.0;
  p.M_sect = 1.0;
  p.L = 0.4;
  const auto v = sectorial_thresholds(p, Kappa0Variant::stable, kCfg);
  CHECK(v.kappa0 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(v.equilibrium_exists);  // 0.4 < 1
  CHECK(v.gas);
  CHECK(v.geas);  // 0.4 < 1/2
}

TEST_CASE("zero Lipschitz constant passes every threshold") {
  SectorialParams p;
  p.alpha = 0.3;
  p.beta = 2.0;
  p.M_sect = 1.5;
  p.L = 0.0;
  p.C0 = 0.0;
  p.C1 = 1.0;
  const auto v = sectorial_thresholds(p, Kappa0Variant::stable, kCfg);
  CHECK(v.equilibrium_exists);
  CHECK(v.gas);
  CHECK(v.geas);
  REQUIRE(v.rho_eq.has_value());
  const double weight = 1.0 / p.beta + std::tgamma(1.0 - p.alpha) *
                                           std::pow(p.beta, p.alpha - 1.0);
  CHECK(*v.rho_eq == doctest::Approx(p.C1 * p.M_sect * weight).epsilon(1e-6));
}

TEST_CASE("threshold failure for a large Lipschitz constant") {
  // full variant, alpha=0.5, beta=1: kappa0 ~ 2.772, M=2: 1/(kappa0 M) ~ 0.18
  SectorialParams p;
  p.alpha = 0.5;
  p.beta = 1.0;
  p.M_sect = 2.0;
  p.L = 0.2;
  const auto v = sectorial_thresholds(p, Kappa0Variant::full, kCfg);
  CHECK_FALSE(v.equilibrium_exists);
  CHECK_FALSE(v.gas);
  CHECK_FALSE(v.geas);
}

TEST_CASE("threshold nesting on a parameter grid") {
  for (double alpha : {0.0, 0.4})
    for (double beta : {0.5, 2.0})
      for (double M : {1.0, 2.0, 5.0})
        for (double L : {0.0, 0.05, 0.2, 0.8}) {
          SectorialParams p;
          p.alpha = alpha;
          p.beta = beta;
          p.M_sect = M;
          p.L = L;
          const auto v = sectorial_thresholds(p, Kappa0Variant::stable, kCfg);
          if (v.geas) CHECK(v.gas);
          if (v.gas) CHECK(v.equilibrium_exists);
        }
}

TEST_CASE("rho_eq is absent when the denominator closes") {
  SectorialParams p;
  p.alpha = 0.0;
  p.beta = 1.0;
  p.M_sect = 1.0;
  p.L = 0.4;
  p.C0 = 2.0;  // kappa0*C0*M = 2 >= 1
  p.C1 = 1.0;
  const auto v = sectorial_thresholds(p, Kappa0Variant::stable, kCfg);
  CHECK_FALSE(v.rho_eq.has_value());
}

TEST_CASE("network Lipschitz constant closed forms") {
  CHECK(neural_lipschitz({{0.2}}, {1.0}) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(neural_lipschitz({{0.0, 0.0}, {0.0, 0.0}}, {1.0, 1.0}) == 0.0);
  CHECK(neural_lipschitz({{0.0, 1.0}, {1.0, 0.0}}, {1.0, 1.0}) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(static_cast<void>(neural_lipschitz({{1.0}}, {1.0, 2.0})),
                       doctest::Contains("sectorial.DimensionMismatch"), error);
}

TEST_CASE("discrete diffusion eigenvalue matches the closed form") {
  // Dirichlet second differences on (0,1), 9 interior points, h = 0.1:
  // lambda_min = (2/h^2)(1 - cos(pi h))
  const auto demo = neural_demo_build(
      1, 9, {1.0}, {{0.0}}, {{0.0}}, tanh_pair_activation(), {{1.0}},
      {ScalarFn::zero()});
  const double h = 0.1;
  const double expected = 2.0 / (h * h) * (1.0 - std::cos(kPi * h));
  CHECK(demo.mesh_h == doctest::Approx(h).epsilon(1e-15));
  CHECK(demo.params.beta == doctest::Approx(expected).epsilon(1e-10));
  CHECK(demo.params.beta == doctest::Approx(9.7887).epsilon(1e-4));
  CHECK(demo.symmetric);
  CHECK(demo.params.M_sect == 1.0);
  CHECK(demo.params.L == 0.0);
}

TEST_CASE("pure diffusion demo decays to zero") {
  const auto demo = neural_demo_build(
      1, 3, {1.0}, {{0.0}}, {{0.0}}, tanh_pair_activation(), {{0.5}},
      {ScalarFn::zero()});
  const auto traj = integrate(demo.spec, History::constant(Vec(3, 1.0)), 0.0,
                              2.0, 0.005);
  CHECK(traj.eval_norm(2.0) < 1e-6);
}

TEST_CASE("unstable linear part is rejected") {
  // a strong positive self-coupling overwhelms the diffusion gap
  CHECK_THROWS_WITH_AS(
      static_cast<void>(neural_demo_build(1, 3, {1.0}, {{100.0}}, {{0.0}},
                                          tanh_pair_activation(), {{0.5}},
                                          {ScalarFn::zero()})),
      doctest::Contains("sectorial.UnstableLinearPart"), error);
}

TEST_CASE("asymmetric coupling is flagged and keeps a valid bound") {
  const auto demo = neural_demo_build(
      2, 3, {1.0, 1.0}, {{0.0, 0.5}, {-0.5, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}},
      tanh_pair_activation(), {{0.5, 0.5}, {0.5, 0.5}},
      {ScalarFn::zero(), ScalarFn::zero()});
  CHECK_FALSE(demo.symmetric);
  CHECK(demo.params.beta > 0.0);
  CHECK(demo.gershgorin_lower <= demo.params.beta);
}

TEST_CASE("two-neuron demo with periodic input settles on a periodic orbit") {
  const auto demo = neural_demo_build(
      2, 3, {1.0, 1.0}, {{0.0, 0.0}, {0.0, 0.0}},
      {{0.2, 0.1}, {0.1, 0.2}}, tanh_pair_activation(),
      {{0.5, 1.0}, {1.0, 0.5}},
      {ScalarFn::sine_plus_offset(1.0, 1.0, 0.0),
       ScalarFn::sine_plus_offset(1.0, 1.0, 0.5)});
  const auto verdict = sectorial_thresholds(demo.params, Kappa0Variant::stable, kCfg);
  CHECK(verdict.equilibrium_exists);
  CHECK(verdict.geas);

  const int dim = demo.spec.dim;
  const auto t1 =
      integrate(demo.spec, History::constant(Vec(dim, 0.5)), 0.0, 10.0 * kPi, 0.005);
  const auto t2 =
      integrate(demo.spec, History::constant(Vec(dim, -0.4)), 0.0, 10.0 * kPi, 0.005);
  double pair_gap = 0.0, periodic_gap = 0.0;
  for (double t = 6.0 * kPi; t + 2.0 * kPi <= 10.0 * kPi; t += 0.05) {
    const Vec a = t1.eval(t), b = t2.eval(t), c = t1.eval(t + 2.0 * kPi);
    double g1 = 0.0, g2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      g1 += (a[j] - b[j]) * (a[j] - b[j]);
      g2 += (a[j] - c[j]) * (a[j] - c[j]);
    }
    pair_gap = std::max(pair_gap, std::sqrt(g1));
    periodic_gap = std::max(periodic_gap, std::sqrt(g2));
  }
  CHECK(pair_gap < 1e-4);
  CHECK(periodic_gap < 1e-4);
}
