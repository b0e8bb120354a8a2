#include <doctest.h>

#include <cmath>

#include "decaycert/oracle.hpp"
#include "decaycert/systems.hpp"

using namespace decaycert;

namespace {
const double kPi = std::acos(-1.0);
const QuadratureConfig kCfg;

ScalarFDE constant_fde(double a, double b, double lag) {
  ScalarFDE sys;
  sys.a = ScalarFn::constant(a);
  sys.b = ScalarFn::constant(b);
  sys.lag = lag;
  sys.r = lag;
  return sys;
}
}  // namespace

TEST_CASE("constant-coefficient scalar equation certifies exponentially") {
  const auto cert = scalar_fde_certificate(constant_fde(3.0, 1.0, 1.0),
                                           {0.0, 1.0, 2.0}, 15.0, kCfg);
  for (const auto& row : cert.rows) {
    CHECK(row.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(row.theta == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(cert.verdict == Verdict::geas);
}

TEST_CASE("zero gain certifies trivially") {
  const auto cert =
      scalar_fde_certificate(constant_fde(1.0, 0.0, 1.0), {0.0}, 40.0, kCfg);
  CHECK(cert.kappa_max == 0.0);
  CHECK(cert.verdict == Verdict::geas);
}

TEST_CASE("the boundary case a = b = 1 stays uncertified") {
  // kappa_tau = sup_t (1 - e^{-(t-tau)}) = 1: the certificate must not issue
  const auto cert =
      scalar_fde_certificate(constant_fde(1.0, 1.0, 1.0), {0.0}, 40.0, kCfg);
  CHECK(cert.kappa_max >= 1.0);
  CHECK(cert.verdict == Verdict::uncertified);
}

TEST_CASE("periodic report for sin t + 1/2") {
  const auto a = ScalarFn::sine_plus_offset(1.0, 1.0, 0.5);
  const auto rep = periodic_certificate(a, 2.0 * kPi, 0.002, kCfg);

  const double i_minus = std::sqrt(3.0) - kPi / 3.0;
  CHECK(rep.I == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(rep.I_minus == doctest::Approx(i_minus).epsilon(1e-9));
  CHECK(rep.I_plus == doctest::Approx(kPi + i_minus).epsilon(1e-9));
  CHECK(rep.Lambda == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.theta_bound == doctest::Approx(std::exp(i_minus)).epsilon(1e-9));
  CHECK(rep.beta1 ==
        doctest::Approx(0.5 * std::exp(-(kPi + i_minus))).epsilon(1e-9));
  CHECK(rep.beta2 ==
        doctest::Approx(rep.beta1 / (1.0 + std::exp(i_minus))).epsilon(1e-9));
  CHECK(rep.beta2 < rep.beta1);
  CHECK(rep.bound_dominates_exact);
  CHECK(rep.kappa_bound >= rep.exact_kappa_tau_max);
  CHECK(rep.theta_bound >= rep.exact_theta_tau_max - 1e-9);
}

TEST_CASE("coarse family thresholds sit below the exact-quadrature ones") {
  const auto a = ScalarFn::sine_plus_offset(1.0, 1.0, 0.5);
  const auto rep = periodic_certificate(a, 2.0 * kPi, 0.002, kCfg);
  const auto coarse = sine_example_coarse_thresholds(0.5);
  CHECK(coarse.gas ==
        doctest::Approx(0.5 * std::exp(-(2.0 + kPi))).epsilon(1e-12));
  CHECK(coarse.gas <= rep.beta1);
  CHECK(coarse.geas <= rep.beta2);
}

TEST_CASE("constant coefficient periodic report") {
  const auto rep =
      periodic_certificate(ScalarFn::constant(1.0), 2.0, 0.05, kCfg);
  CHECK(rep.I == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.I_minus == doctest::Approx(0.0));
  CHECK(rep.I_plus == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.beta1 == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK(rep.beta2 == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("periodic report rejects nonpositive mean") {
  CHECK_THROWS_WITH_AS(
      static_cast<void>(periodic_certificate(
          ScalarFn::sine_plus_offset(1.0, 1.0, 0.0), 2.0 * kPi, 0.1, kCfg)),
      doctest::Contains("systems.NonPositiveMeanCoefficient"), error);
}

TEST_CASE("kappa_tau is periodic in the initial time") {
  ScalarFDE sys;
  sys.a = ScalarFn::sine_plus_offset(1.0, 1.0, 0.7);
  sys.b = ScalarFn::constant(0.05);
  const double omega = 2.0 * kPi;
  for (double tau : {0.0, 1.3}) {
    const double k0 =
        kappa_sup(fde_gain_kernel(sys, tau), std::nullopt, 10.0 * omega, kCfg)
            .raw;
    const double k1 = kappa_sup(fde_gain_kernel(sys, tau + omega), std::nullopt,
                                10.0 * omega, kCfg)
                          .raw;
    CHECK(k0 == doctest::Approx(k1).epsilon(1e-7));
  }
}

TEST_CASE("dissipation exponent closed forms") {
  SuperlinearSystem sys;
  sys.alpha = {1.0, 0.1};
  sys.p = 3.0;
  sys.q = 1.0;
  CHECK(superlinear_certificate(sys).gamma_exp == doctest::Approx(1.0));
  sys.q = 2.0;
  CHECK(superlinear_certificate(sys).gamma_exp == doctest::Approx(4.0));
}

TEST_CASE("cubic scalar system constants and feasibility") {
  // x' = -x^3 + 0.1 x(t-1): p=3, q=1, alpha0=1, alpha1=0.1, beta = 0
  SuperlinearSystem sys;
  sys.p = 3.0;
  sys.q = 1.0;
  sys.alpha = {1.0, 0.1};
  sys.beta = {ScalarFn::zero(), ScalarFn::zero()};
  sys.M = 0.0;
  sys.N = 0.0;
  const auto cert = superlinear_certificate(sys);
  CHECK(cert.gamma_exp == doctest::Approx(1.0));
  CHECK(cert.c0 == doctest::Approx(2.0));
  CHECK(cert.c1 == doctest::Approx(1.0));
  CHECK(cert.c2 == doctest::Approx(0.0));
  CHECK(cert.theta == doctest::Approx(1.0));
  CHECK(cert.kappa0 == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(cert.dissipative);
  // feasibility region: eps*0.2 < 1/2, eps*2*0.1 < 1, eps < 1, eps*0.1 < 1
  CHECK(cert.eps_star > 0.0);
  CHECK(cert.eps_star < 1.0);
  CHECK(cert.eps_star * cert.kappa0 < 1.0 / (1.0 + cert.theta));
  CHECK(cert.eps_star * (cert.gamma_exp + 1.0) * (cert.alpha_sum + sys.M) <
        cert.c0 / 2.0);
}

TEST_CASE("forcing bound verification accepts |sin| with (M,N) = (1,1)") {
  SuperlinearSystem sys;
  sys.p = 3.0;
  sys.q = 1.0;
  sys.alpha = {0.5, 0.1};
  sys.beta = {ScalarFn::abs_sine(1.0, 1.0), ScalarFn::zero()};
  sys.M = 1.0;
  sys.N = 1.0;
  CHECK_NOTHROW(verify_forcing_bound(sys, 50.0, kCfg));
  sys.M = 0.1;
  sys.N = 0.1;
  CHECK_THROWS_WITH_AS(verify_forcing_bound(sys, 50.0, kCfg),
                       doctest::Contains("systems.ForcingBoundViolated"),
                       error);
}

TEST_CASE("rhs builders evaluate the stated right-hand sides") {
  const auto lin = build_rhs(LinearLag{3.0, 1.0, 1.0});
  CHECK(lin.rhs(0.0, {2.0}, {{0.5}})[0] == doctest::Approx(-6.0 + 0.5));

  ScalarFDE fde;
  fde.a = ScalarFn::sine_plus_offset(1.0, 1.0, 0.5);
  fde.b = ScalarFn::constant(0.25);
  fde.lag = 1.0;
  fde.r = 1.0;
  const auto sf = build_rhs(fde);
  const double t = 0.7;
  CHECK(sf.rhs(t, {2.0}, {{0.5}})[0] ==
        doctest::Approx(-(std::sin(t) + 0.5) * 2.0 + 0.25 * 0.5));

  SuperlinearSystem cubic;
  cubic.dim = 1;
  cubic.p = 3.0;
  cubic.q = 1.0;
  cubic.alpha = {1.0, 0.1};
  cubic.max_lag = 1.0;
  cubic.delays = {1.0};
  cubic.F0 = [](double, const Vec& x) { return Vec{-x[0] * x[0] * x[0]}; };
  cubic.Fi = {[](double, const Vec& xd) { return Vec{0.1 * xd[0]}; }};
  const auto sl = build_rhs(cubic);
  CHECK(sl.rhs(0.0, {2.0}, {{1.0}})[0] == doctest::Approx(-8.0 + 0.1));
}

TEST_CASE("sampled-supremum functional respects the gain bound") {
  ScalarFDE sys;
  sys.a = ScalarFn::constant(2.0);
  sys.b = ScalarFn::constant(0.5);
  sys.r = 1.0;
  sys.functional = ScalarFDE::Functional::sampled_supremum;
  sys.sup_offsets = {0.25, 0.5, 1.0};
  const auto spec = build_rhs(sys);
  REQUIRE(spec.delays.size() == 3);
  const double v = spec.rhs(0.0, {1.0}, {{-0.2}, {0.7}, {0.3}})[0];
  // B = b * max(|xd|) = 0.5 * 0.7
  CHECK(v == doctest::Approx(-2.0 + 0.35));
}

TEST_CASE("instability witness for gain above the decay rate") {
  // x' = -x + 2 x(t-1): a positive root certifies instability of 0
  CHECK(characteristic_root(1.0, 2.0, 1.0) > 0.0);
}
