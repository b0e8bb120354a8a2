#include <doctest.h>

#include <cmath>

#include "decaycert/kernels.hpp"

using namespace decaycert;

namespace {
const double kPi = std::acos(-1.0);
const QuadratureConfig kCfg;
}  // namespace

TEST_CASE("theta of scaled exponential kernels is the scale") {
  CHECK(theta_sup(Kernel2::exponential_scaled(1.0, 2.0), 10.0, kCfg).value ==
        1.0);
  CHECK(theta_sup(Kernel2::exponential_scaled(3.0, 1.0), 10.0, kCfg).value ==
        3.0);
}

TEST_CASE("theta of the sine coefficient kernel is bounded by exp(I-)") {
  // coefficient sin t + 0.5; the worst window is where the coefficient is
  // negative, giving exp(I-) with I- = sqrt(3) - pi/3 exactly
  const auto E = Kernel2::coefficient_integral(
      ScalarFn::sine_plus_offset(1.0, 1.0, 0.5));
  const auto est = theta_sup(E, 4.0 * kPi, kCfg);
  const double bound = std::exp(std::sqrt(3.0) - kPi / 3.0);
  CHECK(est.raw <= bound * (1.0 + 1e-9));
  CHECK(est.raw == doctest::Approx(bound).epsilon(1e-6));
}

TEST_CASE("theta flags a horizon that cuts off a growing supremum") {
  const auto E = Kernel2::coefficient_integral(ScalarFn::constant(-1.0));
  CHECK_THROWS_WITH_AS(static_cast<void>(theta_sup(E, 5.0, kCfg)),
                       doctest::Contains("kernels.HorizonTooSmall"), error);
}

TEST_CASE("kappa of the exponential comparison family is the exact ratio") {
  // E = e^{-alpha(t-s)}, K1 = beta E: the supremum is beta/alpha
  const auto E = Kernel2::exponential_scaled(1.0, 2.0);
  const auto K1 = Kernel2::scaled_by(E, ScalarFn::constant(1.0));
  const auto est = kappa_sup(K1, std::nullopt, 20.0, kCfg);
  CHECK(est.value == 0.5);
  CHECK(est.pad == 0.0);
}

TEST_CASE("kappa doubles when the gain kernel doubles") {
  const auto E = Kernel2::coefficient_integral(
      ScalarFn::sine_plus_offset(1.0, 1.0, 1.2));
  const auto k1 = Kernel2::scaled_by(E, ScalarFn::constant(0.3));
  const auto k2 = Kernel2::scaled_by(E, ScalarFn::constant(0.6));
  const double v1 = kappa_sup(k1, std::nullopt, 40.0, kCfg).value;
  const double v2 = kappa_sup(k2, std::nullopt, 40.0, kCfg).value;
  CHECK(v2 == doctest::Approx(2.0 * v1).epsilon(1e-6));
}

TEST_CASE("kappa of a pure future exponential is scale/rate") {
  const auto K2 = Kernel2::future_exponential(2.0, 4.0);
  const auto est = kappa_sup(std::nullopt, K2, 10.0, kCfg);
  CHECK(est.value == 0.5);
}

TEST_CASE("kappa of empty kernels is zero") {
  const auto est = kappa_sup(std::nullopt, std::nullopt, 10.0, kCfg);
  CHECK(est.value == 0.0);
  CHECK(est.pad == 0.0);
}

TEST_CASE("kappa of a power-singular kernel approaches the gamma form") {
  const auto K1 = Kernel2::power_singular(1.0, 0.5, 1.0);
  const auto est = kappa_sup(K1, std::nullopt, 40.0, kCfg);
  CHECK(est.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-6));
}

TEST_CASE("future kernel with nonpositive rate has no integrable tail") {
  const auto K2 = Kernel2::future_exponential(1.0, -0.5);
  CHECK_THROWS_WITH_AS(
      static_cast<void>(kappa_sup(std::nullopt, K2, 10.0, kCfg)),
      doctest::Contains("kernels.DivergentTail"), error);
}

TEST_CASE("kappa estimates never drop under refinement beyond the pad") {
  const auto E = Kernel2::coefficient_integral(
      ScalarFn::sine_plus_offset(1.0, 1.0, 0.8));
  const auto k = Kernel2::scaled_by(E, ScalarFn::constant(0.4));
  QuadratureConfig coarse = kCfg;
  coarse.max_refinements = 2;
  QuadratureConfig fine = kCfg;
  const auto rough = kappa_sup(k, std::nullopt, 30.0, coarse);
  const auto sharp = kappa_sup(k, std::nullopt, 30.0, fine);
  CHECK(sharp.raw >= rough.raw - rough.pad - 1e-12);
}

TEST_CASE("decay majorant of a scaled exponential is exact and monotone") {
  const auto E = Kernel2::exponential_scaled(2.0, 1.0);
  const auto maj = decay_majorant(E, 8.0, 33, kCfg);
  for (std::size_t i = 0; i < maj.values.size(); ++i) {
    const double t = maj.dt * static_cast<double>(i);
    CHECK(maj.values[i] == doctest::Approx(2.0 * std::exp(-t)).epsilon(1e-12));
    if (i > 0) CHECK(maj.values[i] <= maj.values[i - 1]);
  }
  CHECK(maj.tail_bound == maj.values.back());
}

TEST_CASE("decay majorant of the sine coefficient obeys the rate bound") {
  const auto E = Kernel2::coefficient_integral(
      ScalarFn::sine_plus_offset(1.0, 1.0, 0.5));
  const auto maj = decay_majorant(E, 30.0, 257, kCfg);
  const double i_minus = std::sqrt(3.0) - kPi / 3.0;
  const double i_plus = kPi + i_minus;
  for (std::size_t i = 0; i < maj.values.size(); ++i) {
    const double t = maj.dt * static_cast<double>(i);
    CHECK(maj.values[i] <=
          std::exp(i_plus) * std::exp(-0.5 * t) * (1.0 + 1e-9));
  }
}

TEST_CASE("decay majorant rejects growing kernels") {
  const auto E = Kernel2::coefficient_integral(ScalarFn::constant(-1.0));
  CHECK_THROWS_WITH_AS(static_cast<void>(decay_majorant(E, 5.0, 33, kCfg)),
                       doctest::Contains("kernels.NoUniformDecay"), error);
}

TEST_CASE("tabulated kernels interpolate their grid and refuse extrapolation") {
  // tabulate e^{-(t-s)} on [0,4]x[0,4]
  const int nt = 33, ns = 33;
  std::vector<double> vals(nt * ns);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < ns; ++j) {
      const double t = 4.0 * i / (nt - 1), s = 4.0 * j / (ns - 1);
      vals[i * ns + j] = std::exp(-std::abs(t - s));
    }
  const auto K = Kernel2::tabulated(0.0, 4.0, 0.0, 4.0, nt, ns, vals);
  CHECK(K(4.0 * 8 / 32.0, 4.0 * 4 / 32.0) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(static_cast<void>(K(5.0, 0.0)),
                       doctest::Contains("kernels.TableRangeExceeded"), error);

  const auto est = theta_sup(K, 4.0, kCfg);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("negative gains violate the nonnegativity invariant") {
  const auto K = Kernel2::scaled_by(Kernel2::exponential_scaled(1.0, 1.0),
                                    ScalarFn::constant(-0.5));
  CHECK_THROWS_WITH_AS(static_cast<void>(K(1.0, 0.0)),
                       doctest::Contains("kernels.NegativeValue"), error);
}

TEST_CASE("translation identity for scaled exponential kernels") {
  const auto E = Kernel2::exponential_scaled(1.5, 0.7);
  const auto Et = E.translated(3.2);
  for (double t : {0.0, 1.0, 2.5})
    for (double s : {0.0, 0.5, 1.0})
      if (t >= s) CHECK(E(t, s) == Et(t, s));
}

TEST_CASE("translated coefficient kernels match the shifted integral") {
  const auto a = ScalarFn::sine_plus_offset(1.0, 1.0, 0.5);
  const auto E = Kernel2::coefficient_integral(a);
  const auto Et = E.translated(2.0);
  CHECK(Et(3.0, 1.0) == doctest::Approx(E(5.0, 3.0)).epsilon(1e-12));
}
