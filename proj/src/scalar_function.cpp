#include "decaycert/scalar_function.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace decaycert {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// int_0^x |sin u| du, odd in x
double abs_sine_primitive(double x) {
  if (x < 0.0) return -abs_sine_primitive(-x);
  const double pi = std::acos(-1.0);
  const double k = std::floor(x / pi);
  return 2.0 * k + 1.0 - std::cos(x - k * pi);
}

}  // namespace

ScalarFn::ScalarFn() {
  f_ = [](double) { return 0.0; };
  antiderivative_ = [](double) { return 0.0; };
}

ScalarFn ScalarFn::zero() { return ScalarFn(); }

ScalarFn ScalarFn::constant(double c) {
  ScalarFn fn;
  fn.kind_ = Kind::constant;
  fn.params_ = {c};
  fn.label_ = "constant(" + fmt(c) + ")";
  fn.f_ = [c](double) { return c; };
  fn.antiderivative_ = [c](double t) { return c * t; };
  return fn;
}

ScalarFn ScalarFn::sine_plus_offset(double amplitude, double omega,
                                    double offset, double phase) {
  ScalarFn fn;
  fn.kind_ = Kind::sine_plus_offset;
  fn.params_ = {amplitude, omega, offset, phase};
  fn.label_ = "sine_plus_offset(" + fmt(amplitude) + "," + fmt(omega) + "," +
              fmt(offset) + "," + fmt(phase) + ")";
  fn.f_ = [=](double t) { return amplitude * std::sin(omega * t + phase) + offset; };
  fn.antiderivative_ = [=](double t) {
    return -amplitude / omega * (std::cos(omega * t + phase) - std::cos(phase)) +
           offset * t;
  };
  return fn;
}

ScalarFn ScalarFn::abs_sine(double amplitude, double omega, double phase) {
  ScalarFn fn;
  fn.kind_ = Kind::abs_sine;
  fn.params_ = {amplitude, omega, phase};
  fn.label_ = "abs_sine(" + fmt(amplitude) + "," + fmt(omega) + "," + fmt(phase) + ")";
  fn.f_ = [=](double t) { return amplitude * std::abs(std::sin(omega * t + phase)); };
  fn.antiderivative_ = [=](double t) {
    return amplitude / omega *
           (abs_sine_primitive(omega * t + phase) - abs_sine_primitive(phase));
  };
  return fn;
}

ScalarFn ScalarFn::piecewise_linear(std::vector<double> knots,
                                    std::vector<double> values) {
  if (knots.size() != values.size() || knots.size() < 2)
    throw error("scalar_function.BadTable", "need >= 2 matching knots/values");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1]))
      throw error("scalar_function.BadTable", "knots must increase");

  auto eval = [knots, values](double t) {
    if (t <= knots.front()) return values.front();
    if (t >= knots.back()) return values.back();
    std::size_t hi = 1;
    while (knots[hi] < t) ++hi;
    const double w = (t - knots[hi - 1]) / (knots[hi] - knots[hi - 1]);
    return values[hi - 1] * (1.0 - w) + values[hi] * w;
  };

  // cumulative trapezoid anchored at the first knot; constant extension
  std::vector<double> cum(knots.size(), 0.0);
  for (std::size_t i = 1; i < knots.size(); ++i)
    cum[i] = cum[i - 1] +
             0.5 * (values[i] + values[i - 1]) * (knots[i] - knots[i - 1]);
  auto primitive = [knots, values, cum, eval](double t) {
    if (t <= knots.front())
      return values.front() * (t - knots.front());
    if (t >= knots.back())
      return cum.back() + values.back() * (t - knots.back());
    std::size_t hi = 1;
    while (knots[hi] < t) ++hi;
    const double dt = t - knots[hi - 1];
    return cum[hi - 1] + values[hi - 1] * dt +
           0.5 * (eval(t) - values[hi - 1]) * dt;
  };

  ScalarFn fn;
  fn.kind_ = Kind::piecewise_linear;
  fn.label_ = "piecewise_linear(" + fmt(static_cast<double>(knots.size())) + " knots)";
  fn.params_ = knots;
  fn.params_.insert(fn.params_.end(), values.begin(), values.end());
  fn.f_ = eval;
  const double anchor = primitive(0.0);
  fn.antiderivative_ = [primitive, anchor](double t) { return primitive(t) - anchor; };
  return fn;
}

ScalarFn ScalarFn::custom(std::function<double(double)> f, std::string label,
                          std::function<double(double)> antiderivative) {
  ScalarFn fn;
  fn.kind_ = Kind::custom;
  fn.label_ = std::move(label);
  fn.f_ = std::move(f);
  fn.antiderivative_ = std::move(antiderivative);
  return fn;
}

double ScalarFn::constant_value() const {
  if (kind_ == Kind::zero) return 0.0;
  if (kind_ != Kind::constant)
    throw error("scalar_function.NotConstant", label_);
  return params_[0];
}

double ScalarFn::integral(double s, double t, const QuadratureConfig& cfg) const {
  if (antiderivative_) return antiderivative_(t) - antiderivative_(s);
  if (s == t) return 0.0;
  const double sign = t >= s ? 1.0 : -1.0;
  const auto& f = f_;
  return sign * integrate_simpson(f, std::min(s, t), std::max(s, t), cfg);
}

ScalarFn ScalarFn::shifted(double tau) const {
  if (tau == 0.0) return *this;
  switch (kind_) {
    case Kind::zero:
      return zero();
    case Kind::constant:
      return constant(params_[0]);
    case Kind::sine_plus_offset:
      return sine_plus_offset(params_[0], params_[1], params_[2],
                              params_[3] + params_[1] * tau);
    case Kind::abs_sine:
      return abs_sine(params_[0], params_[1], params_[2] + params_[1] * tau);
    case Kind::piecewise_linear: {
      const std::size_t n = params_.size() / 2;
      std::vector<double> knots(params_.begin(), params_.begin() + n);
      std::vector<double> values(params_.begin() + n, params_.end());
      for (auto& k : knots) k -= tau;
      return piecewise_linear(std::move(knots), std::move(values));
    }
    case Kind::custom: {
      auto base = f_;
      std::function<double(double)> shifted_primitive;
      if (antiderivative_) {
        auto F = antiderivative_;
        shifted_primitive = [F, tau](double t) { return F(t + tau) - F(tau); };
      }
      return custom([base, tau](double t) { return base(t + tau); },
                    label_ + "@+" + fmt(tau), shifted_primitive);
    }
  }
  throw error("scalar_function.BadKind", "unreachable");
}

}  // namespace decaycert
