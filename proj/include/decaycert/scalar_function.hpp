#pragma once

#include <functional>
#include <string>
#include <vector>

#include "decaycert/quadrature.hpp"

namespace decaycert {

// A named scalar function of time. Registry functions carry a closed-form
// antiderivative (anchored at F(0) = 0) so coefficient integrals of the
// form exp(-int_s^t a) can be evaluated exactly; custom callables fall back
// to quadrature.
class ScalarFn {
 public:
  enum class Kind {
    zero,
    constant,
    sine_plus_offset,  // amplitude*sin(omega*t + phase) + offset
    abs_sine,          // amplitude*|sin(omega*t + phase)|
    piecewise_linear,
    custom,
  };

  ScalarFn();  // zero function

  double operator()(double t) const { return f_(t); }

  // F(t) - F(s); exact for registry kinds, Simpson quadrature otherwise.
  double integral(double s, double t, const QuadratureConfig& cfg) const;

  bool has_antiderivative() const { return kind_ != Kind::custom || static_cast<bool>(antiderivative_); }

  // The function t -> f(t + tau); stays inside the registry family.
  ScalarFn shifted(double tau) const;

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant || kind_ == Kind::zero; }
  double constant_value() const;
  const std::string& label() const { return label_; }

  static ScalarFn zero();
  static ScalarFn constant(double c);
  static ScalarFn sine_plus_offset(double amplitude, double omega,
                                   double offset, double phase = 0.0);
  static ScalarFn abs_sine(double amplitude, double omega, double phase = 0.0);
  static ScalarFn piecewise_linear(std::vector<double> knots,
                                   std::vector<double> values);
  static ScalarFn custom(std::function<double(double)> f, std::string label,
                         std::function<double(double)> antiderivative = {});

 private:
  std::function<double(double)> f_;
  std::function<double(double)> antiderivative_;  // F with F(0)=0, may be empty
  Kind kind_ = Kind::zero;
  std::vector<double> params_;
  std::string label_ = "zero";
};

}  // namespace decaycert
