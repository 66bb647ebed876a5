#pragma once

// Smooth compactly supported weight functions used by the summation
// formulas, with analytic derivatives (needed for Mellin continuation
// diagnostics and decay studies).

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace heckelab {

struct TestFunction {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::string smoothness = "C_inf";

  double operator()(double x) const {
    if (x <= lo || x >= hi) {
      // closed left endpoint only when the function starts there
      if (x == lo && lo == 0.0) return f(x);
      return 0.0;
    }
    return f(x);
  }
  double deriv(double x) const {
    if (x <= lo || x >= hi) {
      if (x == lo && lo == 0.0) return df(x);
      return 0.0;
    }
    return df(x);
  }
  double at_zero() const { return (*this)(0.0); }
};

// exp(-1/((x-a)(b-x))) on (a, b).
inline TestFunction bump_window(double a, double b, const std::string& name) {
  TestFunction t;
  t.name = name;
  t.lo = a;
  t.hi = b;
  t.f = [a, b](double x) {
    double p = (x - a) * (b - x);
    return std::exp(-1.0 / p);
  };
  t.df = [a, b](double x) {
    double p = (x - a) * (b - x);
    double dp = a + b - 2.0 * x;
    return std::exp(-1.0 / p) * dp / (p * p);
  };
  return t;
}

// The standard weight with support [1/2, 5/2].
inline TestFunction standard_bump() { return bump_window(0.5, 2.5, "bump_w"); }

// Plateau with h(0) = 1/e: exp(-1/(1 - (x/2)^2)) on [0, 2).
inline TestFunction plateau() {
  TestFunction t;
  t.name = "plateau";
  t.lo = 0.0;
  t.hi = 2.0;
  t.f = [](double x) {
    double u = 1.0 - 0.25 * x * x;
    return std::exp(-1.0 / u);
  };
  t.df = [](double x) {
    double u = 1.0 - 0.25 * x * x;
    return std::exp(-1.0 / u) * (-0.5 * x) / (u * u);
  };
  return t;
}

// Gaussian shape clipped by a window, support [1, 3].
inline TestFunction gauss_bump() {
  TestFunction t;
  t.name = "gauss_bump";
  t.lo = 1.0;
  t.hi = 3.0;
  t.f = [](double x) {
    double p = (x - 1.0) * (3.0 - x);
    return std::exp(-4.0 * (x - 2.0) * (x - 2.0) - 1.0 / p);
  };
  t.df = [](double x) {
    double p = (x - 1.0) * (3.0 - x);
    double dp = 4.0 - 2.0 * x;
    return std::exp(-4.0 * (x - 2.0) * (x - 2.0) - 1.0 / p) *
           (-8.0 * (x - 2.0) + dp / (p * p));
  };
  return t;
}

inline std::vector<TestFunction> library_test_functions() {
  return {standard_bump(), plateau(), gauss_bump()};
}

}  // namespace heckelab
