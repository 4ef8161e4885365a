#pragma once

#include <string>

namespace regraph {

/// Lower branch of the Lambert W function on [-1/e, 0): the solution
/// w <= -1 of w*e^w = x. Newton iteration with a bisection fallback;
/// residual |w e^w - x| <= 1e-12.
double lambert_w_lower(double x);

/// The d-out threshold family. f1 is the minimum-out-degree fraction, f2 the
/// piecewise admissible bound, f a fixed concrete choice strictly below f2
/// (continuous, strictly increasing, f(1) = 0), and g = f/2 its
/// matching-union counterpart.
class ThresholdFunctions {
 public:
  explicit ThresholdFunctions(double eps0 = 0.1, double safety = 1.0 - 1e-3);

  double eps0() const { return eps0_; }
  double safety() const { return safety_; }

  double f1(double x) const;
  double f2(double x) const;
  double f(double x) const;
  double g(double x) const { return f(x) / 2.0; }

  /// Dispatch by name: "f1", "f2", "f", "g", "lambertW-".
  double eval(const std::string& which, double x) const;

 private:
  double eps0_;
  double safety_;
  // f2 jumps upward at the seam x = 2.1; f bridges linearly over
  // (seam, seam + bridge width) to stay continuous and strictly increasing
  // while remaining below f2 on both sides of the seam.
  double seam_ = 2.1;
  double bridge_ = 0.05;
  double y_left_;   // f just left of the seam
  double y_right_;  // f at seam + bridge
};

}  // namespace regraph
