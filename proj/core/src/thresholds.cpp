#include "regraph/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regraph {

double lambert_w_lower(double x) {
  constexpr double kInvE = 0.36787944117144233;  // 1/e
  if (x < -kInvE - 1e-15 || x >= 0.0)
    throw std::invalid_argument("lambert_w_lower: argument outside [-1/e, 0)");
  if (x <= -kInvE) return -1.0;

  auto residual = [&](double w) { return w * std::exp(w) - x; };
  // Bracket: W_-1 <= -1; for x -> 0- the branch behaves like log(-x).
  double lo = std::min(-1.0, std::log(-x) - std::log(-std::log(-x)) - 2.0);
  while (residual(lo) < 0.0) lo *= 2.0;  // residual(w) > 0 for w below the root
  double hi = -1.0;
  double w = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double r = residual(w);
    if (std::abs(r) <= 1e-13) break;
    if (r > 0.0)
      lo = w;
    else
      hi = w;
    // Newton step on w e^w - x, guarded by the bracket.
    double deriv = std::exp(w) * (1.0 + w);
    double next = (deriv != 0.0) ? w - r / deriv : w;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    w = next;
  }
  return w;
}

namespace {

double f1_impl(double x) {
  if (x < 1.0) throw std::invalid_argument("f1: x >= 1 required");
  if (x == 1.0) return 0.0;  // limit value
  double arg = -(x - 1.0) / (x * std::exp(1.0));
  return -((x - 1.0) / x) / lambert_w_lower(arg);
}

}  // namespace

ThresholdFunctions::ThresholdFunctions(double eps0, double safety)
    : eps0_(eps0), safety_(safety) {
  if (!(eps0 > 0.0) || !(eps0 < 1.0))
    throw std::invalid_argument("ThresholdFunctions: eps0 in (0,1) required");
  if (!(safety > 0.0) || !(safety < 1.0))
    throw std::invalid_argument("ThresholdFunctions: safety in (0,1) required");
  double clip = safety_ * f1_impl(seam_) / 2.0;
  y_left_ = std::min(safety_ * f2(seam_), clip);
  y_right_ = safety_ * f1_impl(seam_ + bridge_) / 2.0;
}

double ThresholdFunctions::f1(double x) const { return f1_impl(x); }

double ThresholdFunctions::f2(double x) const {
  if (x < 1.0) throw std::invalid_argument("f2: x >= 1 required");
  if (x <= seam_) {
    double e2 = eps0_ * eps0_ / (1.1 * 1.1);
    return e2 * (x - 1.0) * (x - 1.0) / x;
  }
  return f1_impl(x) / 2.0;
}

double ThresholdFunctions::f(double x) const {
  if (x < 1.0) throw std::invalid_argument("f: x >= 1 required");
  double clip = safety_ * f1_impl(seam_) / 2.0;
  if (x <= seam_) return std::min(safety_ * f2(x), clip);
  if (x < seam_ + bridge_) {
    double t = (x - seam_) / bridge_;
    return y_left_ + t * (y_right_ - y_left_);
  }
  return safety_ * f1_impl(x) / 2.0;
}

double ThresholdFunctions::eval(const std::string& which, double x) const {
  if (which == "f1") return f1(x);
  if (which == "f2") return f2(x);
  if (which == "f") return f(x);
  if (which == "g") return g(x);
  if (which == "lambertW-") return lambert_w_lower(x);
  throw std::invalid_argument("ThresholdFunctions::eval: unknown function " + which);
}

}  // namespace regraph
