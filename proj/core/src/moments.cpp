#include "regraph/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace regraph {

MomentPrediction predicted_moments(Vertex n, std::uint32_t d) {
  if (d < 3) throw std::invalid_argument("predicted_moments: d >= 3 required");
  MomentPrediction p;
  double dd = d;
  p.ex = (dd - 1) * (dd - 1) / 4.0;
  p.var_x = p.ex;
  p.ew = (dd - 1) * (dd - 1) * (dd - 1) / 6.0;
  p.var_w = p.ew;
  p.cov_xw = 0.0;
  p.cov_xy_ratio = 1.0 / (dd * dd) + 2.0 / (dd * dd * dd);
  p.cov_wy_ratio = -1.0 / (dd * dd * dd);
  // E Y = sqrt(2) (d-1)^{(d-1)n/2} d^{n - dn/2} exp(1/2), in logs.
  double nn = n;
  p.ey_log = 0.5 * std::log(2.0) + (dd - 1.0) * nn / 2.0 * std::log(dd - 1.0) +
             (nn - dd * nn / 2.0) * std::log(dd) + 0.5;
  p.ratio_conc2 = 1.0 + 1.0 / (4.0 * dd * dd) + 2.0 / (3.0 * dd * dd * dd);
  p.ratio_conc1 = 1.0 + 1.0 / (6.0 * dd * dd * dd);
  p.a_over_ey = p.cov_xy_ratio;
  p.b_over_ey = p.cov_wy_ratio;
  p.c_over_ey = 1.0 - p.a_over_ey * p.ex - p.b_over_ey * p.ew;
  p.remainder_arg_moments = dd * dd * dd / nn;
  p.remainder_arg_covxw = std::pow(dd, 6) / nn;
  return p;
}

double low_degree_exponent(double alpha, double beta) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("low_degree_exponent: alpha, beta > 0 required");
  return 1.0 - alpha + beta * std::log(std::exp(1.0) * alpha / beta);
}

}  // namespace regraph
