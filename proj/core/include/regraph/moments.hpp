#pragma once

#include <cstdint>

#include "regraph/multigraph.hpp"

namespace regraph {

/// Main terms of the moment formulas for the loopless configuration model:
/// X = double edges, W = triangles, Y = perfect matchings. Remainders are
/// excluded; their arguments are returned as diagnostics. Y-scale
/// quantities are reported relative to EY (EY itself only in log scale),
/// since EY overflows doubles at desk n.
struct MomentPrediction {
  double ex = 0;         // E X = (d-1)^2/4
  double var_x = 0;      // Var X main term
  double ew = 0;         // E W = (d-1)^3/6
  double var_w = 0;      // Var W main term
  double cov_xw = 0;     // main term 0; remainder argument d^6/n
  double cov_xy_ratio = 0;  // Cov(X,Y)/(EX EY) = 1/d^2 + 2/d^3
  double cov_wy_ratio = 0;  // Cov(W,Y)/(EW EY) = -1/d^3
  double ey_log = 0;        // log E Y
  double ratio_conc2 = 0;   // E Y^2/(E Y)^2 = 1 + 1/(4d^2) + 2/(3d^3)
  double ratio_conc1 = 0;   // covering version: 1 + 1/(6d^3)
  // Projection Y* = aX + bW + c, reported relative to EY:
  double a_over_ey = 0;  // a/EY = cov_xy_ratio (Var X = EX at main order)
  double b_over_ey = 0;  // b/EY = cov_wy_ratio
  double c_over_ey = 0;  // 1 - a_over_ey*EX - b_over_ey*EW
  double remainder_arg_moments = 0;  // d^3/n
  double remainder_arg_covxw = 0;    // d^6/n
};

MomentPrediction predicted_moments(Vertex n, std::uint32_t d);

/// Exponent of the low-degree vertex count: for degree threshold ~ beta log n
/// in a (di)graph of density ~ alpha log n / n, the count is n^(theta+o(1))
/// with theta = 1 - alpha + beta log(e alpha / beta).
double low_degree_exponent(double alpha, double beta);

}  // namespace regraph
