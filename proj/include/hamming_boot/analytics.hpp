#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamming_boot/rational.hpp"

namespace hamming_boot {

/// Limiting spanning probability of the 2-d torus under p = a*n^(-1-1/k),
/// k = ceil(theta/2): 1 - exp(-2a^k/k!) for odd theta,
/// (1 - exp(-a^k/k!))^2 for even theta. Requires theta >= 3 (k > 1).
double spanning_limit_2d(int theta, double a);

/// Limiting spanning probability of the d=3, theta=3 torus under p = a*n^-2
/// (the closed form).
double spanning_limit_3d_theta3(double a);

/// The same limit evaluated through the disjoint decomposition of the good
/// event with independent Poisson counts; must agree with
/// spanning_limit_3d_theta3 to 1e-10 everywhere.
double good_probability_limit(double a);

/// Limiting Poisson means of the d=3 configuration counts under p = a*n^-2.
/// The *_axis entries are per single axis; enhanced_line is the total.
/// Identity: enhanced_line + 3*non_enhanced_line_axis == line.
struct PoissonMeans {
  double basic;
  double enhanced_basic;
  double line;
  double line_empty_axis;
  double non_enhanced_line_axis;
  double enhanced_line;
};
PoissonMeans poisson_means(double a);

/// Polynomial decay exponent of the 2-d spanning probability: with
/// p ~ n^(-alpha) the 2-d torus spans with probability at least C*n^(-beta).
/// Zero for alpha <= 1 + 1/k; piecewise linear and increasing beyond, with
/// breakpoints where floor(alpha/(alpha-1)) jumps. Exact rational.
/// Requires theta >= 3 and alpha > 1.
Rational spanning_decay_exponent_2d(int theta, const Rational& alpha);

/// Largest alpha such that beta-composed dimension reduction certifies
/// spanning with high probability for p ~ n^(-alpha'): two dimensions are
/// consumed per 2-d reduction step, finishing with the 1-d rule
/// (exponent < 1) for odd d or the 2-d rule (exponent < 1 + 1/k) for even d.
/// theta = 2 falls back to 1 + d/theta. Exact rational.
Rational lower_exponent(int d, int theta);

enum class UpperBoundSource { LineThreshold, PlaneObstructionOdd, PlaneObstructionEven };
const char* upper_bound_source_name(UpperBoundSource source);

/// Smallest known alpha above which spanning fails with high probability:
/// the line threshold 1 + d/theta, improved for d = 3 and theta >= 4 by the
/// plane obstruction bound 1 + 8/(3 theta - 1) (odd) or 1 + 8/(3 theta - 2)
/// (even). Exact rational plus the source of the winning bound.
struct UpperBound {
  Rational value;
  UpperBoundSource source;
};
UpperBound upper_exponent(int d, int theta);

/// Critical-exponent bounds for the appearance of open planes at large
/// theta: exponents 1 + 2/theta + (4d^2+3)/theta^(3/2) (lower bound on the
/// critical p, i.e. the larger exponent) and 1 + 2/theta +
/// sqrt(8(d-2.1))/theta^(3/2). The guarantee assumes theta large relative
/// to d; theta_below_validity flags theta < 650(d-2.1).
struct PlaneThresholdBounds {
  double lower_exponent;
  double upper_exponent;
  bool theta_below_validity;
};
PlaneThresholdBounds plane_threshold_exponent_bounds(int d, int theta);

struct ExponentBounds {
  int d;
  int theta;
  Rational lower;
  Rational upper;
  UpperBoundSource upper_source;
};
std::vector<ExponentBounds> exponent_table(int d, int theta_lo, int theta_hi);

/// Plot-ready series for the exponent bounds: one "lower" and one "upper"
/// row per theta (alpha = the bound), plus "decay_iterate" rows giving the
/// composed decay exponent over the supplied alpha grid (the curve whose
/// crossing of the terminal threshold determines the lower bound).
struct FigurePoint {
  int theta;
  double alpha;
  std::string bound_type;
  double value;
};
std::vector<FigurePoint> figure_data(int d, int theta_lo, int theta_hi,
                                     const std::vector<double>& alpha_grid);

}  // namespace hamming_boot
