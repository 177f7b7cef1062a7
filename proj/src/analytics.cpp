#include "hamming_boot/analytics.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "hamming_boot/errors.hpp"

namespace hamming_boot {

namespace {

// Nested exponentials lose digits; evaluate the closed forms with 50
// significant digits and round once at the end.
using Real = boost::multiprecision::cpp_bin_float_50;

Real factorial(int k) {
  Real f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct Means {
  Real basic, enhanced_basic, line, line_empty_axis, non_enhanced_line_axis,
      enhanced_line;
};

Means means_hp(const Real& a) {
  using boost::multiprecision::exp;
  Means m;
  const Real a2 = a * a;
  const Real pair = exp(-a) + a * exp(-3 * a);  // per-plane no-enhancement factor
  m.basic = a * a2;
  m.enhanced_basic = m.basic * (1 - exp(-3 * a));
  m.line = Real(3) / 2 * a2 * (1 - exp(-2 * a));
  m.line_empty_axis = Real(1) / 2 * a2 * exp(-2 * a);
  m.non_enhanced_line_axis = Real(1) / 2 * a2 * (pair * pair - exp(-2 * a));
  m.enhanced_line = Real(3) / 2 * a2 * (1 - pair * pair);
  return m;
}

Real good_probability_hp(const Real& a) {
  using boost::multiprecision::exp;
  const Means m = means_hp(a);
  const Real nel = 3 * m.non_enhanced_line_axis;  // total over axes
  // Disjoint decomposition of the good event, evaluated with independent
  // Poisson laws (EnhancedBasic paired with Line; Basic, EnhancedLine and
  // the per-axis NonEnhancedLine / empty-line counts jointly independent).
  const Real t1 = (1 - exp(-m.basic)) * m.line * exp(-m.line);
  const Real t2 = (1 - exp(-m.enhanced_basic)) * exp(-m.line);
  const Real t3 = 1 - exp(-m.line) * (1 + m.line);
  const Real t4 = exp(-m.basic) * m.enhanced_line * exp(-m.enhanced_line) * exp(-nel);
  const Real t5 = 3 * exp(-m.basic) * m.non_enhanced_line_axis * exp(-nel) *
                  exp(-m.enhanced_line) * (1 - exp(-2 * m.line_empty_axis));
  return t1 + t2 + t3 + t4 + t5;
}

Real require_positive_a(double a, const char* op) {
  if (!(a > 0.0)) throw DomainError(std::string(op) + ": a must be > 0");
  return Real(a);
}

}  // namespace

std::string rational_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("parse_rational: empty string");
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(text.substr(0, slash));
      const BigInt den(text.substr(slash + 1));
      if (den == 0) throw DomainError("parse_rational: zero denominator");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    // decimal literal
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const size_t frac_digits = text.size() - dot - 1;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      negative = digits[0] == '-';
      digits.erase(digits.begin());
    }
    // leading zeros would read as an octal prefix
    const size_t first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("parse_rational: malformed number '" + text + "'");
    BigInt den = 1;
    for (size_t i = 0; i < frac_digits; ++i) den *= 10;
    const BigInt num(digits);
    return Rational(negative ? -num : num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("parse_rational: malformed number '" + text + "'");
  }
}

BigInt rational_floor(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

double spanning_limit_2d(int theta, double a) {
  if (theta < 3)
    throw UnsupportedError("spanning_limit_2d: theta must be >= 3");
  const Real ar = require_positive_a(a, "spanning_limit_2d");
  const int k = (theta + 1) / 2;
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  const Real rate = pow(ar, k) / factorial(k);
  if (theta % 2 == 1) return static_cast<double>(1 - exp(-2 * rate));
  const Real one_side = 1 - exp(-rate);
  return static_cast<double>(one_side * one_side);
}

double spanning_limit_3d_theta3(double a) {
  const Real ar = require_positive_a(a, "spanning_limit_3d_theta3");
  using boost::multiprecision::exp;
  const Real a2 = ar * ar, a3 = a2 * ar;
  const Real pair = exp(-ar) + ar * exp(-3 * ar);
  const Real bracket = Real(3) / 2 * a2 * (pair * pair - exp(-2 * ar)) *
                           exp(-a2 * exp(-2 * ar)) +
                       exp(a3 * exp(-3 * ar));
  const Real value =
      1 - exp(-a3 - Real(3) / 2 * a2 * (1 - exp(-2 * ar))) * bracket;
  return static_cast<double>(value);
}

double good_probability_limit(double a) {
  const Real ar = require_positive_a(a, "good_probability_limit");
  return static_cast<double>(good_probability_hp(ar));
}

PoissonMeans poisson_means(double a) {
  const Real ar = require_positive_a(a, "poisson_means");
  const Means m = means_hp(ar);
  return PoissonMeans{
      static_cast<double>(m.basic),
      static_cast<double>(m.enhanced_basic),
      static_cast<double>(m.line),
      static_cast<double>(m.line_empty_axis),
      static_cast<double>(m.non_enhanced_line_axis),
      static_cast<double>(m.enhanced_line),
  };
}

namespace {

int half_up(int theta) { return (theta + 1) / 2; }

// beta = slope(a) * alpha + intercept(a) on the piece where
// floor(alpha/(alpha-1)) == a.
void decay_piece(int theta, const BigInt& a, Rational* slope, Rational* intercept) {
  const int k = half_up(theta);
  if (theta % 2 == 1) {
    *slope = Rational(BigInt(k) * k - a * (a - 1));
    *intercept = Rational(a * (a + 1) - BigInt(k + 1) * (k + 1));
  } else {
    *slope = Rational(BigInt(k) * (k + 1) - a * (a - 1));
    *intercept = Rational(a * (a + 1) - BigInt(k + 1) * (k + 2));
  }
}

// Unique alpha > 1 + 1/k with decay exponent exactly t (t > 0): solve the
// linear equation piece by piece, a = k down to 1.
Rational decay_inverse(int theta, const Rational& t) {
  const int k = half_up(theta);
  if (!(t > 0)) throw DomainError("decay_inverse: target must be > 0");
  for (BigInt a = k; a >= 1; --a) {
    Rational slope, intercept;
    decay_piece(theta, a, &slope, &intercept);
    const Rational alpha = (t - intercept) / slope;
    const Rational lo(a + 1, a);  // piece is (lo, hi], hi = a/(a-1)
    if (alpha <= lo) continue;
    if (a > 1 && alpha > Rational(a, a - 1)) continue;
    return alpha;
  }
  throw std::logic_error("decay_inverse: no piece matched");
}

}  // namespace

Rational spanning_decay_exponent_2d(int theta, const Rational& alpha) {
  if (theta < 3)
    throw UnsupportedError("spanning_decay_exponent_2d: theta must be >= 3");
  if (!(alpha > 1))
    throw DomainError("spanning_decay_exponent_2d: alpha must be > 1");
  const int k = half_up(theta);
  if (alpha <= Rational(k + 1, k)) return Rational(0);
  const BigInt a = rational_floor(alpha / (alpha - 1));
  Rational slope, intercept;
  decay_piece(theta, a, &slope, &intercept);
  return slope * alpha + intercept;
}

Rational lower_exponent(int d, int theta) {
  if (d < 2) throw DomainError("lower_exponent: d must be >= 2");
  if (theta < 2) throw DomainError("lower_exponent: theta must be >= 2");
  if (theta == 2) return 1 + Rational(d, 2);
  const int k = half_up(theta);
  Rational target;
  int reductions;
  if (d % 2 == 1) {
    target = 1;  // 1-d rule: exponent < 1 floods the terminal clique
    reductions = (d - 1) / 2;
  } else {
    target = 1 + Rational(1, k);  // 2-d rule: below the planar threshold
    reductions = (d - 2) / 2;
  }
  for (int i = 0; i < reductions; ++i) target = decay_inverse(theta, target);
  return target;
}

const char* upper_bound_source_name(UpperBoundSource source) {
  switch (source) {
    case UpperBoundSource::LineThreshold: return "line-threshold";
    case UpperBoundSource::PlaneObstructionOdd: return "plane-obstruction-odd";
    case UpperBoundSource::PlaneObstructionEven: return "plane-obstruction-even";
  }
  return "unknown";
}

UpperBound upper_exponent(int d, int theta) {
  if (d < 2) throw DomainError("upper_exponent: d must be >= 2");
  if (theta < 2) throw DomainError("upper_exponent: theta must be >= 2");
  UpperBound bound{1 + Rational(d, theta), UpperBoundSource::LineThreshold};
  if (d == 3 && theta >= 4) {
    if (theta % 2 == 1) {
      const Rational plane = 1 + Rational(8, 3 * theta - 1);
      if (plane < bound.value)
        bound = {plane, UpperBoundSource::PlaneObstructionOdd};
    } else {
      const Rational plane = 1 + Rational(8, 3 * theta - 2);
      if (plane < bound.value)
        bound = {plane, UpperBoundSource::PlaneObstructionEven};
    }
  }
  return bound;
}

PlaneThresholdBounds plane_threshold_exponent_bounds(int d, int theta) {
  if (d < 3) throw DomainError("plane_threshold_exponent_bounds: d must be >= 3");
  if (theta < 1)
    throw DomainError("plane_threshold_exponent_bounds: theta must be >= 1");
  const double t = theta;
  const double t32 = std::pow(t, 1.5);
  PlaneThresholdBounds b;
  b.lower_exponent = 1 + 2 / t + (4.0 * d * d + 3) / t32;
  b.upper_exponent = 1 + 2 / t + std::sqrt(8 * (d - 2.1)) / t32;
  b.theta_below_validity = t < 650 * (d - 2.1);
  return b;
}

std::vector<ExponentBounds> exponent_table(int d, int theta_lo, int theta_hi) {
  if (theta_lo > theta_hi)
    throw DomainError("exponent_table: empty theta range");
  std::vector<ExponentBounds> rows;
  rows.reserve(theta_hi - theta_lo + 1);
  for (int theta = theta_lo; theta <= theta_hi; ++theta) {
    const UpperBound upper = upper_exponent(d, theta);
    rows.push_back({d, theta, lower_exponent(d, theta), upper.value, upper.source});
  }
  return rows;
}

std::vector<FigurePoint> figure_data(int d, int theta_lo, int theta_hi,
                                     const std::vector<double>& alpha_grid) {
  std::vector<FigurePoint> points;
  for (const ExponentBounds& row : exponent_table(d, theta_lo, theta_hi)) {
    const double lower = static_cast<double>(row.lower);
    const double upper = static_cast<double>(row.upper);
    points.push_back({row.theta, lower, "lower", lower});
    points.push_back({row.theta, upper, "upper", upper});
    if (row.theta == 2) continue;  // no decay machinery at theta = 2
    const int reductions = d % 2 == 1 ? (d - 1) / 2 : (d - 2) / 2;
    if (reductions == 0) continue;
    for (double alpha : alpha_grid) {
      if (!(alpha > 1)) continue;
      Rational iterate(alpha);  // exact binary value of the grid point
      bool dead = false;
      for (int i = 0; i < reductions && !dead; ++i) {
        if (iterate <= 1) {
          dead = true;  // certificate already past the terminal rule
          break;
        }
        iterate = spanning_decay_exponent_2d(row.theta, iterate);
      }
      points.push_back({row.theta, alpha, "decay_iterate",
                        dead ? 0.0 : static_cast<double>(iterate)});
    }
  }
  return points;
}

}  // namespace hamming_boot
