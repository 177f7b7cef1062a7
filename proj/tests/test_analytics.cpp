#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hamming_boot/analytics.hpp"

namespace hb = hamming_boot;

namespace {

hb::Rational rat(const char* text) { return hb::parse_rational(text); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(hb::rational_string(rat("19/14")) == "19/14");
  CHECK(hb::rational_string(rat("2")) == "2/1");
  CHECK(hb::rational_string(rat("1.9")) == "19/10");
  CHECK(hb::rational_string(rat("-0.25")) == "-1/4");
  CHECK(rat("4/8") == rat("1/2"));
  CHECK(hb::rational_floor(rat("7/4")) == 1);
  CHECK(hb::rational_floor(rat("-7/4")) == -2);
  CHECK(hb::rational_floor(rat("2")) == 2);
  CHECK_THROWS_AS(rat("abc"), hb::DomainError);
  CHECK_THROWS_AS(rat("1/0"), hb::DomainError);
  CHECK_THROWS_AS(rat(""), hb::DomainError);
}

TEST_CASE("two-dimensional spanning limit") {
  // Frozen against 40-digit evaluation of the closed form.
  CHECK(hb::spanning_limit_2d(3, 1.0) ==
        doctest::Approx(0.6321205588285577).epsilon(1e-12));
  CHECK(hb::spanning_limit_2d(4, 1.0) ==
        doctest::Approx(0.1548181217461755).epsilon(1e-12));
  CHECK(hb::spanning_limit_2d(5, 2.0) ==
        doctest::Approx(0.9305165487771985).epsilon(1e-12));

  CHECK_THROWS_AS(hb::spanning_limit_2d(2, 1.0), hb::UnsupportedError);
  CHECK_THROWS_AS(hb::spanning_limit_2d(3, 0.0), hb::DomainError);
  CHECK_THROWS_AS(hb::spanning_limit_2d(3, -1.0), hb::DomainError);

  // Limits 0 and 1; strictly increasing until the double plateau at 1.
  CHECK(hb::spanning_limit_2d(4, 1e-6) < 1e-10);
  CHECK(hb::spanning_limit_2d(4, 50.0) > 1.0 - 1e-10);
  for (int theta : {3, 4, 5, 6}) {
    double prev = 0.0;
    for (double a = 0.1; a <= 5.0; a += 0.1) {
      const double value = hb::spanning_limit_2d(theta, a);
      CHECK(value >= prev);
      if (prev < 1.0 - 1e-12) CHECK(value > prev);
      CHECK(value <= 1.0);
      prev = value;
    }
  }
}

TEST_CASE("three-dimensional theta=3 limit and the good decomposition") {
  CHECK(hb::spanning_limit_3d_theta3(1.0) ==
        doctest::Approx(0.8891536488370317).epsilon(1e-12));
  CHECK(hb::spanning_limit_3d_theta3(2.0) ==
        doctest::Approx(0.9999990462212619).epsilon(1e-12));
  CHECK(hb::good_probability_limit(1.0) ==
        doctest::Approx(0.8891536488370317).epsilon(1e-12));
  CHECK_THROWS_AS(hb::spanning_limit_3d_theta3(0.0), hb::DomainError);
  CHECK_THROWS_AS(hb::good_probability_limit(-2.0), hb::DomainError);

  CHECK(hb::spanning_limit_3d_theta3(1e-4) < 1e-8);
  CHECK(hb::spanning_limit_3d_theta3(40.0) > 1.0 - 1e-12);

  // The two evaluation routes agree far below the 1e-10 requirement.
  double prev = 0.0;
  for (double a = 0.05; a <= 5.0; a += 0.05) {
    const double direct = hb::spanning_limit_3d_theta3(a);
    const double via_decomposition = hb::good_probability_limit(a);
    CHECK(std::abs(direct - via_decomposition) <= 1e-12);
    CHECK(direct >= prev);
    if (prev < 1.0 - 1e-12) CHECK(direct > prev);
    prev = direct;
  }
}

TEST_CASE("poisson means table") {
  const hb::PoissonMeans unit = hb::poisson_means(1.0);
  CHECK(unit.basic == doctest::Approx(1.0).epsilon(1e-14));
  const hb::PoissonMeans two = hb::poisson_means(2.0);
  CHECK(two.line == doctest::Approx(5.890106166667595).epsilon(1e-12));
  CHECK(two.basic == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(two.enhanced_basic == doctest::Approx(7.980169982586669).epsilon(1e-12));

  for (double a = 0.1; a <= 4.0; a += 0.1) {
    const hb::PoissonMeans m = hb::poisson_means(a);
    CHECK(m.basic >= 0);
    CHECK(m.enhanced_basic >= 0);
    CHECK(m.line >= 0);
    CHECK(m.line_empty_axis >= 0);
    CHECK(m.non_enhanced_line_axis >= 0);
    CHECK(m.enhanced_line >= 0);
    CHECK(m.enhanced_line + 3 * m.non_enhanced_line_axis ==
          doctest::Approx(m.line).epsilon(1e-12));
  }
  const hb::PoissonMeans tiny = hb::poisson_means(1e-8);
  CHECK(tiny.line < 1e-12);
  CHECK(tiny.basic < 1e-12);
  CHECK_THROWS_AS(hb::poisson_means(0.0), hb::DomainError);
}

TEST_CASE("two-dimensional spanning decay exponent") {
  CHECK(hb::spanning_decay_exponent_2d(3, rat("2")) == rat("1"));
  CHECK(hb::spanning_decay_exponent_2d(4, rat("7/4")) == rat("1"));
  CHECK_THROWS_AS(hb::spanning_decay_exponent_2d(2, rat("2")),
                  hb::UnsupportedError);
  CHECK_THROWS_AS(hb::spanning_decay_exponent_2d(3, rat("1")), hb::DomainError);

  for (int theta : {3, 5, 7, 9}) {
    const int k = (theta + 1) / 2;
    const hb::Rational boundary = 1 + hb::Rational(1, k);
    CHECK(hb::spanning_decay_exponent_2d(theta, boundary) == rat("0"));
    CHECK(hb::spanning_decay_exponent_2d(
              theta, boundary - hb::Rational(1, 100)) == rat("0"));
    CHECK(hb::spanning_decay_exponent_2d(
              theta, boundary + hb::Rational(1, 100)) > 0);
  }

  // Nondecreasing, and continuous across the floor breakpoints.
  for (int theta : {3, 4, 5, 6, 8}) {
    hb::Rational prev(0);
    for (int i = 41; i <= 160; ++i) {
      const hb::Rational alpha(i, 40);
      const hb::Rational value = hb::spanning_decay_exponent_2d(theta, alpha);
      CHECK(value >= prev);
      prev = value;
    }
    for (const hb::Rational& breakpoint :
         {rat("2"), rat("3/2"), rat("4/3"), rat("5/4")}) {
      const hb::Rational eps(1, 1000000);
      const hb::Rational left =
          hb::spanning_decay_exponent_2d(theta, breakpoint - eps);
      const hb::Rational mid = hb::spanning_decay_exponent_2d(theta, breakpoint);
      const hb::Rational right =
          hb::spanning_decay_exponent_2d(theta, breakpoint + eps);
      CHECK(mid - left <= rat("1/1000"));
      CHECK(right - mid <= rat("1/1000"));
      CHECK(left <= mid);
      CHECK(mid <= right);
    }
  }
}

TEST_CASE("critical-exponent bounds reproduce the d=3 table") {
  const char* lower[] = {"5/2", "2",     "7/4",   "11/7", "3/2", "7/5",
                         "19/14", "17/13", "23/18", "5/4", "27/22"};
  const char* upper[] = {"5/2", "2",     "7/4",   "11/7", "3/2", "7/5",
                         "15/11", "17/13", "9/7",   "5/4", "21/17"};
  const auto table = hb::exponent_table(3, 2, 12);
  REQUIRE(table.size() == 11);
  for (size_t i = 0; i < table.size(); ++i) {
    CAPTURE(table[i].theta);
    CHECK(table[i].lower == rat(lower[i]));
    CHECK(table[i].upper == rat(upper[i]));
    CHECK(table[i].lower <= table[i].upper);
  }
  // Matching bounds exactly where the critical exponent is known.
  for (int theta = 2; theta <= 12; ++theta) {
    const bool known = theta == 2 || theta == 3 || theta == 4 || theta == 5 ||
                       theta == 6 || theta == 7 || theta == 9 || theta == 11;
    CHECK((hb::lower_exponent(3, theta) == hb::upper_exponent(3, theta).value) ==
          known);
  }
  // Tags for the winning upper bound.
  CHECK(hb::upper_exponent(3, 2).source == hb::UpperBoundSource::LineThreshold);
  CHECK(hb::upper_exponent(3, 3).source == hb::UpperBoundSource::LineThreshold);
  CHECK(hb::upper_exponent(3, 5).source ==
        hb::UpperBoundSource::PlaneObstructionOdd);
  CHECK(hb::upper_exponent(3, 8).source ==
        hb::UpperBoundSource::PlaneObstructionEven);
  CHECK(hb::upper_exponent(4, 8).source == hb::UpperBoundSource::LineThreshold);

  // Both bounds decrease towards 1 as theta grows.
  hb::Rational prev_lower(100), prev_upper(100);
  for (int theta = 2; theta <= 24; ++theta) {
    const hb::Rational lo = hb::lower_exponent(3, theta);
    const hb::Rational hi = hb::upper_exponent(3, theta).value;
    CHECK(lo <= hi);
    CHECK(lo > 1);
    CHECK(lo <= prev_lower);
    CHECK(hi <= prev_upper);
    prev_lower = lo;
    prev_upper = hi;
  }

  CHECK_THROWS_AS(hb::lower_exponent(1, 3), hb::DomainError);
  CHECK_THROWS_AS(hb::lower_exponent(3, 1), hb::DomainError);
}

TEST_CASE("dimension-reduced lower bounds beyond d=3") {
  // d=2: the planar threshold itself.
  CHECK(hb::lower_exponent(2, 5) == rat("4/3"));
  CHECK(hb::lower_exponent(2, 2) == rat("2"));

  // d=6, theta=5: the certificate is two composed reductions ending at the
  // 2-d rule; the supremum alpha* satisfies decay(decay(alpha*)) = 4/3.
  const hb::Rational sup = hb::lower_exponent(6, 5);
  const auto iterate = [&](const hb::Rational& alpha) {
    return hb::spanning_decay_exponent_2d(5, hb::spanning_decay_exponent_2d(5, alpha));
  };
  CHECK(iterate(sup) == rat("4/3"));
  CHECK(iterate(sup - rat("1/1000")) < rat("4/3"));
  CHECK(iterate(sup + rat("1/1000")) > rat("4/3"));

  // d=5: two reductions ending at the 1-d rule.
  const hb::Rational sup5 = hb::lower_exponent(5, 4);
  const auto iterate5 = [&](const hb::Rational& alpha) {
    return hb::spanning_decay_exponent_2d(4, hb::spanning_decay_exponent_2d(4, alpha));
  };
  CHECK(iterate5(sup5) == rat("1"));
  CHECK(iterate5(sup5 - rat("1/1000")) < rat("1"));
}

TEST_CASE("large-theta plane threshold bounds") {
  const auto bounds = hb::plane_threshold_exponent_bounds(3, 100);
  CHECK(bounds.upper_exponent ==
        doctest::Approx(1.0 + 2.0 / 100 + std::sqrt(7.2) / 1000.0).epsilon(1e-15));
  CHECK(bounds.lower_exponent ==
        doctest::Approx(1.0 + 2.0 / 100 + 39.0 / 1000.0).epsilon(1e-15));
  CHECK(bounds.lower_exponent >= bounds.upper_exponent);
  CHECK(bounds.theta_below_validity);  // 100 < 650 * 0.9
  CHECK_FALSE(hb::plane_threshold_exponent_bounds(3, 600).theta_below_validity);
  CHECK_THROWS_AS(hb::plane_threshold_exponent_bounds(2, 10), hb::DomainError);

  for (int d = 3; d <= 6; ++d) {
    double prev = 100;
    for (int theta = 4; theta <= 4096; theta *= 2) {
      const auto b = hb::plane_threshold_exponent_bounds(d, theta);
      CHECK(b.lower_exponent >= b.upper_exponent);
      CHECK(b.upper_exponent > 1.0);
      CHECK(b.lower_exponent < prev);
      prev = b.lower_exponent;
    }
    CHECK(hb::plane_threshold_exponent_bounds(d, 1 << 20).lower_exponent ==
          doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("figure series") {
  const auto points = hb::figure_data(3, 2, 5, {1.2, 1.5, 2.0, 2.5});
  REQUIRE(!points.empty());
  int lower_rows = 0, upper_rows = 0, iterate_rows = 0;
  for (const auto& point : points) {
    CHECK(point.theta >= 2);
    CHECK(point.theta <= 5);
    if (point.bound_type == "lower") ++lower_rows;
    else if (point.bound_type == "upper") ++upper_rows;
    else if (point.bound_type == "decay_iterate") ++iterate_rows;
    else FAIL("unexpected bound type ", point.bound_type);
  }
  CHECK(lower_rows == 4);
  CHECK(upper_rows == 4);
  CHECK(iterate_rows == 3 * 4);  // theta in {3,4,5} x four grid points
  // The iterate at the lower bound alpha equals the terminal threshold.
  for (const auto& point : points) {
    if (point.bound_type != "lower" || point.theta == 2) continue;
    const hb::Rational at_bound = hb::spanning_decay_exponent_2d(
        point.theta, hb::lower_exponent(3, point.theta));
    CHECK(at_bound == rat("1"));  // d=3: one reduction, 1-d terminal rule
  }
}
