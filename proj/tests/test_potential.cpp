#include <doctest.h>

#include "tidalclock/potential.hpp"
#include "tidalclock/quadrature.hpp"

using namespace tidal;

TEST_CASE("piecewise values") {
  const PiecewisePotential<> v(-0.02);
  CHECK(v(-3.0) == 0.0);
  CHECK(v(-1.0) == 0.0);
  CHECK(v(-0.5) == doctest::Approx(-0.02 * 0.25 / 2));
  CHECK(v.energy(0.0) == doctest::Approx(-0.01));
  CHECK(v.schrodinger(-0.25) == doctest::Approx(2.0 * v(-0.25)));
  CHECK_THROWS_AS(v(0.0), std::domain_error);
  CHECK_THROWS_AS(v.evaluate(0.1), std::domain_error);
  CHECK(PiecewisePotential<>(0.0)(-0.3) == 0.0);
}

TEST_CASE("integral, slope and maximum") {
  for (double a : {-0.5, -0.02, 0.0, 0.3}) {
    const PiecewisePotential<> v(a);
    const double q = integrate([&](double x) { return v.energy(x); }, -1.0, 0.0);
    CHECK(v.integral() == doctest::Approx(q).epsilon(1e-13));
    for (double x : {-2.0, -0.7, -0.1}) {
      const double h = 1e-6;
      const double fd = (v.energy(x + h) - v.energy(x - h)) / (2 * h);
      CHECK(v.slope(x) == doctest::Approx(fd).epsilon(1e-8).scale(1e-10));
    }
  }
  CHECK(PiecewisePotential<>(0.3).maximum() == doctest::Approx(0.15));
  CHECK(PiecewisePotential<>(-0.3).maximum() == 0.0);
}

TEST_CASE("scalar template") {
  constexpr PiecewisePotential<long double> v(-0.04L);
  static_assert(v.atilde() == -0.04L);
  CHECK(static_cast<double>(v.energy(-0.5L)) == doctest::Approx(-0.005));
  const PiecewisePotential<float> f(-0.04f);
  CHECK(f.energy(-0.5f) == doctest::Approx(-0.005f));
}
