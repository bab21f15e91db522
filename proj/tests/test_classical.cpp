#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "oracles.hpp"
#include "tidalclock/classical.hpp"

using namespace tidal;

TEST_CASE("free transit") {
  for (double k : {0.5, 2.0, 5.0, 100.0}) {
    CHECK(transit_exact(k, PiecewisePotential<>(0.0)) == doctest::Approx(2.0 / k).epsilon(1e-14));
    CHECK(trajectory_oracle(k, PiecewisePotential<>(0.0)) == doctest::Approx(2.0 / k).epsilon(1e-10));
  }
  CHECK_THROWS_AS(transit_zero(0.0), std::domain_error);
}

TEST_CASE("quadrature against the closed-form time") {
  for (double k : {1.0, 3.0, 10.0, 40.0}) {
    for (double a : {-2.0, -0.5, -0.02, 0.3}) {
      if (a > 0 && a >= k * k) continue;
      CHECK(transit_exact(k, PiecewisePotential<>(a)) ==
            doctest::Approx(oracle::classical_time(k, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("perturbative time") {
  const PiecewisePotential<> v(-0.02);
  const double t = transit_perturbative(5.0, v);
  CHECK(t == doctest::Approx(0.4 - 0.02 / (3 * 125.0)).epsilon(1e-14));
  CHECK(t == doctest::Approx(0.4 - 5.3333e-5).epsilon(1e-8));
  // residual is second order in the tide
  double previous = 0.0;
  for (double a : {-0.01, -0.02, -0.04}) {
    const PiecewisePotential<> p(a);
    const double gap = std::abs(transit_exact(5.0, p) - transit_perturbative(5.0, p));
    if (previous > 0) CHECK(gap / previous == doctest::Approx(4.0).epsilon(0.01));
    previous = gap;
  }
}

TEST_CASE("an attractive tide shortens the trip") {
  CHECK(transit_exact(5.0, PiecewisePotential<>(-0.02)) < 0.4);
  CHECK(transit_exact(5.0, PiecewisePotential<>(0.02)) > 0.4);
}

TEST_CASE("turning point inside the tidal region") {
  const PiecewisePotential<> v(4.0);
  try {
    transit_exact(1.0, v);
    FAIL("expected a turning-point error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("x = -0.5") != std::string::npos);
  }
  CHECK_THROWS_AS(trajectory_oracle(1.0, v), std::domain_error);
}

TEST_CASE("trajectory oracle over random points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> kd(1.0, 50.0), ad(-0.5, 0.0);
  for (int i = 0; i < 20; ++i) {
    const double k = kd(rng);
    const PiecewisePotential<> v(ad(rng));
    CHECK(trajectory_oracle(k, v) == doctest::Approx(transit_exact(k, v)).epsilon(1e-9));
  }
}

TEST_CASE("regime classifier") {
  CHECK(perturbative_regime(5.0, -0.02));
  CHECK_FALSE(perturbative_regime(1.0, -0.5));
  const auto r = classical_transit(5.0, PiecewisePotential<>(-0.02));
  CHECK(r.t_zero == doctest::Approx(0.4));
  CHECK(r.meta.evaluations > 0);
  CHECK(r.t_exact < r.t_zero);
}
