#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tidalclock/classical.hpp"
#include "tidalclock/perturbation.hpp"
#include "tidalclock/stationary.hpp"

using namespace tidal;

TEST_CASE("Green function") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> xd(-3.0, 0.0), kd(0.5, 30.0);
  for (int i = 0; i < 50; ++i) {
    const double x = xd(rng), xp = xd(rng), k = kd(rng);
    CHECK(std::abs(greens_function(0.0, xp, k)) < 1e-15);
    CHECK(std::abs(greens_function(x, xp, k) - greens_function(xp, x, k)) < 1e-14);
    CHECK(std::abs(greens_function(x, xp, k) - oracle::green(x, xp, k)) < 1e-13);
  }
  // -(i/5)(1 - e^{5i}) by hand
  const std::complex<double> expected(-std::sin(5.0) / 5.0, -(1.0 - std::cos(5.0)) / 5.0);
  CHECK(std::abs(greens_function(-0.5, -0.5, 5.0) - expected) < 1e-15);
  CHECK_THROWS_AS(greens_function(0.1, -0.5, 5.0), std::domain_error);
}

TEST_CASE("Born amplitude at the start line") {
  for (double k : {0.7, 5.0, 31.0}) {
    CHECK(lippmann_schwinger_u(k, PiecewisePotential<>(0.0)) == std::complex<double>(-std::sin(k), 0.0));
  }
  const PiecewisePotential<> v(-0.02);
  const double from_ls = theta_from_born_amplitude(lippmann_schwinger_u(5.0, v), 5.0);
  CHECK(from_ls == doctest::Approx(theta_first_order(5.0, v).theta_quadrature).epsilon(1e-10));
  const auto c1 = lippmann_schwinger_u(5.0, PiecewisePotential<>(-0.01)) + std::sin(5.0);
  const auto c2 = lippmann_schwinger_u(5.0, PiecewisePotential<>(-0.03)) + std::sin(5.0);
  CHECK(std::abs(c2 - 3.0 * c1) < 1e-14);
}

TEST_CASE("first-order phase pieces") {
  const auto zero = theta_first_order(5.0, PiecewisePotential<>(0.0));
  CHECK(zero.theta_quadrature == 0.0);
  CHECK(zero.theta_highk == 0.0);
  CHECK(zero.theta_cosine_term == 0.0);

  const auto p = theta_first_order(5.0, PiecewisePotential<>(-0.02));
  CHECK(p.theta_highk == doctest::Approx(2.0 * 0.01 / 15.0).epsilon(1e-12));
  CHECK(p.theta_highk == doctest::Approx(1.3333e-3).epsilon(1e-4));
  CHECK(p.theta_quadrature == doctest::Approx(p.theta_highk + p.theta_cosine_term).epsilon(1e-12));
  CHECK(p.theta_cosine_term == doctest::Approx(theta_cosine_closed(5.0, -0.02)).epsilon(1e-12));
  CHECK(p.theta_highk == doctest::Approx(theta_highk_closed(5.0, -0.02)).epsilon(1e-12));

  double last = 1.0;
  for (double k : {10.0, 40.0, 160.0}) {
    const auto q = theta_first_order(k, PiecewisePotential<>(-0.02));
    const double share = std::abs(q.theta_cosine_term / q.theta_highk);
    CHECK(share < last);
    last = share;
  }
  CHECK(last < 1e-4);
}

TEST_CASE("first order tracks the exact phase") {
  double previous = 0.0;
  for (double a : {-0.005, -0.01, -0.02, -0.04}) {
    const double gap = std::abs(theta_exact(5.0, a).theta -
                                theta_first_order(5.0, PiecewisePotential<>(a)).theta_quadrature);
    if (previous > 0) CHECK(gap / previous == doctest::Approx(4.0).epsilon(0.1));
    previous = gap;
  }
}

TEST_CASE("high-k phase in both printed forms") {
  for (double k : {0.3, 5.0, 77.0}) {
    for (double a : {-0.02, -3.0}) {
      CHECK(theta_highk_closed(k, a) == doctest::Approx(theta_highk_clock_form(k, a)).epsilon(1e-15));
      CHECK(theta_highk_closed(k, a, Direction::Downward) == -theta_highk_closed(k, a));
      CHECK(delta_theta_updown(k, a) ==
            doctest::Approx(theta_highk_closed(k, a) - theta_highk_closed(k, a, Direction::Downward))
                .epsilon(1e-15));
    }
  }
  CHECK(delta_theta_updown(5.0, -0.02) == doctest::Approx(2.6667e-3).epsilon(1e-4));
  CHECK(delta_theta_updown(5.0, 0.0) == 0.0);
}

TEST_CASE("dimensional phase scales as b^3/k") {
  auto s = earth_rubidium_scenario(1e-5, 1e-3);
  const double base = dimensional::theta_highk_wavenumber_form(s);
  auto s2 = s;
  s2.baseline_b *= 2.0;
  s2.wavenumber_k = *s.wavenumber_k * 3.0;
  CHECK(dimensional::theta_highk_wavenumber_form(s2) / base == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(dimensional::theta_highk_clock_form(s) == doctest::Approx(base).epsilon(1e-15));
  const auto d = nondimensionalize(s);
  CHECK(theta_highk_closed(d.kappa, d.atilde) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("high-k transit equals the classical first-order time") {
  for (double k : {0.5, 5.0, 80.0}) {
    const PiecewisePotential<> v(-0.02);
    CHECK(transit_highk(k, v) == doctest::Approx(transit_perturbative(k, v)).epsilon(1e-15));
    CHECK(transit_highk(k, v) == doctest::Approx(transit_highk_velocity_form(k, -0.02)).epsilon(1e-15));
  }
  CHECK(transit_highk(5.0, PiecewisePotential<>(0.0)) == doctest::Approx(0.4));

  // m -> 2m at fixed v, b and GM/R^3 leaves the dimensional time alone
  const auto s = earth_rubidium_scenario(1e-5, 1e-3);
  auto heavy = s;
  heavy.particle_mass *= 2.0;
  heavy.wavenumber_k = wavenumber_from_velocity(heavy.particle_mass, 1e-3, heavy.hbar);
  CHECK(dimensional::transit_highk_energy_form(heavy) ==
        doctest::Approx(dimensional::transit_highk_energy_form(s)).epsilon(1e-15));
  CHECK(dimensional::transit_highk_velocity_form(s) ==
        doctest::Approx(dimensional::transit_highk_energy_form(s)).epsilon(1e-15));
}

TEST_CASE("quantum correction T'") {
  for (double k : {2.0, 5.0, 10.0, 20.0}) {
    CHECK(t_prime_finite_difference(k, -0.02) == doctest::Approx(t_prime(k, -0.02)).epsilon(1e-6));
  }
  // the exact engine confirms the sign of the closed form
  const double residual =
      peres_transit_time(10.0, -0.02).t_quantum - transit_exact(10.0, PiecewisePotential<>(-0.02));
  CHECK(residual / t_prime(10.0, -0.02) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(t_prime(5.0, 0.0) == 0.0);

  const auto s = earth_rubidium_scenario(1e-5, 1e-3);
  const auto d = nondimensionalize(s);
  CHECK(dimensional::t_prime(s) ==
        doctest::Approx(redimensionalize_time(t_prime(d.kappa, d.atilde), s)).epsilon(1e-12));
  auto doubled = s;
  doubled.hbar *= 2.0;
  doubled.wavenumber_k = wavenumber_from_velocity(s.particle_mass, 1e-3, doubled.hbar);
  CHECK(std::abs(dimensional::t_prime(doubled) / dimensional::t_prime(s) - 1.0) > 0.1);
}

TEST_CASE("orbital interferometer phase") {
  const double t0 = transit_zero(5.0);
  CHECK(chiao_phase(-0.02, t0) == doctest::Approx(delta_theta_updown(5.0, -0.02)).epsilon(1e-15));
  CHECK(chiao_phase(-0.02, t0, 0.0) == 0.0);
  CHECK(chiao_phase(-0.02, t0, 4.0 / 3.0) == doctest::Approx(2.0 * chiao_phase(-0.02, t0)));
  CHECK_THROWS_AS(chiao_phase(-0.02, t0, -1.0), std::domain_error);
  const auto s = earth_rubidium_scenario(1e-4, 1e-2);
  CHECK(dimensional::chiao_phase(s, 2.0 / 3.0 * 1e-8) ==
        doctest::Approx(dimensional::delta_theta_updown(s)).epsilon(1e-15));
  CHECK_THROWS_AS(dimensional::chiao_phase(s, -1.0), std::domain_error);
}

TEST_CASE("correction report") {
  const auto r = correction_report(5.0, -0.02);
  const double classical = transit_perturbative(5.0, PiecewisePotential<>(-0.02));
  CHECK(r.t_total == doctest::Approx(classical + r.t_prime).epsilon(1e-15));
  CHECK(r.ratio == doctest::Approx(r.t_prime / classical));
  CHECK(r.chiao_phase == doctest::Approx(r.delta_theta_updown).epsilon(1e-15));
  CHECK(r.delta_theta_updown == doctest::Approx(2.0 * std::abs(theta_highk_closed(5.0, -0.02))));
  CHECK(r.t_highk == doctest::Approx(classical).epsilon(1e-15));
}
