#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tidalclock/classical.hpp"
#include "tidalclock/wavepacket.hpp"

using namespace tidal;

TEST_CASE("packet validation") {
  CHECK_NOTHROW(GaussianPacket{-4.0, 0.5, 20.0}.validate());
  CHECK_THROWS_AS((GaussianPacket{-4.0, 0.0, 20.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((GaussianPacket{-4.0, 0.2, 20.0}.validate()), std::domain_error);  // kappa sigma = 4
  CHECK_THROWS_AS((GaussianPacket{-2.5, 0.5, 20.0}.validate()), std::domain_error);  // too close
  RunParams odd;
  odd.dx = 3e-3;
  CHECK_THROWS_AS(propagate(GaussianPacket{-4.0, 0.5, 20.0}, 0.0, odd), std::invalid_argument);
  RunParams coarse;
  coarse.dx = 1e-2;
  CHECK_THROWS_AS(propagate(GaussianPacket{-4.0, 0.5, 20.0}, 0.0, coarse), std::invalid_argument);
}

TEST_CASE("bounce off the bare wall and in the tide") {
  const GaussianPacket packet{-4.0, 0.5, 20.0};
  const auto free_run = propagate(packet, 0.0);
  const double t_free = arrival_time(free_run);
  CHECK(t_free == doctest::Approx(0.1).epsilon(0.02));
  CHECK(free_run.max_norm_drift < 1e-8);
  CHECK(free_run.max_boundary_density < 1e-10);
  CHECK(free_run.norm_history.size() == free_run.times.size());
  CHECK(std::abs(free_run.norm_history.back() - 1.0) < 1e-8);

  const auto tidal_run = propagate(packet, -0.02);
  const double t_tidal = arrival_time(tidal_run);
  CHECK(t_tidal < t_free);
  CHECK(t_tidal == doctest::Approx(transit_exact(20.0, PiecewisePotential<>(-0.02))).epsilon(0.02));

  std::ostringstream csv;
  write_flux_csv(csv, tidal_run);
  CHECK(csv.str().rfind("t,flux\n", 0) == 0);
}

TEST_CASE("space-time refinement") {
  // cheaper packet: kappa sigma = 6
  const GaussianPacket packet{-2.8, 0.4, 15.0};
  double t[3];
  double dx = 1.0 / 160, dt = 1.6e-4;
  for (double& ti : t) {
    RunParams p;
    p.dx = dx;
    p.dt = dt;
    ti = arrival_time(propagate(packet, -0.02, p));
    dx /= 2;
    dt /= 2;
  }
  const double order = std::log2(std::abs(t[0] - t[1]) / std::abs(t[1] - t[2]));
  CHECK(order >= 1.8);
  CHECK(std::abs(t[2] / t[1] - 1.0) < 1e-3);
}

TEST_CASE("timestep halving at the reference packet") {
  const GaussianPacket packet{-4.0, 0.5, 20.0};
  RunParams half;
  half.dt = 2.5e-5;
  const double coarse = arrival_time(propagate(packet, -0.02));
  const double fine = arrival_time(propagate(packet, -0.02, half));
  CHECK(std::abs(fine / coarse - 1.0) < 1e-4);
}

TEST_CASE("refusals") {
  const GaussianPacket packet{-3.5, 0.5, 10.0};
  RunParams base;
  base.dx = 4e-3;
  base.dt = 1e-4;

  RunParams tight = base;
  tight.x_left = -6.0;
  CHECK_THROWS_AS(propagate(packet, 0.0, tight), std::runtime_error);

  RunParams strict = base;
  strict.max_norm_drift = 1e-30;
  CHECK_THROWS_AS(propagate(packet, 0.0, strict), std::runtime_error);

  RunParams short_run = base;
  short_run.t_end = 0.3;
  CHECK_THROWS_AS(arrival_time(propagate(packet, 0.0, short_run)), std::domain_error);

  // wide, slow packet: incoming and outgoing flux overlap at the start line
  const GaussianPacket wide{-6.0, 1.0, 6.0};
  try {
    arrival_time(propagate(wide, 0.0, base));
    FAIL("overlap accepted");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("kappa * sigma = 6") != std::string::npos);
  }
}
