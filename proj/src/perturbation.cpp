#include "tidalclock/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "tidalclock/classical.hpp"
#include "tidalclock/quadrature.hpp"

namespace tidal {

namespace {

constexpr double kQuadTol = 1e-14;

double direction_sign(Direction d) { return d == Direction::Upward ? 1.0 : -1.0; }

void require_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::domain_error("kappa must be positive and finite");
  }
}

// G M m / R^3 in scaled units.
double tidal_strength(double atilde) { return -0.5 * atilde; }

double cosine_piece_quadrature(double kappa, const PiecewisePotential<>& v) {
  const double integral = integrate(
      [&](double x) { return v.energy(x) * std::cos(2.0 * kappa * x); }, -1.0,
      0.0, kQuadTol);
  return 2.0 / kappa * integral;
}

}  // namespace

std::complex<double> greens_function(double x, double x_prime, double kappa) {
  require_kappa(kappa);
  if (x > 0.0 || x_prime > 0.0) {
    throw std::domain_error("greens_function is defined on x, x' <= 0");
  }
  const std::complex<double> i(0.0, 1.0);
  return -(i / kappa) * (std::exp(i * kappa * std::abs(x - x_prime)) -
                         std::exp(-i * kappa * (x + x_prime)));
}

std::complex<double> lippmann_schwinger_u(double kappa,
                                          const PiecewisePotential<>& potential) {
  require_kappa(kappa);
  auto part = [&](bool imaginary) {
    return integrate(
        [&](double xp) {
          const auto g = greens_function(-1.0, xp, kappa);
          const double w = potential.energy(xp) * std::sin(kappa * xp);
          return (imaginary ? g.imag() : g.real()) * w;
        },
        -1.0, 0.0, kQuadTol);
  };
  return {std::sin(-kappa) + part(false), part(true)};
}

double theta_from_born_amplitude(std::complex<double> u_start, double kappa) {
  const std::complex<double> i(0.0, 1.0);
  // u(-1) = a e^{i kappa} + (1/2i) e^{-i kappa}; unperturbed a = i/2
  const std::complex<double> incoming = std::exp(-i * kappa) / (2.0 * i);
  const std::complex<double> a = (u_start - incoming) * std::exp(-i * kappa);
  return (-2.0 * i * a).imag();
}

FirstOrderPhase theta_first_order(double kappa,
                                  const PiecewisePotential<>& potential) {
  require_kappa(kappa);
  FirstOrderPhase out;
  out.kappa = kappa;
  out.atilde = potential.atilde();
  const double sin2 = integrate(
      [&](double x) {
        const double s = std::sin(kappa * x);
        return potential.energy(x) * s * s;
      },
      -1.0, 0.0, kQuadTol);
  const double mean = integrate([&](double x) { return potential.energy(x); },
                                -1.0, 0.0, kQuadTol);
  out.theta_quadrature = -4.0 / kappa * sin2;
  out.theta_highk = -2.0 / kappa * mean;
  out.theta_cosine_term = cosine_piece_quadrature(kappa, potential);
  return out;
}

double theta_cosine_closed(double kappa, double atilde) {
  require_kappa(kappa);
  const double k3 = kappa * kappa * kappa;
  return atilde / (2.0 * k3) - atilde * std::sin(2.0 * kappa) / (4.0 * k3 * kappa);
}

double theta_highk_closed(double kappa, double atilde, Direction direction) {
  require_kappa(kappa);
  // 2 (GMm/R^3) m b^3 / (3 hbar^2 k) with m = b = hbar = 1
  const double k = direction_sign(direction) * kappa;
  return 2.0 * tidal_strength(atilde) / (3.0 * k);
}

double theta_highk_clock_form(double kappa, double atilde, Direction direction) {
  const double t_zero = transit_zero(kappa);
  return direction_sign(direction) * tidal_strength(atilde) * t_zero / 3.0;
}

double transit_highk(double kappa, const PiecewisePotential<>& potential) {
  require_kappa(kappa);
  const double velocity = kappa;
  const double energy = 0.5 * kappa * kappa;
  return 2.0 / velocity + potential.integral() / (energy * velocity);
}

double transit_highk_velocity_form(double kappa, double atilde) {
  const double t_zero = transit_zero(kappa);
  const double tidal_rate = tidal_strength(atilde);  // GM/R^3 with m = 1
  return t_zero - t_zero * tidal_rate / (3.0 * kappa * kappa);
}

double t_prime(double kappa, double atilde) {
  require_kappa(kappa);
  const double gm = tidal_strength(atilde);  // GM/R^3 with m = 1
  const double v = kappa;
  const double v5 = v * v * v * v * v;
  return gm / v5 * (3.0 + std::cos(2.0 * kappa)) -
         2.0 * gm / (v5 * v) * std::sin(2.0 * kappa);
}

double t_prime_finite_difference(double kappa, double atilde, double fd_step) {
  require_kappa(kappa);
  const PiecewisePotential<> v(atilde);
  const double energy = 0.5 * kappa * kappa;
  auto theta_cos = [&](double e) {
    return cosine_piece_quadrature(std::sqrt(2.0 * e), v);
  };
  auto central = [&](double h) {
    return (theta_cos(energy + h) - theta_cos(energy - h)) / (2.0 * h);
  };
  const double h = fd_step * energy;
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double delta_theta_updown(double kappa, double atilde) {
  return 2.0 / 3.0 * tidal_strength(atilde) * transit_zero(kappa);
}

double chiao_phase(double atilde, double t_zero, double area) {
  if (area < 0.0) throw std::domain_error("enclosed area must be non-negative");
  return tidal_strength(atilde) * area * t_zero;
}

CorrectionReport correction_report(double kappa, double atilde,
                                   Direction direction) {
  (void)direction;  // transit times are even in k
  const PiecewisePotential<> v(atilde);
  CorrectionReport out;
  out.t_highk = transit_highk(kappa, v);
  out.t_prime = t_prime(kappa, atilde);
  const double classical = transit_perturbative(kappa, v);
  out.t_total = classical + out.t_prime;
  out.ratio = out.t_prime / classical;
  out.delta_theta_updown = delta_theta_updown(kappa, atilde);
  out.chiao_phase = chiao_phase(atilde, transit_zero(kappa));
  return out;
}

namespace dimensional {

namespace {
double t_zero(const PhysicalScenario& s) { return 2.0 * s.baseline_b / s.velocity(); }
}  // namespace

double theta_highk_wavenumber_form(const PhysicalScenario& s) {
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  const double b = s.baseline_b;
  const double m = s.particle_mass;
  const double k = direction_sign(s.direction) * s.wavenumber();
  return 2.0 * s.grav_const * s.central_mass * m * m * b * b * b /
         (3.0 * r3 * s.hbar * s.hbar * k);
}

double theta_highk_clock_form(const PhysicalScenario& s) {
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  const double b = s.baseline_b;
  return direction_sign(s.direction) / 3.0 *
         (s.grav_const * s.central_mass * s.particle_mass / (r3 * s.hbar)) * b *
         b * t_zero(s);
}

double transit_highk_energy_form(const PhysicalScenario& s) {
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  const double b = s.baseline_b;
  const double t0 = t_zero(s);
  return t0 - t0 * b * b * s.grav_const * s.central_mass * s.particle_mass /
                  (6.0 * r3 * s.energy());
}

double transit_highk_velocity_form(const PhysicalScenario& s) {
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  const double b = s.baseline_b;
  const double v = s.velocity();
  const double t0 = t_zero(s);
  return t0 - t0 * b * b * s.grav_const * s.central_mass / (3.0 * r3 * v * v);
}

double delta_theta_updown(const PhysicalScenario& s) {
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  const double b = s.baseline_b;
  return 2.0 / 3.0 *
         (s.grav_const * s.central_mass * s.particle_mass / (r3 * s.hbar)) * b *
         b * t_zero(s);
}

double chiao_phase(const PhysicalScenario& s, double area) {
  if (area < 0.0) throw std::domain_error("enclosed area must be non-negative");
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  return s.grav_const * s.central_mass * s.particle_mass / (s.hbar * r3) * area *
         t_zero(s);
}

double t_prime(const PhysicalScenario& s) {
  const double r3 = s.central_radius * s.central_radius * s.central_radius;
  const double gm = s.grav_const * s.central_mass;
  const double b = s.baseline_b;
  const double m = s.particle_mass;
  const double hbar = s.hbar;
  const double v = s.velocity();
  const double v5 = v * v * v * v * v;
  const double phase = 2.0 * s.wavenumber() * b;
  return gm * b * hbar * hbar / (r3 * m * m * v5) * (3.0 + std::cos(phase)) -
         2.0 * gm * hbar * hbar * hbar / (r3 * m * m * m * v5 * v) *
             std::sin(phase);
}

}  // namespace dimensional

}  // namespace tidal
