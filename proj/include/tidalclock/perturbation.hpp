#pragma once

#include <complex>

#include "tidalclock/potential.hpp"
#include "tidalclock/scenario.hpp"

namespace tidal {

/// First-order tidal phase and its split into the mean (high-k) piece and
/// the oscillating cos(2 kappa x) piece.
struct FirstOrderPhase {
  double theta_quadrature = 0.0;   // -(4/kappa) int V sin^2(kappa x)
  double theta_highk = 0.0;        // -(2/kappa) int V
  double theta_cosine_term = 0.0;  // +(2/kappa) int V cos(2 kappa x)
  double kappa = 0.0;
  double atilde = 0.0;
};

struct CorrectionReport {
  double t_highk = 0.0;
  double t_prime = 0.0;
  double t_total = 0.0;  // classical perturbative time + t_prime
  double ratio = 0.0;    // t_prime / classical perturbative time
  double delta_theta_updown = 0.0;
  double chiao_phase = 0.0;
};

/// Outgoing Green function of -(1/2) d^2/dx^2 - E on x <= 0 vanishing at the
/// wall, scaled units: -(i/kappa) [e^{i kappa |x-x'|} - e^{-i kappa (x+x')}].
std::complex<double> greens_function(double x, double x_prime, double kappa);

/// First Born iterate at the start line:
/// sin(-kappa) + int G(-1, x') V(x') sin(kappa x') dx'.
std::complex<double> lippmann_schwinger_u(double kappa,
                                          const PiecewisePotential<>& potential);

/// Tidal phase carried by the outgoing e^{i kappa} component of a Born
/// amplitude at x = -1, linearised in the correction: Im(-2i a_out).
double theta_from_born_amplitude(std::complex<double> u_start, double kappa);

FirstOrderPhase theta_first_order(double kappa,
                                  const PiecewisePotential<>& potential);

/// Closed form of the cosine piece: atilde/(2 kappa^3) - atilde sin(2 kappa)/(4 kappa^4).
double theta_cosine_closed(double kappa, double atilde);

// Scaled closed forms. `atilde` fixes the tide: G M m / R^3 -> -atilde/2.

/// 2 G M m^2 b^3 / (3 R^3 hbar^2 k); sign reverses for downward launch.
double theta_highk_closed(double kappa, double atilde,
                          Direction direction = Direction::Upward);
/// (1/3) (G M m / R^3 hbar) b^2 T0, same quantity by the clock route.
double theta_highk_clock_form(double kappa, double atilde,
                              Direction direction = Direction::Upward);

/// 2b/v + (1/(E v)) int V.
double transit_highk(double kappa, const PiecewisePotential<>& potential);
/// T0 - T0 b^2 G M / (3 R^3 v^2); no hbar or m left.
double transit_highk_velocity_form(double kappa, double atilde);

/// Quantum correction T' = hbar d(theta_cosine_term)/dE, closed form.
double t_prime(double kappa, double atilde);

/// hbar d(theta_cosine_term)/dE by central differences of the quadrature
/// (relative step `fd_step` on E, one Richardson level).
double t_prime_finite_difference(double kappa, double atilde,
                                 double fd_step = 1e-4);

/// Upward minus downward phase: (2/3) (G M m / R^3 hbar) b^2 T0.
double delta_theta_updown(double kappa, double atilde);

/// Orbital interferometer phase (G M m / hbar R^3) A T0; A defaults to 2b^2/3.
double chiao_phase(double atilde, double t_zero, double area = 2.0 / 3.0);

CorrectionReport correction_report(double kappa, double atilde,
                                   Direction direction = Direction::Upward);

/// The same closed forms in SI units, evaluated straight from G, M, R, m,
/// b, hbar and k.
namespace dimensional {

double theta_highk_wavenumber_form(const PhysicalScenario& s);
double theta_highk_clock_form(const PhysicalScenario& s);
double transit_highk_energy_form(const PhysicalScenario& s);
double transit_highk_velocity_form(const PhysicalScenario& s);
double delta_theta_updown(const PhysicalScenario& s);
double chiao_phase(const PhysicalScenario& s, double area);
double t_prime(const PhysicalScenario& s);

}  // namespace dimensional

}  // namespace tidal
