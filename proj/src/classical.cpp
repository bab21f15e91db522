#include "tidalclock/classical.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Core>

namespace tidal {

namespace {

void require_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::domain_error("kappa must be positive and finite");
  }
}

void require_no_turning_point(double kappa, const PiecewisePotential<>& v) {
  const double energy = 0.5 * kappa * kappa;
  if (energy > v.maximum()) return;
  // V(x) = E at x + 1 = kappa / sqrt(atilde)
  const double x_turn = -1.0 + kappa / std::sqrt(v.atilde());
  std::ostringstream msg;
  msg << "classical turning point at x = " << x_turn
      << " inside the tidal region (kappa^2 = " << kappa * kappa
      << " <= atilde = " << v.atilde() << ")";
  throw std::domain_error(msg.str());
}

}  // namespace

double transit_zero(double kappa) {
  require_kappa(kappa);
  return 2.0 / kappa;
}

double transit_exact(double kappa, const PiecewisePotential<>& potential,
                     QuadratureMeta* meta) {
  require_kappa(kappa);
  require_no_turning_point(kappa, potential);
  const double k2 = kappa * kappa;
  auto integrand = [&](double x) {
    return 2.0 / std::sqrt(k2 - 2.0 * potential.energy(x));
  };
  return integrate(integrand, -1.0, 0.0, 1e-14, meta);
}

double transit_perturbative(double kappa, const PiecewisePotential<>& potential) {
  const double t0 = transit_zero(kappa);
  const double energy = 0.5 * kappa * kappa;
  // alpha b^2 in scaled units is atilde / 2
  return t0 + t0 * (0.5 * potential.atilde()) / (6.0 * energy);
}

bool perturbative_regime(double kappa, double atilde) {
  return std::abs(atilde) <= 0.1 * kappa * kappa;
}

ClassicalResult classical_transit(double kappa,
                                  const PiecewisePotential<>& potential) {
  ClassicalResult r;
  r.t_zero = transit_zero(kappa);
  r.t_exact = transit_exact(kappa, potential, &r.meta);
  r.t_perturbative = transit_perturbative(kappa, potential);
  return r;
}

double trajectory_oracle(double kappa, const PiecewisePotential<>& potential,
                         const AdaptiveOptions& options) {
  require_kappa(kappa);
  require_no_turning_point(kappa, potential);
  using State = Eigen::Vector2d;  // (x, v)
  auto rhs = [&](double, const State& y) {
    return State(y[1], -potential.slope(y[0]));
  };

  AdaptiveOptions opt = options;
  opt.initial_step = std::min(opt.initial_step, 1e-2 / kappa);

  // outbound leg: stop at the wall
  const auto at_wall = integrate_to_event(
      rhs, 0.0, State(-1.0, kappa), [](const State& y) { return y[0]; }, opt);
  // instantaneous elastic reflection
  State reflected(0.0, -at_wall.y[1]);
  const auto back = integrate_to_event(
      rhs, at_wall.t, reflected,
      [](const State& y) { return -1.0 - y[0]; }, opt);
  return back.t;
}

}  // namespace tidal
