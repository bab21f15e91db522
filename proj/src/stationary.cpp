#include "tidalclock/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace tidal {

namespace {

constexpr std::size_t kMaxNodes = 50'000'000;
constexpr long double kPi = std::numbers::pi_v<long double>;

long double principal(long double angle) {
  // (-pi, pi]
  angle = std::remainder(angle, 2.0L * kPi);
  if (angle <= -kPi) angle += 2.0L * kPi;
  return angle;
}

// Brings `value` within pi of `reference` by whole turns.
long double unwrap_near(long double value, long double reference) {
  return value - 2.0L * kPi * std::round((value - reference) / (2.0L * kPi));
}

}  // namespace

std::size_t required_nodes(double kappa) {
  const double per_wavelength =
      std::ceil(40.0 * kappa / (2.0 * std::numbers::pi));
  return std::max<std::size_t>(1000, static_cast<std::size_t>(per_wavelength));
}

GridSpec default_grid(double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
  const double wanted = std::max(2000.0, std::ceil(400.0 * kappa));
  if (wanted > static_cast<double>(kMaxNodes)) {
    std::ostringstream msg;
    msg << "kappa = " << kappa << " needs " << wanted
        << " Numerov nodes; the stationary engine is limited to " << kMaxNodes;
    throw std::domain_error(msg.str());
  }
  auto nodes = static_cast<std::size_t>(wanted);
  nodes += nodes % 2;
  return GridSpec{nodes};
}

long double theta_exact_extended(long double kappa, long double atilde,
                                 const GridSpec& grid,
                                 double* unitarity_defect) {
  const auto bv = solve_interior<long double>(kappa, atilde, grid);
  const auto r = reflection_coefficient(bv.u, bv.du, kappa);
  if (unitarity_defect) {
    *unitarity_defect = static_cast<double>(std::abs(std::abs(r) - 1.0L));
  }
  const std::complex<long double> free_phase(std::cos(2.0L * kappa),
                                             -std::sin(2.0L * kappa));
  return principal(std::arg(-r * free_phase));
}

PhaseResult theta_exact(double kappa, double atilde,
                        std::optional<GridSpec> grid) {
  const GridSpec g = grid ? *grid : default_grid(kappa);
  const auto bv = solve_interior<long double>(kappa, atilde, g);
  const auto r = reflection_coefficient<long double>(bv.u, bv.du, kappa);
  const std::complex<long double> free_phase(std::cos(2.0L * kappa),
                                             -std::sin(2.0L * kappa));
  PhaseResult out;
  out.reflection_r = std::complex<double>(r);
  out.theta = static_cast<double>(principal(std::arg(-r * free_phase)));
  out.phi_total = 2.0 * kappa + out.theta;
  out.grid = g;
  out.kappa = kappa;
  out.atilde = atilde;
  return out;
}

ClockResult peres_transit_time(double kappa, double atilde,
                               const ClockOptions& options) {
  if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
  if (!(options.fd_step > 0.0) || options.fd_step >= 0.5) {
    throw std::invalid_argument("fd_step must lie in (0, 0.5)");
  }
  if (options.richardson_levels < 0) {
    throw std::invalid_argument("richardson_levels must be non-negative");
  }
  const GridSpec grid = options.grid ? *options.grid : default_grid(kappa);

  ClockResult out;
  out.grid = grid;
  out.fd_step = options.fd_step;
  out.richardson_order = options.richardson_levels;
  out.t_free_part = 2.0 / kappa;

  const long double energy = 0.5L * kappa * static_cast<long double>(kappa);
  double defect = 0.0;
  auto theta_at = [&](long double e) {
    double d = 0.0;
    const long double th =
        theta_exact_extended(std::sqrt(2.0L * e), atilde, grid, &d);
    defect = std::max(defect, d);
    return th;
  };
  const long double theta_centre = theta_at(energy);

  // D(h) for h, h/2, h/4, ... then the Richardson table in powers of 4.
  const int levels = options.richardson_levels;
  std::vector<long double> table(static_cast<std::size_t>(levels) + 1);
  long double h = options.fd_step * energy;
  for (int j = 0; j <= levels; ++j, h *= 0.5L) {
    const long double plus = unwrap_near(theta_at(energy + h), theta_centre);
    const long double minus = unwrap_near(theta_at(energy - h), theta_centre);
    if (std::abs(plus - minus) > kPi) {
      std::ostringstream msg;
      msg << "theta jumps by more than pi across the E stencil at kappa = "
          << kappa << "; retry with fd_step below " << options.fd_step / 10;
      throw std::runtime_error(msg.str());
    }
    table[static_cast<std::size_t>(j)] = (plus - minus) / (2.0L * h);
  }
  long double factor = 4.0L;
  for (int level = 1; level <= levels; ++level, factor *= 4.0L) {
    for (int j = levels; j >= level; --j) {
      const auto i = static_cast<std::size_t>(j);
      table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0L);
    }
  }
  out.t_theta_part = static_cast<double>(table.back());
  out.t_quantum = out.t_free_part + out.t_theta_part;
  out.max_unitarity_defect = defect;
  return out;
}

double peres_time_norm_identity(double kappa, double atilde,
                                std::optional<GridSpec> grid) {
  GridSpec g = grid ? *grid : default_grid(kappa);
  g.nodes += g.nodes % 2;  // Simpson needs an even count
  const long double h = 1.0L / static_cast<long double>(g.nodes);
  long double simpson = 0.0L;
  const auto bv = solve_interior<long double>(
      kappa, atilde, g, [&](std::size_t n, long double u) {
        const long double weight =
            (n == 0 || n == g.nodes) ? 1.0L : (n % 2 ? 4.0L : 2.0L);
        simpson += weight * u * u;
      });
  const long double norm = simpson * h / 3.0L;
  const long double k = kappa;
  // T = 2 (2 k I - u u'/k) / (u'^2 + k^2 u^2)
  const long double t = 2.0L * (2.0L * k * norm - bv.u * bv.du / k) /
                        (bv.du * bv.du + k * k * bv.u * bv.u);
  return static_cast<double>(t);
}

}  // namespace tidal
