#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace tidal {

/// Gaussian state exp(-(x - x0)^2 / (4 sigma^2) + i kappa x); |psi|^2 has
/// standard deviation sigma.
struct GaussianPacket {
  double center_x0 = -4.0;
  double width_sigma = 0.5;
  double central_kappa = 20.0;

  /// Throws std::domain_error unless sigma > 0, kappa sigma >= 5 and
  /// x0 + 4 sigma < -1.
  void validate() const;
};

struct RunParams {
  double dx = 2e-3;
  double dt = 5e-5;
  std::optional<double> t_end;   // default: reflected centre crossing + 8 widths
  std::optional<double> x_left;  // default: padded to hold the reflected packet
  double max_norm_drift = 1e-6;
  double contamination_limit = 1e-10;
};

struct PropagationRun {
  GaussianPacket packet;
  double atilde = 0.0;
  double x_left = 0.0;
  std::size_t grid_nodes = 0;  // nodes on [x_left, 0], both ends included
  double dx = 0.0;
  double timestep = 0.0;
  std::vector<double> times;
  std::vector<double> flux_reflected;  // leftward flux of the reflected wave at x = -1
  std::vector<double> flux_incident;   // flux of the same packet with no wall
  std::vector<double> norm_history;
  double max_norm_drift = 0.0;
  double max_boundary_density = 0.0;
};

/// Crank-Nicolson propagation against the hard wall at x = 0. The reflected
/// wave at the start line is isolated by subtracting a wall-free run on the
/// same grid.
///
/// Throws std::runtime_error on norm drift above `max_norm_drift` or when the
/// density at x_left exceeds `contamination_limit`.
PropagationRun propagate(const GaussianPacket& packet, double atilde,
                         const RunParams& params = {});

/// Flux-weighted mean return time at x = -1 minus the free run-up
/// (-1 - x0)/kappa. Throws std::domain_error when the incident and
/// reflected flux windows overlap.
double arrival_time(const PropagationRun& run);

/// Columns t,flux (reflected, leftward positive).
void write_flux_csv(std::ostream& out, const PropagationRun& run);

}  // namespace tidal
