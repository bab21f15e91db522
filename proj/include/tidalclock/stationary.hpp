#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace tidal {

/// Uniform grid on [-1, 0]; the Numerov recursion runs from the wall outward.
struct GridSpec {
  std::size_t nodes = 2000;
  double step() const { return 1.0 / static_cast<double>(nodes); }
};

/// Minimum admissible node count: 40 nodes per de Broglie wavelength and at
/// least 1000 across the interval.
std::size_t required_nodes(double kappa);

/// Production grid: 400 nodes per unit kappa (>= 2000), even count. Throws
/// std::domain_error when kappa is too large for a direct solve.
GridSpec default_grid(double kappa);

/// u(-1), u'(-1) for the solution with u(0) = 0, u'(0) = 1.
template <typename Scalar>
struct BoundaryValues {
  Scalar u;
  Scalar du;
};

/// Fourth-order Numerov integration of u'' = (atilde (x+1)^2 - kappa^2) u from
/// the wall to the start line.
///
/// The recursion is continued two nodes into the free region so that u' can be
/// taken with the fourth-order Numerov derivative formula at x = -1 - h, where
/// the solution is smooth; the pair is then carried back to x = -1 with the
/// exact free propagator.
///
/// `visit(n, u_n)` is called for every node x_n = -n h on [-1, 0].
template <typename Scalar, class Visitor>
BoundaryValues<Scalar> solve_interior(Scalar kappa, Scalar atilde,
                                      const GridSpec& grid, Visitor&& visit) {
  using std::cos;
  using std::sin;
  if (!(kappa > Scalar(0))) throw std::domain_error("kappa must be positive");
  const std::size_t need = required_nodes(static_cast<double>(kappa));
  if (grid.nodes < need) {
    throw std::invalid_argument(
        "grid too coarse for kappa = " + std::to_string(static_cast<double>(kappa)) +
        ": " + std::to_string(grid.nodes) + " nodes given, at least " +
        std::to_string(need) + " required");
  }

  const std::size_t n_interval = grid.nodes;
  const Scalar h = Scalar(1) / Scalar(n_interval);
  const Scalar h2 = h * h;
  const Scalar k2 = kappa * kappa;

  // f(x_n) with x_n = -n h; s = x + 1 = (N - n) / N exactly on the grid.
  auto f = [&](std::size_t n) -> Scalar {
    if (n >= n_interval) return -k2;
    const Scalar s = Scalar(n_interval - n) / Scalar(n_interval);
    return atilde * s * s - k2;
  };

  // Taylor start u(-h) for u(0) = 0, u'(0) = 1.
  const Scalar f0 = atilde - k2;
  const Scalar df0 = Scalar(2) * atilde;   // df/dx at the wall
  const Scalar ddf0 = Scalar(2) * atilde;  // d2f/dx2
  const Scalar h3 = h2 * h;
  const Scalar h4 = h2 * h2;
  const Scalar y1 = -h - f0 * h3 / Scalar(6) + df0 * h4 / Scalar(12) -
                    (Scalar(3) * ddf0 + f0 * f0) * h4 * h / Scalar(120) +
                    f0 * df0 * h4 * h2 / Scalar(120);

  // Summed form: z = (1 - h^2 f / 12) y obeys z_{n+1} - 2 z_n + z_{n-1} = h^2 f_n y_n.
  // Both running sums are Kahan-compensated to keep roundoff growth near sqrt(N).
  auto kahan_add = [](Scalar& sum, Scalar& carry, Scalar term) {
    const Scalar y = term - carry;
    const Scalar t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  };
  Scalar y_prev = Scalar(0);
  Scalar y_curr = y1;
  Scalar z = (Scalar(1) - h2 * f(1) / Scalar(12)) * y1;
  Scalar z_carry = Scalar(0);
  Scalar delta = z;  // z_1 - z_0, z_0 = 0
  Scalar delta_carry = Scalar(0);
  Scalar y_at_start_line = Scalar(0);
  visit(std::size_t{0}, y_prev);
  visit(std::size_t{1}, y_curr);
  for (std::size_t n = 1; n <= n_interval + 1; ++n) {
    kahan_add(delta, delta_carry, h2 * f(n) * y_curr);
    kahan_add(z, z_carry, delta);
    const Scalar y_next = z / (Scalar(1) - h2 * f(n + 1) / Scalar(12));
    if (n + 1 <= n_interval) visit(n + 1, y_next);
    if (n + 1 == n_interval) y_at_start_line = y_next;
    y_prev = y_curr;
    y_curr = y_next;
  }
  // y_prev = u(-1 - h), y_curr = u(-1 - 2h), y_at_start_line = u(-1)
  const Scalar u_c = y_prev;
  const Scalar du_c = (y_at_start_line - y_curr -
                       h2 / Scalar(6) * (-k2 * y_at_start_line + k2 * y_curr)) /
                      (Scalar(2) * h);
  const Scalar c = cos(kappa * h);
  const Scalar s = sin(kappa * h);
  return {u_c * c + du_c * s / kappa, -kappa * u_c * s + du_c * c};
}

template <typename Scalar>
BoundaryValues<Scalar> solve_interior(Scalar kappa, Scalar atilde,
                                      const GridSpec& grid) {
  return solve_interior(kappa, atilde, grid, [](std::size_t, Scalar) {});
}

/// r = (i kappa - L) / (i kappa + L) with L = u'/u, the amplitude of
/// e^{-i kappa (x+1)} relative to the incident e^{+i kappa (x+1)}. Uses the
/// inverse log-derivative when |u| is the smaller scale.
template <typename Scalar>
std::complex<Scalar> reflection_coefficient(Scalar u, Scalar du, Scalar kappa) {
  using C = std::complex<Scalar>;
  if (u == Scalar(0) && du == Scalar(0)) {
    throw std::invalid_argument("reflection_coefficient: u and u' both vanish");
  }
  const C ik(Scalar(0), kappa);
  if (std::abs(u) * kappa >= std::abs(du)) {
    const C L(du / u, Scalar(0));
    return (ik - L) / (ik + L);
  }
  const C M(u / du, Scalar(0));  // 1/L
  return (ik * M - Scalar(1)) / (ik * M + Scalar(1));
}

struct PhaseResult {
  std::complex<double> reflection_r;
  double theta = 0.0;      // tidal phase, principal value in (-pi, pi]
  double phi_total = 0.0;  // 2 kappa + theta
  GridSpec grid;
  double kappa = 0.0;
  double atilde = 0.0;
  double unitarity_defect() const { return std::abs(std::abs(reflection_r) - 1.0); }
};

struct ClockResult {
  double t_quantum = 0.0;
  double t_free_part = 0.0;
  double t_theta_part = 0.0;
  double fd_step = 0.0;  // relative step on E
  int richardson_order = 0;
  GridSpec grid;
  double max_unitarity_defect = 0.0;
};

struct ClockOptions {
  double fd_step = 1e-5;
  int richardson_levels = 1;
  std::optional<GridSpec> grid;
};

/// theta in extended precision, principal value in (-pi, pi].
long double theta_exact_extended(long double kappa, long double atilde,
                                 const GridSpec& grid,
                                 double* unitarity_defect = nullptr);

PhaseResult theta_exact(double kappa, double atilde,
                        std::optional<GridSpec> grid = std::nullopt);

/// Peres clock T = 2/kappa + d theta / dE, with the theta part from central
/// differences in E and Richardson extrapolation. Every stencil point uses
/// the grid chosen for the centre kappa.
ClockResult peres_transit_time(double kappa, double atilde,
                               const ClockOptions& options = {});

/// Same clock from the closed energy derivative of the log-derivative,
/// dL/dE = 2 * int u^2 dx / u(-1)^2, with no finite differencing.
double peres_time_norm_identity(double kappa, double atilde,
                                std::optional<GridSpec> grid = std::nullopt);

}  // namespace tidal
