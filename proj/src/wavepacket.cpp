#include "tidalclock/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Core>

#include "tidalclock/potential.hpp"

namespace tidal {

namespace {

using cplx = std::complex<double>;

// (1 + i dt H / 2) psi_new = (1 - i dt H / 2) psi_old with H = -(1/2) d2/dx2 + V,
// Dirichlet zeros at both end nodes. Thomas factors are computed once.
class CrankNicolson {
 public:
  CrankNicolson(const Eigen::VectorXd& potential, double dx, double dt)
      : n_(potential.size()) {
    const cplx half_i_dt(0.0, 0.5 * dt);
    off_ = half_i_dt * (-0.5 / (dx * dx));
    lhs_diag_.resize(n_);
    rhs_diag_.resize(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      const double h_diag = 1.0 / (dx * dx) + potential[j];
      lhs_diag_[j] = 1.0 + half_i_dt * h_diag;
      rhs_diag_[j] = 1.0 - half_i_dt * h_diag;
    }
    // unknowns are the interior nodes 1 .. n-2
    c_prime_.resize(n_);
    denom_.resize(n_);
    denom_[1] = lhs_diag_[1];
    c_prime_[1] = off_ / denom_[1];
    for (Eigen::Index j = 2; j < n_ - 1; ++j) {
      denom_[j] = lhs_diag_[j] - off_ * c_prime_[j - 1];
      c_prime_[j] = off_ / denom_[j];
    }
    scratch_.resize(n_);
  }

  void step(Eigen::VectorXcd& psi) {
    const Eigen::Index last = n_ - 2;
    for (Eigen::Index j = 1; j <= last; ++j) {
      const cplx r = rhs_diag_[j] * psi[j] - off_ * (psi[j - 1] + psi[j + 1]);
      const cplx carried = j == 1 ? cplx(0.0) : off_ * scratch_[j - 1];
      scratch_[j] = (r - carried) / denom_[j];
    }
    psi[last] = scratch_[last];
    for (Eigen::Index j = last - 1; j >= 1; --j) {
      psi[j] = scratch_[j] - c_prime_[j] * psi[j + 1];
    }
    psi[0] = 0.0;
    psi[n_ - 1] = 0.0;
  }

 private:
  Eigen::Index n_;
  cplx off_;
  Eigen::VectorXcd lhs_diag_, rhs_diag_, c_prime_, denom_, scratch_;
};

double spread_width(double sigma, double t) {
  const double s = t / (2.0 * sigma * sigma);
  return sigma * std::sqrt(1.0 + s * s);
}

double norm_of(const Eigen::VectorXcd& psi, double dx) {
  return psi.squaredNorm() * dx;
}

double flux_at(const Eigen::VectorXcd& psi, Eigen::Index m, double dx) {
  const cplx grad = (psi[m + 1] - psi[m - 1]) / (2.0 * dx);
  return (std::conj(psi[m]) * grad).imag();
}

}  // namespace

void GaussianPacket::validate() const {
  std::ostringstream msg;
  if (!(width_sigma > 0.0)) {
    msg << "packet width must be positive, got " << width_sigma;
  } else if (!(central_kappa * width_sigma >= 5.0)) {
    msg << "kappa * sigma = " << central_kappa * width_sigma
        << " is below 5; the packet is not directional enough";
  } else if (!(center_x0 + 4.0 * width_sigma < -1.0)) {
    msg << "packet centred at " << center_x0 << " with width " << width_sigma
        << " overlaps the start line; need x0 + 4 sigma < -1";
  }
  if (!msg.str().empty()) throw std::domain_error(msg.str());
}

PropagationRun propagate(const GaussianPacket& packet, double atilde,
                         const RunParams& params) {
  packet.validate();
  const double kappa = packet.central_kappa;
  const double sigma = packet.width_sigma;
  const double x0 = packet.center_x0;
  if (!(params.dx > 0.0) || !(params.dt > 0.0)) {
    throw std::invalid_argument("dx and dt must be positive");
  }
  const double per_unit = 1.0 / params.dx;
  const auto unit_nodes = static_cast<Eigen::Index>(std::llround(per_unit));
  if (std::abs(per_unit - static_cast<double>(unit_nodes)) > 1e-9 * per_unit) {
    throw std::invalid_argument("dx must divide the unit interval exactly");
  }
  if (kappa * params.dx > 0.1) {
    std::ostringstream msg;
    msg << "dx = " << params.dx << " under-resolves kappa = " << kappa
        << "; need dx <= " << 0.1 / kappa;
    throw std::invalid_argument(msg.str());
  }
  const double dx = params.dx;
  const double dt = params.dt;

  const double t_centre_back = (1.0 - x0) / kappa;
  const double t_end =
      params.t_end.value_or(t_centre_back + 8.0 * spread_width(sigma, t_centre_back) / kappa);
  const double final_width = spread_width(sigma, t_end);
  const double reflected_reach = -1.0 - kappa * std::max(0.0, t_end - t_centre_back);
  const double x_left_wanted =
      params.x_left.value_or(std::min(x0, reflected_reach) - 12.0 * final_width);
  if (!(x_left_wanted < x0 - 4.0 * sigma)) {
    throw std::invalid_argument("x_left must lie to the left of the packet");
  }
  const double x_right = x0 + kappa * t_end + 12.0 * final_width;

  // both grids start at x_left and share nodes up to x = 0
  const auto wall_node = static_cast<Eigen::Index>(std::ceil(-x_left_wanted / dx));
  const double x_left = -static_cast<double>(wall_node) * dx;
  const Eigen::Index start_line = wall_node - unit_nodes;
  const Eigen::Index n_wall = wall_node + 1;
  const Eigen::Index n_free =
      wall_node + static_cast<Eigen::Index>(std::ceil(x_right / dx)) + 1;

  const PiecewisePotential<> v(atilde);
  Eigen::VectorXd pot_wall(n_wall);
  for (Eigen::Index j = 0; j < n_wall; ++j) {
    const double x = x_left + static_cast<double>(j) * dx;
    pot_wall[j] = x < 0.0 ? v.energy(x) : 0.0;
  }
  const Eigen::VectorXd pot_free = Eigen::VectorXd::Zero(n_free);

  Eigen::VectorXcd psi_wall = Eigen::VectorXcd::Zero(n_wall);
  Eigen::VectorXcd psi_free = Eigen::VectorXcd::Zero(n_free);
  const cplx i(0.0, 1.0);
  for (Eigen::Index j = 1; j < n_free - 1; ++j) {
    const double x = x_left + static_cast<double>(j) * dx;
    const double z = (x - x0) / sigma;
    psi_free[j] = std::exp(-0.25 * z * z + i * kappa * x);
  }
  psi_free /= std::sqrt(norm_of(psi_free, dx));
  psi_wall.segment(1, n_wall - 2) = psi_free.segment(1, n_wall - 2);

  PropagationRun run;
  run.packet = packet;
  run.atilde = atilde;
  run.x_left = x_left;
  run.grid_nodes = static_cast<std::size_t>(n_wall);
  run.dx = dx;
  run.timestep = dt;

  CrankNicolson stepper_wall(pot_wall, dx, dt);
  CrankNicolson stepper_free(pot_free, dx, dt);
  const double norm_wall0 = norm_of(psi_wall, dx);
  const double norm_free0 = norm_of(psi_free, dx);

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  run.times.reserve(steps + 1);
  run.flux_reflected.reserve(steps + 1);
  run.flux_incident.reserve(steps + 1);
  run.norm_history.reserve(steps + 1);

  Eigen::VectorXcd reflected(3);
  for (std::size_t n = 0;; ++n) {
    const double t = static_cast<double>(n) * dt;
    reflected = psi_wall.segment(start_line - 1, 3) - psi_free.segment(start_line - 1, 3);
    run.times.push_back(t);
    run.flux_reflected.push_back(-flux_at(reflected, 1, dx));
    run.flux_incident.push_back(flux_at(psi_free, start_line, dx));
    const double norm_wall = norm_of(psi_wall, dx);
    run.norm_history.push_back(norm_wall);

    const double drift = std::max(std::abs(norm_wall - norm_wall0) / norm_wall0,
                                  std::abs(norm_of(psi_free, dx) - norm_free0) / norm_free0);
    run.max_norm_drift = std::max(run.max_norm_drift, drift);
    if (drift > params.max_norm_drift) {
      std::ostringstream msg;
      msg << "norm drift " << drift << " at t = " << t << " exceeds "
          << params.max_norm_drift << " (dx = " << dx << ", dt = " << dt << ")";
      throw std::runtime_error(msg.str());
    }
    const double edge = std::max({std::norm(psi_wall[1]), std::norm(psi_free[1]),
                                  std::norm(psi_free[n_free - 2])});
    run.max_boundary_density = std::max(run.max_boundary_density, edge);
    if (edge > params.contamination_limit) {
      std::ostringstream msg;
      msg << "probability density " << edge << " reached the domain boundary at t = "
          << t << "; enlarge the domain (x_left = " << x_left << ")";
      throw std::runtime_error(msg.str());
    }
    if (n == steps) break;
    stepper_wall.step(psi_wall);
    stepper_free.step(psi_free);
  }
  return run;
}

double arrival_time(const PropagationRun& run) {
  const auto& t = run.times;
  const auto& j = run.flux_reflected;
  if (t.size() < 3) throw std::domain_error("run too short to define an arrival");

  const auto peak_it = std::max_element(j.begin(), j.end());
  const auto peak = static_cast<std::size_t>(peak_it - j.begin());
  const double incident_peak =
      *std::max_element(run.flux_incident.begin(), run.flux_incident.end());
  const double kappa_sigma = run.packet.central_kappa * run.packet.width_sigma;
  if (run.flux_incident[peak] > 0.01 * incident_peak) {
    std::ostringstream msg;
    msg << "incident and reflected flux windows overlap at x = -1 (kappa * sigma = "
        << kappa_sigma << "); use a narrower or faster packet";
    throw std::domain_error(msg.str());
  }
  if (j.back() > 1e-4 * *peak_it) {
    throw std::domain_error(
        "reflected flux has not passed x = -1 when the run ends; extend t_end");
  }

  double weight = 0.0;
  double moment = 0.0;
  for (std::size_t n = 1; n < t.size(); ++n) {
    const double a = std::max(0.0, j[n - 1]);
    const double b = std::max(0.0, j[n]);
    const double h = t[n] - t[n - 1];
    weight += 0.5 * h * (a + b);
    moment += 0.5 * h * (a * t[n - 1] + b * t[n]);
  }
  if (!(weight > 0.0)) throw std::domain_error("no reflected flux recorded");
  const double run_up = (-1.0 - run.packet.center_x0) / run.packet.central_kappa;
  return moment / weight - run_up;
}

void write_flux_csv(std::ostream& out, const PropagationRun& run) {
  out << "t,flux\n";
  out.precision(12);
  for (std::size_t n = 0; n < run.times.size(); ++n) {
    out << run.times[n] << ',' << run.flux_reflected[n] + 0.0 << '\n';
  }
}

}  // namespace tidal
