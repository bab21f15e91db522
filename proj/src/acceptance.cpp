#include "tidalclock/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "tidalclock/classical.hpp"
#include "tidalclock/perturbation.hpp"
#include "tidalclock/scenario.hpp"
#include "tidalclock/stationary.hpp"
#include "tidalclock/wavepacket.hpp"

namespace tidal {

namespace {

std::string sci(double v, int digits = 3) {
  std::ostringstream s;
  s << std::setprecision(digits) << std::scientific << v;
  return s.str();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << std::fixed << v;
  return s.str();
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_points(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
  }
  return v;
}

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& options) : options_(options) {}

  GridSpec grid(double kappa) const {
    return options_.coarse ? GridSpec{required_nodes(kappa)} : default_grid(kappa);
  }

  ClockResult clock(double kappa, double atilde) {
    ClockOptions o;
    o.grid = grid(kappa);
    auto c = peres_transit_time(kappa, atilde, o);
    max_defect_ = std::max(max_defect_, c.max_unitarity_defect);
    ++stationary_calls_;
    return c;
  }

  PhaseResult phase(double kappa, double atilde) {
    auto p = theta_exact(kappa, atilde, grid(kappa));
    max_defect_ = std::max(max_defect_, p.unitarity_defect());
    ++stationary_calls_;
    return p;
  }

  CriterionResult free_particle() {
    CriterionResult r{1, "free-particle exactness", "", "", false};
    double worst_t = 0.0, worst_theta = 0.0;
    for (double kappa : {0.5, 2.0, 5.0, 20.0, 100.0}) {
      worst_t = std::max(worst_t, rel(clock(kappa, 0.0).t_quantum, 2.0 / kappa));
      worst_theta = std::max(worst_theta, std::abs(phase(kappa, 0.0).theta));
    }
    r.measured = "max rel |T - 2/kappa| = " + sci(worst_t) + ", max |theta| = " + sci(worst_theta);
    r.required = "1e-8, 1e-10";
    r.passed = worst_t <= 1e-8 && worst_theta <= 1e-10;
    return r;
  }

  CriterionResult classical_pair() {
    CriterionResult r{2, "classical quadrature vs trajectory", "", "", false};
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> kappa_dist(1.0, 50.0);
    std::uniform_real_distribution<double> atilde_dist(-0.5, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double kappa = kappa_dist(rng);
      const PiecewisePotential<> v(atilde_dist(rng));
      worst = std::max(worst, rel(transit_exact(kappa, v), trajectory_oracle(kappa, v)));
    }
    r.measured = "max rel gap over 50 random points = " + sci(worst);
    r.required = "1e-8";
    r.passed = worst <= 1e-8;
    return r;
  }

  CriterionResult coincidence() {
    CriterionResult r{3, "quantum-classical coincidence", "", "", false};
    const double atilde = -0.02;
    double worst_band = 0.0;
    double match_k20 = 0.0;
    for (double kappa : {20.0, 50.0, 100.0}) {
      const double residual =
          clock(kappa, atilde).t_quantum - transit_exact(kappa, PiecewisePotential<>(atilde));
      const double tp = t_prime(kappa, atilde);
      worst_band = std::max(worst_band, std::abs(residual) / (2.0 * std::abs(tp)));
      if (kappa == 20.0) match_k20 = std::abs(residual / tp - 1.0);
    }
    r.measured = "max |T - T_cl| / 2|T'| = " + fixed(worst_band) +
                 ", |(T - T_cl)/T' - 1| at kappa=20 = " + sci(match_k20);
    r.required = "<= 1, 1e-4";
    r.passed = worst_band <= 1.0 && match_k20 <= 1e-4;
    return r;
  }

  CriterionResult tprime_oracle() {
    CriterionResult r{4, "T' closed form vs finite differences", "", "", false};
    double worst = 0.0;
    for (double kappa : {2.0, 5.0, 10.0, 20.0}) {
      const double closed = t_prime(kappa, -0.02);
      worst = std::max(worst, std::abs(t_prime_finite_difference(kappa, -0.02) / closed - 1.0));
    }
    r.measured = "max rel gap = " + sci(worst);
    r.required = "1e-6";
    r.passed = worst <= 1e-6;
    return r;
  }

  CriterionResult scaling_law() {
    CriterionResult r{5, "T'/T_classical scaling", "", "", false};
    const auto kappas = log_points(10.0, 100.0, 25);
    std::vector<double> fixed_kinematics, fixed_tide;
    for (double kappa : kappas) {
      // classical tidal fraction |atilde| / (2 kappa^2) held at its kappa = 10 value
      const double atilde = -0.02 * (kappa / 10.0) * (kappa / 10.0);
      fixed_kinematics.push_back(t_prime(kappa, atilde) /
                                 transit_exact(kappa, PiecewisePotential<>(atilde)));
      fixed_tide.push_back(t_prime(kappa, -0.02) /
                           transit_exact(kappa, PiecewisePotential<>(-0.02)));
    }
    const double slope = loglog_slope(kappas, fixed_kinematics);
    const double slope_fixed_tide = loglog_slope(kappas, fixed_tide);
    r.measured = "slope = " + fixed(slope) + " at fixed v, b, GM/R^3 (" +
                 fixed(slope_fixed_tide) + " at fixed atilde)";
    r.required = "-2 +/- 0.1";
    r.passed = std::abs(slope + 2.0) <= 0.1;
    return r;
  }

  CriterionResult identities() {
    CriterionResult r{6, "closed-form twins", "", "", false};
    double worst = 0.0;
    for (double b : {1e-5, 1e-3, 0.1, 1.0}) {
      for (double v : {1e-3, 0.1, 1.0, 10.0}) {
        PhysicalScenario up = earth_rubidium_scenario(b, v);
        PhysicalScenario down = up;
        down.direction = Direction::Downward;
        const double b2 = b * b;
        const double theta_up = dimensional::theta_highk_wavenumber_form(up);
        worst = std::max(worst, rel(theta_up, dimensional::theta_highk_clock_form(up)));
        worst = std::max(worst, rel(dimensional::transit_highk_energy_form(up),
                                    dimensional::transit_highk_velocity_form(up)));
        const double delta = dimensional::delta_theta_updown(up);
        worst = std::max(worst, rel(delta, 2.0 * theta_up));
        worst = std::max(worst, rel(delta, theta_up - dimensional::theta_highk_wavenumber_form(down)));
        worst = std::max(worst, rel(dimensional::chiao_phase(up, 2.0 / 3.0 * b2), delta));
      }
    }
    for (double kappa : {0.5, 5.0, 50.0}) {
      const double atilde = -0.02;
      const double theta = theta_highk_closed(kappa, atilde);
      worst = std::max(worst, rel(theta, theta_highk_clock_form(kappa, atilde)));
      worst = std::max(worst, rel(transit_highk(kappa, PiecewisePotential<>(atilde)),
                                  transit_highk_velocity_form(kappa, atilde)));
      worst = std::max(worst, rel(delta_theta_updown(kappa, atilde), 2.0 * theta));
      worst = std::max(worst, rel(chiao_phase(atilde, transit_zero(kappa)),
                                  delta_theta_updown(kappa, atilde)));
    }
    r.measured = "max rel gap = " + sci(worst);
    r.required = "1e-14";
    r.passed = worst <= 1e-14;
    return r;
  }

  CriterionResult ladder() {
    CriterionResult r{7, "first-order convergence ladder", "", "", false};
    std::vector<double> gaps;
    for (double atilde : {-0.005, -0.01, -0.02, -0.04}) {
      const double first = theta_first_order(5.0, PiecewisePotential<>(atilde)).theta_quadrature;
      gaps.push_back(std::abs(phase(5.0, atilde).theta - first));
    }
    std::string ratios;
    bool ok = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
      const double q = gaps[i] / gaps[i - 1];
      ok = ok && std::abs(q - 4.0) <= 0.5;
      ratios += (i > 1 ? ", " : "") + fixed(q, 3);
    }
    r.measured = "gap ratios = " + ratios;
    r.required = "4 +/- 0.5";
    r.passed = ok;
    return r;
  }

  CriterionResult unitarity() const {
    CriterionResult r{8, "unitarity of r", "", "", false};
    r.measured = "max ||r| - 1| = " + sci(max_defect_) + " over " +
                 std::to_string(stationary_calls_) + " stationary evaluations";
    r.required = "1e-10";
    r.passed = stationary_calls_ > 0 && max_defect_ <= 1e-10;
    return r;
  }

  CriterionResult wavepacket() {
    CriterionResult r{9, "wave-packet correspondence", "", "", false};
    double worst = 0.0, drift = 0.0;
    for (double atilde : {0.0, -0.02}) {
      const auto run = propagate(GaussianPacket{-4.0, 0.5, 20.0}, atilde);
      const double t = arrival_time(run);
      worst = std::max(worst, rel(t, transit_exact(20.0, PiecewisePotential<>(atilde))));
      worst = std::max(worst, rel(t, clock(20.0, atilde).t_quantum));
      drift = std::max(drift, run.max_norm_drift);
    }
    r.measured = "max rel gap = " + sci(worst) + ", norm drift = " + sci(drift);
    r.required = "0.02, 1e-8";
    r.passed = worst <= 0.02 && drift <= 1e-8;
    return r;
  }

  CriterionResult hbar_mass_audit() {
    CriterionResult r{10, "hbar and m dependence", "", "", false};
    const double v = 1e-3;
    const PhysicalScenario base = earth_rubidium_scenario(1e-5, v);
    auto transit_seconds = [](const PhysicalScenario& s) {
      const auto d = nondimensionalize(s);
      return redimensionalize_time(transit_highk(d.kappa, PiecewisePotential<>(d.atilde)), s);
    };
    auto tprime_seconds = [](const PhysicalScenario& s) {
      const auto d = nondimensionalize(s);
      return redimensionalize_time(t_prime(d.kappa, d.atilde), s);
    };
    auto theta = [](const PhysicalScenario& s) {
      const auto d = nondimensionalize(s);
      return theta_highk_closed(d.kappa, d.atilde);
    };
    double worst_invariance = 0.0, worst_theta = 0.0, worst_tprime = 0.0;
    double smallest_change = INFINITY;
    for (auto [c, d] : {std::pair{2.0, 1.0}, std::pair{1.0, 2.0}, std::pair{0.5, 3.0}}) {
      PhysicalScenario s = base;
      s.hbar *= c;
      s.particle_mass *= d;
      s.wavenumber_k = wavenumber_from_velocity(s.particle_mass, v, s.hbar);
      worst_invariance = std::max(worst_invariance, rel(transit_seconds(s), transit_seconds(base)));
      worst_theta = std::max(worst_theta, rel(theta(s) / theta(base), d / c));
      const double ratio = tprime_seconds(s) / tprime_seconds(base);
      const double predicted = dimensional::t_prime(s) / dimensional::t_prime(base);
      worst_tprime = std::max(worst_tprime, rel(ratio, predicted));
      smallest_change = std::min(smallest_change, std::abs(ratio - 1.0));
    }
    r.measured = "T_highk drift = " + sci(worst_invariance) + ", theta ratio gap = " +
                 sci(worst_theta) + ", T' ratio gap = " + sci(worst_tprime) +
                 ", min |T' ratio - 1| = " + sci(smallest_change);
    r.required = "1e-12 each, T' must change";
    r.passed = worst_invariance <= 1e-12 && worst_theta <= 1e-12 && worst_tprime <= 1e-12 &&
               smallest_change > 1e-6;
    return r;
  }

 private:
  AcceptanceOptions options_;
  double max_defect_ = 0.0;
  std::size_t stationary_calls_ = 0;
};

CriterionResult guarded(int id, const std::function<CriterionResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), std::string("error: ") + e.what(), "-", false};
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Suite suite(options);
  std::vector<CriterionResult> out;
  out.push_back(guarded(1, [&] { return suite.free_particle(); }));
  out.push_back(guarded(2, [&] { return suite.classical_pair(); }));
  out.push_back(guarded(3, [&] { return suite.coincidence(); }));
  out.push_back(guarded(4, [&] { return suite.tprime_oracle(); }));
  out.push_back(guarded(5, [&] { return suite.scaling_law(); }));
  out.push_back(guarded(6, [&] { return suite.identities(); }));
  out.push_back(guarded(7, [&] { return suite.ladder(); }));
  out.push_back(guarded(8, [&] { return suite.unitarity(); }));
  out.push_back(guarded(9, [&] { return suite.wavepacket(); }));
  out.push_back(guarded(10, [&] { return suite.hbar_mass_audit(); }));
  return out;
}

bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.title
        << ": " << r.measured << " (required " << r.required << ")\n";
  }
  return all;
}

}  // namespace tidal
