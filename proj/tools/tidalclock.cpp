#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tidalclock/acceptance.hpp"
#include "tidalclock/classical.hpp"
#include "tidalclock/report.hpp"
#include "tidalclock/scenario.hpp"
#include "tidalclock/stationary.hpp"
#include "tidalclock/wavepacket.hpp"

namespace {

using namespace tidal;

struct ScenarioFlags {
  bool scaled = false;
  std::optional<double> kappa;
  std::optional<double> atilde;
  std::string config;
  std::optional<double> grav_const, central_mass, central_radius, particle_mass,
      baseline_b, wavenumber_k, energy_E, hbar;
  std::string direction;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--scaled", scaled, "take kappa and atilde directly");
    cmd->add_option("--kappa", kappa, "scaled wavenumber k b");
    cmd->add_option("--atilde", atilde, "scaled tide 2 m alpha b^4 / hbar^2");
    cmd->add_option("--config", config, "key = value scenario file");
    cmd->add_option("--grav_const", grav_const);
    cmd->add_option("--central_mass", central_mass);
    cmd->add_option("--central_radius", central_radius);
    cmd->add_option("--particle_mass", particle_mass);
    cmd->add_option("--baseline_b", baseline_b);
    cmd->add_option("--wavenumber_k", wavenumber_k);
    cmd->add_option("--energy_E", energy_E);
    cmd->add_option("--hbar", hbar);
    cmd->add_option("--direction", direction, "upward or downward");
  }

  // Scaled pair plus, for dimensional input, the scenario used to convert back.
  std::pair<DimensionlessScenario, std::optional<PhysicalScenario>> resolve() const {
    if (scaled) {
      if (!kappa || !atilde) throw CLI::ValidationError("--scaled needs --kappa and --atilde");
      DimensionlessScenario d{*kappa, *atilde, Direction::Upward};
      if (!direction.empty()) d.direction = parse_direction(direction);
      return {d, std::nullopt};
    }
    const bool any_field = grav_const || central_mass || central_radius || particle_mass ||
                           baseline_b || wavenumber_k || energy_E || hbar;
    if (config.empty() && !any_field) {
      throw CLI::ValidationError("no scenario: use --scaled, --config or the dimensional flags");
    }
    PhysicalScenario s;
    if (!config.empty()) s = load_scenario(config);
    auto set = [](double& field, const std::optional<double>& flag) {
      if (flag) field = *flag;
    };
    set(s.grav_const, grav_const);
    set(s.central_mass, central_mass);
    set(s.central_radius, central_radius);
    set(s.particle_mass, particle_mass);
    set(s.baseline_b, baseline_b);
    set(s.hbar, hbar);
    if (wavenumber_k) {
      s.wavenumber_k = wavenumber_k;
      s.energy_E.reset();
    }
    if (energy_E) {
      s.energy_E = energy_E;
      s.wavenumber_k.reset();
    }
    if (!direction.empty()) s.direction = parse_direction(direction);
    s.validate();
    return {nondimensionalize(s), s};
  }
};

int cmd_report(const ScenarioFlags& flags, const std::string& engines,
               const std::string& csv_path, const EvaluationOptions& base) {
  const auto [d, physical] = flags.resolve();
  EvaluationOptions options = base;
  options.engines = parse_engines(engines);
  const auto report = evaluate_point(d.kappa, d.atilde, options);
  write_table(std::cout, report);
  if (physical) {
    std::cout << "time unit m b^2/hbar = " << std::setprecision(6)
              << physical->time_unit() << " s\n";
  }
  if (csv_path == "-") {
    write_csv_header(std::cout);
    write_csv_row(std::cout, report);
  } else if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    write_csv_header(out);
    write_csv_row(out, report);
  }
  return report_exit_code(report);
}

int cmd_sweep(SweepSpec spec, const std::string& axis, const std::string& scale,
              const std::string& engines, const std::string& output) {
  if (axis == "kappa") {
    spec.axis = Axis::Kappa;
  } else if (axis == "atilde") {
    spec.axis = Axis::Atilde;
  } else {
    throw CLI::ValidationError("--axis must be kappa or atilde");
  }
  if (scale == "linear") {
    spec.scale = Scale::Linear;
  } else if (scale == "log") {
    spec.scale = Scale::Log;
  } else {
    throw CLI::ValidationError("--scale must be linear or log");
  }
  spec.evaluation.engines = parse_engines(engines);
  spec.validate();
  std::ofstream file;
  if (output != "-") {
    file.open(output);
    if (!file) throw std::runtime_error("cannot write " + output);
  }
  std::ostream& out = output == "-" ? std::cout : file;
  const auto rows = run_sweep(spec);
  write_sweep_csv(out, spec, rows);
  int code = 0;
  for (const auto& r : rows) code = std::max(code, report_exit_code(r) == 2 ? 2 : 0);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.errors.empty() ? 0 : 1;
  if (failed) std::cerr << failed << " of " << rows.size() << " points recorded errors\n";
  return code;
}

int cmd_wavepacket(const GaussianPacket& packet, double atilde, RunParams params,
                   const std::string& flux_csv) {
  const auto run = propagate(packet, atilde, params);
  const double t = arrival_time(run);
  const PiecewisePotential<> v(atilde);
  const double classical = transit_exact(packet.central_kappa, v);
  const double peres = peres_transit_time(packet.central_kappa, atilde).t_quantum;
  std::cout << std::setprecision(6) << "arrival_time        " << t << '\n'
            << "t_classical_exact   " << classical << "  (rel " << t / classical - 1.0 << ")\n"
            << "t_quantum_peres     " << peres << "  (rel " << t / peres - 1.0 << ")\n"
            << "norm drift          " << run.max_norm_drift << '\n'
            << "grid                " << run.grid_nodes << " nodes on [" << run.x_left
            << ", 0], dt = " << run.timestep << ", " << run.times.size() - 1 << " steps\n";
  if (!flux_csv.empty()) {
    std::ofstream out(flux_csv);
    if (!out) throw std::runtime_error("cannot write " + flux_csv);
    write_flux_csv(out, run);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transit-time clock in a tidal field: classical, stationary, "
               "perturbative and wave-packet engines"};
  app.set_version_flag("--version", std::string(TIDALCLOCK_VERSION));
  app.require_subcommand(1);

  ScenarioFlags report_flags;
  std::string report_engines = "classical,stationary,perturbation";
  std::string report_csv;
  EvaluationOptions report_options;
  auto* report = app.add_subcommand("report", "evaluate one point and print a table");
  report_flags.attach(report);
  report->add_option("--engines", report_engines, "comma list or 'all'");
  report->add_option("--csv", report_csv, "write header and row ('-' for stdout)");
  report->add_option("--fd-step", report_options.fd_step,
                     "relative energy step of the Peres clock");
  report->add_option("--tprime-band", report_options.tolerances.tprime_band,
                     "allowed relative gap between measured and closed-form T'");
  report->add_option("--theta-band", report_options.tolerances.theta_band,
                     "allowed relative gap between exact and first-order theta");

  SweepSpec spec;
  std::string axis = "kappa", scale = "linear", sweep_engines = "classical,stationary,perturbation";
  std::string output;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter range into CSV");
  sweep->add_option("--axis", axis, "kappa or atilde");
  sweep->add_option("--lo", spec.lo)->required();
  sweep->add_option("--hi", spec.hi)->required();
  sweep->add_option("--points", spec.points);
  sweep->add_option("--scale", scale, "linear or log");
  sweep->add_option("--fixed", spec.fixed, "value of the parameter not swept")->required();
  sweep->add_option("--engines", sweep_engines, "comma list or 'all'");
  sweep->add_option("--threads", spec.threads, "0 uses every core");
  sweep->add_option("--fd-step", spec.evaluation.fd_step);
  sweep->add_option("--output,-o", output, "CSV path ('-' for stdout)")->required();

  GaussianPacket packet;
  double packet_atilde = -0.02;
  RunParams params;
  std::string flux_csv;
  auto* wave = app.add_subcommand("wavepacket", "propagate a Gaussian packet against the wall");
  wave->add_option("--kappa", packet.central_kappa);
  wave->add_option("--atilde", packet_atilde);
  wave->add_option("--sigma", packet.width_sigma);
  wave->add_option("--x0", packet.center_x0);
  wave->add_option("--dx", params.dx);
  wave->add_option("--dt", params.dt);
  wave->add_option("--flux-csv", flux_csv, "write t,flux at the start line");

  bool coarse = false;
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_flag("--coarse", coarse, "negative control on the coarsest admissible grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*report) return cmd_report(report_flags, report_engines, report_csv, report_options);
    if (*sweep) return cmd_sweep(spec, axis, scale, sweep_engines, output);
    if (*wave) return cmd_wavepacket(packet, packet_atilde, params, flux_csv);
    if (*validate) {
      AcceptanceOptions options;
      options.coarse = coarse;
      return print_acceptance(std::cout, run_acceptance(options)) ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
