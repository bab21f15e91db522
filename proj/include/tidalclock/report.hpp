#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tidalclock/scenario.hpp"

namespace tidal {

enum class Engine { Classical, Stationary, Perturbation, Wavepacket };

struct EngineSet {
  bool classical = true;
  bool stationary = true;
  bool perturbation = true;
  bool wavepacket = false;
};

/// Comma-separated subset of classical, stationary, perturbation, wavepacket
/// (or "all"). Throws std::invalid_argument on unknown names.
EngineSet parse_engines(const std::string& list);

/// One evaluated point. Missing values stay empty and render as NA.
struct TransitReport {
  double kappa = 0.0;
  double atilde = 0.0;
  std::optional<double> t_classical_exact;
  std::optional<double> t_classical_pert;
  std::optional<double> t_quantum_peres;
  std::optional<double> t_highk;
  std::optional<double> t_prime_closed;
  std::optional<double> t_prime_measured;  // t_quantum_peres - t_classical_exact
  std::optional<double> theta_exact;
  std::optional<double> theta_firstorder;
  std::optional<double> delta_theta_updown;
  std::optional<double> chiao_phase;
  std::optional<double> tprime_ratio_k2;  // (t_prime / t_classical) * kappa^2
  std::optional<double> t_wavepacket;
  std::optional<double> unitarity_defect;
  bool quantum_regime = false;
  std::vector<std::string> errors;       // engine failures
  std::vector<std::string> violations;   // cross-engine invariant failures
};

/// Tolerances for the cross-engine checks run on every report.
struct ReportTolerances {
  double identity = 1e-14;       // algebraic twins
  double unitarity = 1e-10;      // | |r| - 1 |
  double tprime_band = 0.05;     // measured vs closed T', relative
  double theta_band = 0.05;      // exact vs first-order theta, relative
};

struct EvaluationOptions {
  EngineSet engines;
  ReportTolerances tolerances;
  double fd_step = 1e-5;
};

TransitReport evaluate_point(double kappa, double atilde,
                             const EvaluationOptions& options = {});

/// 0 ok, 1 engine error, 2 invariant violation.
int report_exit_code(const TransitReport& report);

const std::vector<std::string>& report_columns();
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const TransitReport& report);
void write_table(std::ostream& out, const TransitReport& report);

enum class Axis { Kappa, Atilde };
enum class Scale { Linear, Log };

struct SweepSpec {
  Axis axis = Axis::Kappa;
  double lo = 1.0;
  double hi = 10.0;
  std::size_t points = 10;
  Scale scale = Scale::Linear;
  double fixed = 0.0;  // the parameter that is not swept
  EvaluationOptions evaluation;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Throws std::invalid_argument on lo >= hi, points < 2, or a log range
  /// that crosses zero.
  void validate() const;
  std::vector<double> axis_values() const;
};

/// Evaluates every point (possibly concurrently) and returns the rows in
/// axis order.
std::vector<TransitReport> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<TransitReport>& rows);

}  // namespace tidal
