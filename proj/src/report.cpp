#include "tidalclock/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tidalclock/classical.hpp"
#include "tidalclock/perturbation.hpp"
#include "tidalclock/stationary.hpp"
#include "tidalclock/wavepacket.hpp"

namespace tidal {

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string format(double value, int digits) {
  std::ostringstream s;
  s << std::setprecision(digits) << value;
  return s.str();
}

std::string cell(const std::optional<double>& value, int digits) {
  return value ? format(*value, digits) : "NA";
}

std::string csv_quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string engine_list(const EngineSet& e) {
  std::vector<std::string> names;
  if (e.classical) names.emplace_back("classical");
  if (e.stationary) names.emplace_back("stationary");
  if (e.perturbation) names.emplace_back("perturbation");
  if (e.wavepacket) names.emplace_back("wavepacket");
  return join(names, ",");
}

template <class F>
void guarded(TransitReport& r, const char* engine, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    r.errors.push_back(std::string(engine) + ": " + e.what());
  }
}

// Packet used by the report: kappa sigma = 10, centred six widths
// behind the start line.
double wavepacket_transit(double kappa, double atilde) {
  GaussianPacket packet;
  packet.width_sigma = 10.0 / kappa;
  packet.center_x0 = -1.0 - 6.0 * packet.width_sigma;
  packet.central_kappa = kappa;
  RunParams params;
  params.dx = 1.0 / std::max(500.0, std::ceil(25.0 * kappa));
  params.dt = std::min(5e-5, 0.01 / (0.5 * kappa * kappa));
  return arrival_time(propagate(packet, atilde, params));
}

void check_invariants(TransitReport& r, const ReportTolerances& tol) {
  auto violate = [&](const std::string& what, double measured, double allowed) {
    r.violations.push_back(what + " off by " + format(measured, 3) + " (allowed " +
                           format(allowed, 3) + ")");
  };
  if (r.t_highk && r.t_classical_pert) {
    const double gap = relative_gap(*r.t_highk, *r.t_classical_pert);
    if (gap > tol.identity) violate("t_highk vs t_classical_pert", gap, tol.identity);
  }
  if (r.chiao_phase && r.delta_theta_updown) {
    const double gap = relative_gap(*r.chiao_phase, *r.delta_theta_updown);
    if (gap > tol.identity) violate("chiao_phase vs delta_theta_updown", gap, tol.identity);
  }
  if (r.unitarity_defect && *r.unitarity_defect > tol.unitarity) {
    violate("|r| - 1", *r.unitarity_defect, tol.unitarity);
  }
  // the first-order bands only hold while the tide is weak on the scale of kappa
  const bool weak_tide = std::abs(r.atilde) <= 0.2 * r.kappa;
  if (!weak_tide) return;
  if (r.t_prime_measured && r.t_prime_closed && r.t_classical_exact) {
    const double allowed =
        tol.tprime_band * std::abs(*r.t_prime_closed) + 1e-12 * *r.t_classical_exact;
    const double gap = std::abs(*r.t_prime_measured - *r.t_prime_closed);
    if (gap > allowed) violate("t_prime_measured vs t_prime_closed", gap, allowed);
  }
  if (r.theta_exact && r.theta_firstorder) {
    const double allowed = tol.theta_band * std::abs(*r.theta_firstorder) + 1e-12;
    const double gap = std::abs(*r.theta_exact - *r.theta_firstorder);
    if (gap > allowed) violate("theta_exact vs theta_firstorder", gap, allowed);
  }
}

}  // namespace

EngineSet parse_engines(const std::string& list) {
  EngineSet set{false, false, false, false};
  std::stringstream in(list);
  std::string name;
  bool any = false;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    any = true;
    if (name == "all") {
      set = {true, true, true, true};
    } else if (name == "classical") {
      set.classical = true;
    } else if (name == "stationary") {
      set.stationary = true;
    } else if (name == "perturbation") {
      set.perturbation = true;
    } else if (name == "wavepacket") {
      set.wavepacket = true;
    } else {
      throw std::invalid_argument("unknown engine '" + name + "'");
    }
  }
  if (!any) throw std::invalid_argument("no engines selected");
  return set;
}

TransitReport evaluate_point(double kappa, double atilde,
                             const EvaluationOptions& options) {
  TransitReport r;
  r.kappa = kappa;
  r.atilde = atilde;
  const PiecewisePotential<> potential(atilde);
  const EngineSet& e = options.engines;

  if (e.classical) {
    guarded(r, "classical", [&] {
      r.t_classical_pert = transit_perturbative(kappa, potential);
      r.t_classical_exact = transit_exact(kappa, potential);
    });
  }
  if (e.stationary) {
    guarded(r, "stationary", [&] {
      ClockOptions clock;
      clock.fd_step = options.fd_step;
      const auto c = peres_transit_time(kappa, atilde, clock);
      const auto p = theta_exact(kappa, atilde, c.grid);
      r.t_quantum_peres = c.t_quantum;
      r.theta_exact = p.theta;
      r.unitarity_defect = std::max(c.max_unitarity_defect, p.unitarity_defect());
    });
  }
  if (e.perturbation) {
    guarded(r, "perturbation", [&] {
      const auto phase = theta_first_order(kappa, potential);
      r.theta_firstorder = phase.theta_quadrature;
      r.t_highk = transit_highk(kappa, potential);
      r.t_prime_closed = t_prime(kappa, atilde);
      r.delta_theta_updown = delta_theta_updown(kappa, atilde);
      r.chiao_phase = chiao_phase(atilde, transit_zero(kappa));
      r.tprime_ratio_k2 =
          *r.t_prime_closed / transit_perturbative(kappa, potential) * kappa * kappa;
      const double classical_shift = transit_perturbative(kappa, potential) -
                                     transit_zero(kappa);
      r.quantum_regime = classical_shift != 0.0 &&
                         std::abs(*r.t_prime_closed) >= 0.5 * std::abs(classical_shift);
    });
  }
  if (e.wavepacket) {
    guarded(r, "wavepacket", [&] { r.t_wavepacket = wavepacket_transit(kappa, atilde); });
  }
  if (r.t_quantum_peres && r.t_classical_exact) {
    r.t_prime_measured = *r.t_quantum_peres - *r.t_classical_exact;
  }
  check_invariants(r, options.tolerances);
  return r;
}

int report_exit_code(const TransitReport& report) {
  if (!report.errors.empty()) return 1;
  if (!report.violations.empty()) return 2;
  return 0;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = {
      "kappa",           "atilde",           "t_classical_exact",
      "t_classical_pert", "t_quantum_peres",  "t_highk",
      "t_prime_closed",  "t_prime_measured", "theta_exact",
      "theta_firstorder", "delta_theta_updown", "chiao_phase",
      "tprime_ratio_k2", "t_wavepacket",     "quantum_regime",
      "error"};
  return columns;
}

void write_csv_header(std::ostream& out) { out << join(report_columns(), ",") << '\n'; }

void write_csv_row(std::ostream& out, const TransitReport& r) {
  constexpr int d = 12;
  std::vector<std::string> problems = r.errors;
  problems.insert(problems.end(), r.violations.begin(), r.violations.end());
  out << format(r.kappa, d) << ',' << format(r.atilde, d) << ','
      << cell(r.t_classical_exact, d) << ',' << cell(r.t_classical_pert, d) << ','
      << cell(r.t_quantum_peres, d) << ',' << cell(r.t_highk, d) << ','
      << cell(r.t_prime_closed, d) << ',' << cell(r.t_prime_measured, d) << ','
      << cell(r.theta_exact, d) << ',' << cell(r.theta_firstorder, d) << ','
      << cell(r.delta_theta_updown, d) << ',' << cell(r.chiao_phase, d) << ','
      << cell(r.tprime_ratio_k2, d) << ',' << cell(r.t_wavepacket, d) << ','
      << (r.t_prime_closed ? (r.quantum_regime ? "1" : "0") : "NA") << ','
      << (problems.empty() ? "NA" : csv_quote(join(problems, "; "))) << '\n';
}

void write_table(std::ostream& out, const TransitReport& r) {
  constexpr int d = 6;
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"kappa", format(r.kappa, d)},
      {"atilde", format(r.atilde, d)},
      {"t_classical_exact", cell(r.t_classical_exact, d)},
      {"t_classical_pert", cell(r.t_classical_pert, d)},
      {"t_quantum_peres", cell(r.t_quantum_peres, d)},
      {"t_highk", cell(r.t_highk, d)},
      {"t_prime_closed", cell(r.t_prime_closed, d)},
      {"t_prime_measured", cell(r.t_prime_measured, d)},
      {"theta_exact", cell(r.theta_exact, d)},
      {"theta_firstorder", cell(r.theta_firstorder, d)},
      {"delta_theta_updown", cell(r.delta_theta_updown, d)},
      {"chiao_phase", cell(r.chiao_phase, d)},
      {"tprime_ratio_k2", cell(r.tprime_ratio_k2, d)},
      {"t_wavepacket", cell(r.t_wavepacket, d)},
  };
  for (const auto& [name, value] : rows) {
    out << std::left << std::setw(20) << name << std::right << std::setw(14) << value
        << '\n';
  }
  if (r.quantum_regime) out << "note: quantum regime, |T'| is comparable to the classical tidal shift\n";
  for (const auto& e : r.errors) out << "error: " << e << '\n';
  for (const auto& v : r.violations) out << "violation: " << v << '\n';
}

void SweepSpec::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("sweep range needs lo < hi");
  if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  if (axis == Axis::Kappa && !(lo > 0.0)) {
    throw std::invalid_argument("kappa sweep must stay positive");
  }
  if (scale == Scale::Log && !(lo > 0.0) && !(axis == Axis::Atilde && hi < 0.0)) {
    throw std::invalid_argument(
        "log sweep needs a range of one sign (negative only for atilde)");
  }
}

std::vector<double> SweepSpec::axis_values() const {
  validate();
  std::vector<double> v(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / last;
    if (scale == Scale::Linear) {
      v[i] = lo + f * (hi - lo);
    } else {
      const double sign = lo > 0.0 ? 1.0 : -1.0;
      const double a = std::log(std::abs(lo));
      const double b = std::log(std::abs(hi));
      v[i] = sign * std::exp(a + f * (b - a));
    }
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<TransitReport> run_sweep(const SweepSpec& spec) {
  const auto values = spec.axis_values();
  std::vector<TransitReport> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      const double kappa = spec.axis == Axis::Kappa ? values[i] : spec.fixed;
      const double atilde = spec.axis == Axis::Kappa ? spec.fixed : values[i];
      rows[i] = evaluate_point(kappa, atilde, spec.evaluation);
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(values.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<TransitReport>& rows) {
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
  const auto& tol = spec.evaluation.tolerances;
  out << "# tidalclock " << TIDALCLOCK_VERSION << '\n'
      << "# axis=" << (spec.axis == Axis::Kappa ? "kappa" : "atilde")
      << " scale=" << (spec.scale == Scale::Log ? "log" : "linear") << " lo=" << format(spec.lo, 12)
      << " hi=" << format(spec.hi, 12) << " points=" << spec.points << ' '
      << (spec.axis == Axis::Kappa ? "atilde=" : "kappa=") << format(spec.fixed, 12) << '\n'
      << "# engines=" << engine_list(spec.evaluation.engines) << '\n'
      << "# tolerances identity=" << tol.identity << " unitarity=" << tol.unitarity
      << " tprime_band=" << tol.tprime_band << " theta_band=" << tol.theta_band << '\n'
      << "# stationary grid: max(2000, ceil(400 kappa)) Numerov nodes on [-1, 0], long double\n"
      << "# peres clock: central differences, relative E step " << spec.evaluation.fd_step
      << ", one Richardson level\n"
      << "# quadrature: adaptive Gauss-Kronrod 61, relative tolerance 1e-14\n"
      << "# wavepacket: sigma=10/kappa, x0=-1-6 sigma, dx=1/max(500, ceil(25 kappa)), "
         "dt=min(5e-5, 0.01/E)\n";
}

}  // namespace tidal
