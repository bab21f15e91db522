#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "tidalclock/report.hpp"

using namespace tidal;

namespace {

std::size_t count(const std::string& s, char c) {
  std::size_t n = 0;
  for (char x : s) n += x == c;
  return n;
}

std::string csv_of(const TransitReport& r) {
  std::ostringstream out;
  write_csv_row(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("engine lists") {
  const auto e = parse_engines("classical,wavepacket");
  CHECK(e.classical);
  CHECK(e.wavepacket);
  CHECK_FALSE(e.stationary);
  CHECK(parse_engines("all").perturbation);
  CHECK_THROWS_AS(parse_engines("classical,magic"), std::invalid_argument);
  CHECK_THROWS_AS(parse_engines(""), std::invalid_argument);
}

TEST_CASE("free point: every engine gives the bare time") {
  const auto r = evaluate_point(5.0, 0.0);
  CHECK(*r.t_classical_exact == doctest::Approx(0.4));
  CHECK(*r.t_classical_pert == doctest::Approx(0.4));
  CHECK(*r.t_quantum_peres == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(*r.t_highk == doctest::Approx(0.4));
  CHECK(report_exit_code(r) == 0);
  CHECK_FALSE(r.quantum_regime);
}

TEST_CASE("tidal point is self-consistent") {
  const auto r = evaluate_point(5.0, -0.02);
  CHECK(report_exit_code(r) == 0);
  CHECK(*r.t_prime_measured == doctest::Approx(*r.t_prime_closed).epsilon(5e-3));
  CHECK(*r.tprime_ratio_k2 == doctest::Approx(*r.t_prime_closed / *r.t_classical_pert * 25.0));
  CHECK_FALSE(r.t_wavepacket.has_value());
}

TEST_CASE("long-wavelength point is flagged") {
  const auto r = evaluate_point(0.8, -0.02);
  CHECK(r.quantum_regime);
  CHECK(report_exit_code(r) == 0);
  std::ostringstream table;
  write_table(table, r);
  CHECK(table.str().find("quantum regime") != std::string::npos);
}

TEST_CASE("engine failures and invariant violations") {
  const auto turning = evaluate_point(1.0, 5.0);
  CHECK_FALSE(turning.errors.empty());
  CHECK(report_exit_code(turning) == 1);
  CHECK(csv_of(turning).find("classical: ") != std::string::npos);

  EvaluationOptions strict;
  strict.tolerances.tprime_band = 1e-6;
  const auto r = evaluate_point(5.0, -0.02, strict);
  CHECK(report_exit_code(r) == 2);
  CHECK(r.t_quantum_peres.has_value());
}

TEST_CASE("CSV schema") {
  std::ostringstream header;
  write_csv_header(header);
  CHECK(header.str().rfind("kappa,atilde,t_classical_exact,", 0) == 0);
  CHECK(count(header.str(), ',') + 1 == report_columns().size());

  EvaluationOptions only_classical;
  only_classical.engines = parse_engines("classical");
  const std::string row = csv_of(evaluate_point(5.0, -0.02, only_classical));
  CHECK(count(row, ',') + 1 == report_columns().size());
  CHECK(row.find("NA") != std::string::npos);
  CHECK(row.find(",0,") == std::string::npos);
  CHECK(row.rfind("5,-0.02,0.399946", 0) == 0);
}

TEST_CASE("sweep axis values") {
  SweepSpec s;
  s.axis = Axis::Atilde;
  s.scale = Scale::Log;
  s.lo = -0.04;
  s.hi = -0.005;
  s.points = 4;
  const auto v = s.axis_values();
  CHECK(v.front() == -0.04);
  CHECK(v.back() == -0.005);
  CHECK(v[1] == doctest::Approx(-0.02));
  CHECK(v[2] == doctest::Approx(-0.01));

  SweepSpec bad = s;
  bad.lo = 0.01;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.points = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.lo = -0.1;
  bad.hi = 0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.axis = Axis::Kappa;
  bad.scale = Scale::Linear;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("two-point sweep keeps header and footer") {
  SweepSpec s;
  s.lo = 5.0;
  s.hi = 10.0;
  s.points = 2;
  s.fixed = -0.02;
  const auto rows = run_sweep(s);
  std::ostringstream out;
  write_sweep_csv(out, s, rows);
  std::istringstream in(out.str());
  std::string line;
  int data = 0, footer = 0, headers = 0;
  while (std::getline(in, line)) {
    if (line.rfind("kappa,", 0) == 0) ++headers;
    else if (line.rfind("#", 0) == 0) ++footer;
    else ++data;
  }
  CHECK(headers == 1);
  CHECK(data == 2);
  CHECK(footer >= 4);
  CHECK(out.str().find("# tidalclock " TIDALCLOCK_VERSION) != std::string::npos);
}

TEST_CASE("sweeps are byte-identical across thread counts") {
  SweepSpec s;
  s.axis = Axis::Kappa;
  s.scale = Scale::Log;
  s.lo = 2.0;
  s.hi = 40.0;
  s.points = 9;
  s.fixed = -0.02;
  auto render = [&](unsigned threads) {
    SweepSpec t = s;
    t.threads = threads;
    std::ostringstream out;
    write_sweep_csv(out, t, run_sweep(t));
    return out.str();
  };
  const std::string serial = render(1);
  CHECK(serial == render(4));
  CHECK(serial == render(1));
}

TEST_CASE("tide ladder: theta columns linear with quadratic residual") {
  SweepSpec s;
  s.axis = Axis::Atilde;
  s.scale = Scale::Log;
  s.lo = -0.04;
  s.hi = -0.005;
  s.points = 4;
  s.fixed = 5.0;
  const auto rows = run_sweep(s);
  double previous = 0.0;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    CHECK(*it->theta_firstorder / it->atilde ==
          doctest::Approx(*rows.front().theta_firstorder / rows.front().atilde).epsilon(1e-10));
    const double gap = std::abs(*it->theta_exact - *it->theta_firstorder);
    if (previous > 0) CHECK(gap / previous == doctest::Approx(4.0).epsilon(0.1));
    previous = gap;
  }
}
