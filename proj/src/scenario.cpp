#include "tidalclock/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tidal {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be positive and finite");
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': not a number: " + text);
  }
  if (used != text.size()) {
    throw std::invalid_argument("key '" + key + "': trailing characters in " + text);
  }
  return value;
}

}  // namespace

std::string to_string(Direction d) {
  return d == Direction::Upward ? "upward" : "downward";
}

Direction parse_direction(const std::string& text) {
  const auto t = lower(text);
  if (t == "upward" || t == "up") return Direction::Upward;
  if (t == "downward" || t == "down") return Direction::Downward;
  throw std::invalid_argument("direction must be upward or downward, got " + text);
}

void PhysicalScenario::validate() const {
  require_positive(grav_const, "grav_const");
  require_positive(central_mass, "central_mass");
  require_positive(central_radius, "central_radius");
  require_positive(particle_mass, "particle_mass");
  require_positive(baseline_b, "baseline_b");
  require_positive(hbar, "hbar");
  if (wavenumber_k.has_value() == energy_E.has_value()) {
    throw std::domain_error("exactly one of wavenumber_k and energy_E must be given");
  }
  if (wavenumber_k) require_positive(*wavenumber_k, "wavenumber_k");
  if (energy_E) require_positive(*energy_E, "energy_E");
}

double PhysicalScenario::wavenumber() const {
  if (wavenumber_k) return *wavenumber_k;
  if (energy_E) return std::sqrt(2.0 * particle_mass * *energy_E) / hbar;
  throw std::domain_error("scenario has neither wavenumber_k nor energy_E");
}

double PhysicalScenario::energy() const {
  if (energy_E) return *energy_E;
  const double k = wavenumber();
  return hbar * hbar * k * k / (2.0 * particle_mass);
}

double PhysicalScenario::velocity() const {
  return hbar * wavenumber() / particle_mass;
}

double PhysicalScenario::time_unit() const {
  return particle_mass * baseline_b * baseline_b / hbar;
}

double PhysicalScenario::tidal_rate() const {
  return grav_const * central_mass /
         (central_radius * central_radius * central_radius);
}

double alpha_from_earth(double grav_const, double central_mass,
                        double particle_mass, double central_radius) {
  require_positive(grav_const, "grav_const");
  require_positive(central_mass, "central_mass");
  require_positive(particle_mass, "particle_mass");
  require_positive(central_radius, "central_radius");
  return -grav_const * central_mass * particle_mass /
         (central_radius * central_radius * central_radius);
}

DimensionlessScenario nondimensionalize(const PhysicalScenario& s) {
  s.validate();
  const double alpha = alpha_from_earth(s.grav_const, s.central_mass,
                                        s.particle_mass, s.central_radius);
  const double b = s.baseline_b;
  DimensionlessScenario d;
  d.kappa = s.wavenumber() * b;
  d.atilde = 2.0 * s.particle_mass * alpha * (b * b) * (b * b) / (s.hbar * s.hbar);
  d.direction = s.direction;
  return d;
}

PhysicalScenario redimensionalize(const DimensionlessScenario& d,
                                  const PhysicalScenario& reference) {
  if (!(d.kappa > 0.0)) throw std::domain_error("kappa must be positive");
  if (!(d.atilde < 0.0)) {
    throw std::domain_error("an Earth-derived scenario needs atilde < 0");
  }
  const double b = reference.baseline_b;
  PhysicalScenario s = reference;
  // atilde = -2 (GM/R^3) m^2 b^4 / hbar^2
  s.particle_mass = reference.hbar / (b * b) *
                    std::sqrt(-d.atilde / (2.0 * reference.tidal_rate()));
  s.wavenumber_k = d.kappa / b;
  s.energy_E.reset();
  s.direction = d.direction;
  s.validate();
  return s;
}

double redimensionalize_time(double t_scaled, const PhysicalScenario& s) {
  s.validate();
  return t_scaled * s.time_unit();
}

double wavenumber_from_velocity(double particle_mass, double velocity,
                                double hbar) {
  require_positive(velocity, "velocity");
  return particle_mass * velocity / hbar;
}

PhysicalScenario earth_rubidium_scenario(double baseline_b, double velocity) {
  PhysicalScenario s;
  s.grav_const = 6.674e-11;
  s.central_mass = 5.972e24;
  s.central_radius = 6.371e6;
  s.particle_mass = 1.443e-25;
  s.hbar = 1.054571817e-34;
  s.baseline_b = baseline_b;
  s.wavenumber_k = wavenumber_from_velocity(s.particle_mass, velocity, s.hbar);
  return s;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    std::string key;
    std::string value;
    if (const auto eq = line.find('='); eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else {
      std::istringstream ls(line);
      ls >> key;
      std::getline(ls, value);
      value = trim(value);
    }
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    kv[key] = value;
  }
  return kv;
}

PhysicalScenario scenario_from_key_values(
    const std::map<std::string, std::string>& kv) {
  static const char* const known[] = {
      "grav_const", "central_mass", "central_radius", "particle_mass",
      "baseline_b", "wavenumber_k", "energy_E",       "hbar",
      "direction"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw std::invalid_argument("unknown scenario key: " + key);
    }
  }
  auto number = [&](const char* key) -> std::optional<double> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return parse_number(key, it->second);
  };
  auto required = [&](const char* key) {
    const auto v = number(key);
    if (!v) throw std::invalid_argument(std::string("missing scenario key: ") + key);
    return *v;
  };

  PhysicalScenario s;
  s.grav_const = required("grav_const");
  s.central_mass = required("central_mass");
  s.central_radius = required("central_radius");
  s.particle_mass = required("particle_mass");
  s.baseline_b = required("baseline_b");
  s.hbar = required("hbar");
  s.wavenumber_k = number("wavenumber_k");
  s.energy_E = number("energy_E");
  if (const auto it = kv.find("direction"); it != kv.end()) {
    s.direction = parse_direction(it->second);
  }
  s.validate();
  return s;
}

PhysicalScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  return scenario_from_key_values(parse_key_values(in));
}

}  // namespace tidal
