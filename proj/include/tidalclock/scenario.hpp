#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace tidal {

enum class Direction { Upward, Downward };

std::string to_string(Direction d);
Direction parse_direction(const std::string& text);

/// Dimensional (SI) description of one clock experiment.
///
/// Exactly one of `wavenumber_k` / `energy_E` is set. The particle starts at
/// the start line x = -b and the reflecting wall sits at x = 0.
struct PhysicalScenario {
  double grav_const = 0.0;      // m^3 kg^-1 s^-2
  double central_mass = 0.0;    // kg
  double central_radius = 0.0;  // m
  double particle_mass = 0.0;   // kg
  double baseline_b = 0.0;      // m
  std::optional<double> wavenumber_k;  // m^-1
  std::optional<double> energy_E;      // J
  double hbar = 0.0;                   // J s
  Direction direction = Direction::Upward;

  /// Throws std::domain_error on the first violated invariant.
  void validate() const;

  double wavenumber() const;
  double energy() const;
  double velocity() const;
  /// Internal time unit m b^2 / hbar.
  double time_unit() const;
  /// Tidal rate GM/R^3 [s^-2].
  double tidal_rate() const;
};

/// The two numbers that fix the scaled problem u'' = (atilde (x+1)^2 - kappa^2) u.
struct DimensionlessScenario {
  double kappa = 0.0;
  double atilde = 0.0;
  Direction direction = Direction::Upward;
};

/// Quadratic coefficient of the tidal potential, alpha = -G M m / R^3 [J m^-2].
double alpha_from_earth(double grav_const, double central_mass,
                        double particle_mass, double central_radius);

DimensionlessScenario nondimensionalize(const PhysicalScenario& s);

/// Inverse of nondimensionalize: keeps G, M, R, b, hbar and direction of
/// `reference`, recovers the particle mass from atilde and k from kappa.
PhysicalScenario redimensionalize(const DimensionlessScenario& d,
                                  const PhysicalScenario& reference);

/// Scaled time -> seconds.
double redimensionalize_time(double t_scaled, const PhysicalScenario& s);

/// k = m v / hbar.
double wavenumber_from_velocity(double particle_mass, double velocity,
                                double hbar);

/// Reference constants: Earth and a rubidium-87 atom.
PhysicalScenario earth_rubidium_scenario(double baseline_b, double velocity);

// Flat key-value ingestion. Keys are exactly the PhysicalScenario field
// names; '#' starts a comment; separators are '=' or whitespace.
std::map<std::string, std::string> parse_key_values(std::istream& in);
PhysicalScenario scenario_from_key_values(
    const std::map<std::string, std::string>& kv);
PhysicalScenario load_scenario(const std::string& path);

}  // namespace tidal
