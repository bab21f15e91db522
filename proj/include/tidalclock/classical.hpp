#pragma once

#include "tidalclock/dormand_prince.hpp"
#include "tidalclock/potential.hpp"
#include "tidalclock/quadrature.hpp"

namespace tidal {

/// Out-and-back times in scaled units (time unit m b^2 / hbar).
struct ClassicalResult {
  double t_exact = 0.0;
  double t_perturbative = 0.0;
  double t_zero = 0.0;
  QuadratureMeta meta;
};

/// Free out-and-back time 2/kappa.
double transit_zero(double kappa);

/// sqrt(2m) * integral of dx / sqrt(E - V) over the start-line-to-wall path,
/// doubled for the return leg. Throws std::domain_error when a turning point
/// lies inside [-1, 0] (only possible for atilde > 0).
double transit_exact(double kappa, const PiecewisePotential<>& potential,
                     QuadratureMeta* meta = nullptr);

/// First-order-in-tide time T0 + T0 alpha / (6E). Valid for |atilde| << kappa^2.
double transit_perturbative(double kappa, const PiecewisePotential<>& potential);

/// True when the tide is a small perturbation: |atilde| <= 0.1 kappa^2.
bool perturbative_regime(double kappa, double atilde);

ClassicalResult classical_transit(double kappa,
                                  const PiecewisePotential<>& potential);

/// Newtonian trajectory: start at x = -1 with velocity +kappa, reflect
/// elastically at x = 0, stop on the return to x = -1.
double trajectory_oracle(double kappa, const PiecewisePotential<>& potential,
                         const AdaptiveOptions& options = {});

}  // namespace tidal
