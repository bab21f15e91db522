#pragma once

#include <stdexcept>

namespace tidal {

/// Three-region potential in scaled units (hbar = m = b = 1):
/// zero left of the start line x = -1, quadratic tide on [-1, 0), hard wall
/// at x = 0 (a boundary condition, not a value).
///
/// `atilde` is the curvature as it enters u'' = (atilde (x+1)^2 - kappa^2) u.
/// The energy-form value is half of that. Positive atilde is accepted for
/// sign probes even though it is unphysical for a tidal field.
template <typename Scalar = double>
class PiecewisePotential {
 public:
  constexpr explicit PiecewisePotential(Scalar atilde) : atilde_(atilde) {}

  constexpr Scalar atilde() const { return atilde_; }

  /// Energy-form value V(x) in units of hbar^2/(m b^2).
  Scalar evaluate(Scalar x) const {
    if (!(x < Scalar(0))) {
      throw std::domain_error("potential evaluated at or beyond the wall (x >= 0)");
    }
    return energy(x);
  }
  Scalar operator()(Scalar x) const { return evaluate(x); }

  /// Unchecked energy-form value, for inner loops.
  constexpr Scalar energy(Scalar x) const {
    if (x < Scalar(-1)) return Scalar(0);
    const Scalar s = x + Scalar(1);
    return atilde_ * s * s / Scalar(2);
  }

  /// 2V, the coefficient that enters the stationary equation.
  constexpr Scalar schrodinger(Scalar x) const { return Scalar(2) * energy(x); }

  /// dV/dx.
  constexpr Scalar slope(Scalar x) const {
    if (x < Scalar(-1)) return Scalar(0);
    return atilde_ * (x + Scalar(1));
  }

  /// Integral of V over [-1, 0].
  constexpr Scalar integral() const { return atilde_ / Scalar(6); }

  /// Largest value of V on [-1, 0].
  constexpr Scalar maximum() const {
    return atilde_ > Scalar(0) ? atilde_ / Scalar(2) : Scalar(0);
  }

 private:
  Scalar atilde_;
};

}  // namespace tidal
