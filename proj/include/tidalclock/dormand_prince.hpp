#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace tidal {

/// One Dormand-Prince 5(4) step: fifth-order solution and the embedded
/// error estimate (difference to the fourth-order solution).
template <typename State>
struct RkStep {
  State y;
  State error;
};

template <typename State, class Rhs>
RkStep<State> dormand_prince_step(const Rhs& f, double t, const State& y,
                                  double h) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const State k1 = f(t, y);
  const State k2 = f(t + c2 * h, State(y + h * (a21 * k1)));
  const State k3 = f(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
  const State k4 =
      f(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = f(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 +
                                                a53 * k3 + a54 * k4)));
  const State k6 = f(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                           a64 * k4 + a65 * k5)));
  RkStep<State> out;
  out.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = f(t + h, out.y);
  out.error = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return out;
}

struct AdaptiveOptions {
  double rtol = 1e-13;
  double atol = 1e-13;
  double initial_step = 1e-3;
  double min_step = 1e-15;
  std::size_t max_steps = 10'000'000;
  /// Bisection stops once |g| falls below this.
  double event_tol = 1e-12;
};

template <typename State>
struct EventHit {
  double t = 0.0;
  State y;
  std::size_t steps = 0;
};

/// Integrates y' = f(t, y) from (t0, y0) until g(y) crosses from negative to
/// non-negative, then locates the crossing by bisection on the step length.
template <typename State, class Rhs, class Event>
EventHit<State> integrate_to_event(const Rhs& f, double t0, State y0,
                                   const Event& g,
                                   const AdaptiveOptions& opt = {}) {
  if (!(g(y0) < 0.0)) {
    throw std::invalid_argument("event function must start negative");
  }
  double t = t0;
  State y = std::move(y0);
  double h = opt.initial_step;
  EventHit<State> hit;

  for (std::size_t n = 0; n < opt.max_steps; ++n) {
    if (h < opt.min_step * std::max(1.0, std::abs(t))) {
      throw std::runtime_error(
          "step-size underflow at t=" + std::to_string(t) +
          " (state component 0 = " + std::to_string(y[0]) +
          "); likely a turning point or stiff region");
    }
    const RkStep<State> step = dormand_prince_step(f, t, y, h);
    const double scale_err =
        (step.error.array().abs() /
         (opt.atol + opt.rtol * y.array().abs().max(step.y.array().abs())))
            .maxCoeff();
    if (!(scale_err <= 1.0)) {
      h *= std::clamp(0.9 * std::pow(scale_err, -0.2), 0.1, 0.9);
      continue;
    }
    if (g(step.y) >= 0.0) {
      double lo = 0.0;
      double hi = h;
      State y_hi = step.y;
      while (std::abs(g(y_hi)) > opt.event_tol &&
             hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(t))) {
        const double mid = 0.5 * (lo + hi);
        const State y_mid = dormand_prince_step(f, t, y, mid).y;
        if (g(y_mid) >= 0.0) {
          hi = mid;
          y_hi = y_mid;
        } else {
          lo = mid;
        }
      }
      hit.t = t + hi;
      hit.y = y_hi;
      hit.steps = n + 1;
      return hit;
    }
    t += h;
    y = step.y;
    h *= std::clamp(0.9 * std::pow(std::max(scale_err, 1e-10), -0.2), 0.2, 5.0);
  }
  throw std::runtime_error("integrate_to_event: step budget exhausted");
}

}  // namespace tidal
