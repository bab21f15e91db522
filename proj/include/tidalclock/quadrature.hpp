#pragma once

#include <cstddef>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tidal {

struct QuadratureMeta {
  double tolerance = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive 61-point Gauss-Kronrod on [a, b], relative tolerance `tol`.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-13,
                 QuadratureMeta* meta = nullptr) {
  std::size_t calls = 0;
  auto counted = [&](double x) {
    ++calls;
    return f(x);
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          counted, a, b, 12, tol, &error);
  if (meta) {
    meta->tolerance = tol;
    meta->error_estimate = error;
    meta->evaluations = calls;
  }
  return value;
}

}  // namespace tidal
