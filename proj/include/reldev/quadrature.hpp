#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace reldev {

// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b].
// Throws quadrature_failure if the error estimate does not reach abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Integrates piecewise between consecutive breakpoints (sorted ascending).
// Use to isolate kink points of the integrand.
double integrate(const std::function<double(double)>& f, std::vector<double> breakpoints,
                 double abs_tol = 1e-10);

}  // namespace reldev
