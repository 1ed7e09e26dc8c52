#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>

namespace reldev {

// A second-order kernel on [-1,1] together with the constants of its
// bias-corrected transform K*(x) = 2*sqrt(2)*K(sqrt(2)x) - K(x):
// l2_norm_kstar = ||K*||_2 and lambda_k = ||(K*)'||_2 / ||K*||_2.
// Immutable after construction; safe to share across threads.
struct KernelSpec {
    std::string name;
    std::function<double(double)> eval;   // K, zero outside [-1,1]
    std::function<double(double)> deriv;  // K', empty -> central differences
    double support_radius = 1.0;
    double l2_norm_kstar = 0.0;
    double lambda_k = 0.0;
};

// K*(x); zero for |x| >= 1.
double kstar_eval(const KernelSpec& k, double x);

// (||K*||_2, Lambda_K) by adaptive quadrature. A derivative closure makes
// (K*)' exact; otherwise it is approximated by central differences (1e-6).
std::pair<double, double> kernel_constants(const std::function<double(double)>& k_eval,
                                           const std::function<double(double)>& k_deriv = {});

// Builtin kernels: "quartic" (default everywhere) or "epanechnikov".
KernelSpec make_kernel(std::string_view name);

// Builds and validates a kernel: symmetry, unit mass on [-1,1] (1e-8),
// vanishing outside the support. Throws std::invalid_argument on violation.
KernelSpec make_kernel(std::string name, std::function<double(double)> eval,
                       std::function<double(double)> deriv = {});

}  // namespace reldev
