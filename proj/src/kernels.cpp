#include "reldev/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "reldev/errors.hpp"
#include "reldev/quadrature.hpp"

namespace reldev {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double quartic(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return 0.9375 * u * u;  // 15/16 (1-x^2)^2
}

double quartic_deriv(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return -3.75 * x * (1.0 - x * x);
}

double epanechnikov(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return 0.75 * (1.0 - x * x);
}

double epanechnikov_deriv(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return -1.5 * x;
}

double kstar_of(const std::function<double(double)>& k, double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return 2.0 * kSqrt2 * k(kSqrt2 * x) - k(x);
}

void validate_kernel(const std::function<double(double)>& eval) {
    for (int i = 0; i < 64; ++i) {
        const double x = (i + 0.5) / 64.0;
        if (std::abs(eval(x) - eval(-x)) > 1e-12)
            throw std::invalid_argument("kernel is not symmetric at x = " + std::to_string(x));
    }
    for (double x : {1.0, 1.25, 2.0, -1.0, -3.0}) {
        if (std::abs(eval(x)) > 1e-12)
            throw std::invalid_argument("kernel does not vanish outside [-1,1]");
    }
    const double mass = integrate(eval, {-1.0, 0.0, 1.0}, 1e-10);
    if (std::abs(mass - 1.0) > 1e-8)
        throw std::invalid_argument("kernel mass on [-1,1] is " + std::to_string(mass) +
                                    ", expected 1");
}

}  // namespace

double kstar_eval(const KernelSpec& k, double x) { return kstar_of(k.eval, x); }

std::pair<double, double> kernel_constants(const std::function<double(double)>& k_eval,
                                           const std::function<double(double)>& k_deriv) {
    auto kstar = [&](double x) { return kstar_of(k_eval, x); };
    std::function<double(double)> kstar_prime;
    if (k_deriv) {
        // (K*)'(x) = 4 K'(sqrt(2)x) - K'(x)
        kstar_prime = [&k_deriv](double x) {
            if (std::abs(x) >= 1.0) return 0.0;
            return 4.0 * k_deriv(kSqrt2 * x) - k_deriv(x);
        };
    } else {
        kstar_prime = [kstar](double x) {
            const double step = 1e-6;
            return (kstar(x + step) - kstar(x - step)) / (2.0 * step);
        };
    }
    // K(sqrt(2)x) introduces kinks at +-1/sqrt(2); split the panels there.
    const std::vector<double> knots = {-1.0, -1.0 / kSqrt2, 0.0, 1.0 / kSqrt2, 1.0};
    const double norm2 = integrate([&](double x) { const double v = kstar(x); return v * v; },
                                   knots, 1e-10);
    const double dnorm2 = integrate(
        [&](double x) { const double v = kstar_prime(x); return v * v; }, knots, 1e-10);
    if (!(norm2 > 0.0) || !std::isfinite(norm2) || !(dnorm2 > 0.0) || !std::isfinite(dnorm2))
        throw quadrature_failure("kernel constants are not finite and positive");
    const double l2 = std::sqrt(norm2);
    return {l2, std::sqrt(dnorm2) / l2};
}

KernelSpec make_kernel(std::string_view name) {
    if (name == "quartic") return make_kernel("quartic", quartic, quartic_deriv);
    if (name == "epanechnikov")
        return make_kernel("epanechnikov", epanechnikov, epanechnikov_deriv);
    throw std::invalid_argument("unknown kernel '" + std::string(name) +
                                "' (expected quartic or epanechnikov)");
}

KernelSpec make_kernel(std::string name, std::function<double(double)> eval,
                       std::function<double(double)> deriv) {
    validate_kernel(eval);
    KernelSpec spec;
    spec.name = std::move(name);
    spec.eval = std::move(eval);
    spec.deriv = std::move(deriv);
    std::tie(spec.l2_norm_kstar, spec.lambda_k) = kernel_constants(spec.eval, spec.deriv);
    return spec;
}

}  // namespace reldev
