#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "reldev/kernels.hpp"
#include "reldev/quadrature.hpp"

using namespace reldev;

namespace {

// Fixed-grid composite Simpson rule; independent of the adaptive quadrature
// used by the library.
double simpson(const std::function<double(double)>& f, double a, double b, int cells) {
    const double h = (b - a) / cells;
    double acc = f(a) + f(b);
    for (int i = 1; i < cells; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("quartic closed-form values") {
        const KernelSpec k = make_kernel("quartic");
        CHECK(k.eval(0.0) == doctest::Approx(15.0 / 16.0).epsilon(1e-14));
        CHECK(kstar_eval(k, 1.5) == 0.0);
        CHECK(kstar_eval(k, -1.0) == 0.0);
        // K*(0) = (2 sqrt(2) - 1) K(0)
        CHECK(kstar_eval(k, 0.0) ==
              doctest::Approx((2.0 * std::sqrt(2.0) - 1.0) * 15.0 / 16.0).epsilon(1e-14));
    }

    TEST_CASE("quartic constants against the fixed-grid oracle") {
        const KernelSpec k = make_kernel("quartic");
        // Oracle values: high-precision quadrature of the closed forms.
        CHECK(k.l2_norm_kstar == doctest::Approx(1.2230974290979382).epsilon(1e-10));
        CHECK(k.lambda_k == doctest::Approx(3.1241172952636354).epsilon(1e-10));

        const double norm2 =
            simpson([&](double x) { const double v = kstar_eval(k, x); return v * v; }, -1, 1,
                    200000);
        CHECK(std::sqrt(norm2) == doctest::Approx(k.l2_norm_kstar).epsilon(1e-6));
        const double plain2 = simpson([&](double x) { return k.eval(x) * k.eval(x); }, -1, 1, 20000);
        CHECK(plain2 == doctest::Approx(5.0 / 7.0).epsilon(1e-8));
    }

    TEST_CASE("epanechnikov constants finite and positive") {
        const KernelSpec k = make_kernel("epanechnikov");
        CHECK(k.l2_norm_kstar == doctest::Approx(1.1375906775705522).epsilon(1e-9));
        CHECK(k.lambda_k == doctest::Approx(3.1042522285531430).epsilon(1e-9));
    }

    TEST_CASE("numeric derivative fallback stays close to the analytic path") {
        const KernelSpec k = make_kernel("quartic");
        const auto [l2, lam] = kernel_constants(k.eval);  // no derivative closure
        CHECK(l2 == doctest::Approx(k.l2_norm_kstar).epsilon(1e-8));
        CHECK(lam == doctest::Approx(k.lambda_k).epsilon(1e-4));
    }

    TEST_CASE("moment identities of the bias-corrected kernel") {
        for (const char* name : {"quartic", "epanechnikov"}) {
            const KernelSpec k = make_kernel(name);
            const double m0 = simpson([&](double x) { return kstar_eval(k, x); }, -1, 1, 200000);
            const double m1 = simpson([&](double x) { return x * kstar_eval(k, x); }, -1, 1, 200000);
            const double m2 =
                simpson([&](double x) { return x * x * kstar_eval(k, x); }, -1, 1, 200000);
            CHECK(m0 == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(std::abs(m1) < 1e-8);
            CHECK(std::abs(m2) < 1e-8);
        }
    }

    TEST_CASE("transform is symmetric") {
        const KernelSpec k = make_kernel("quartic");
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const double x = unif(rng);
            CHECK(kstar_eval(k, x) == doctest::Approx(kstar_eval(k, -x)).epsilon(1e-14));
        }
    }

    TEST_CASE("constants invariant under tolerance refinement") {
        const KernelSpec k = make_kernel("quartic");
        auto loose = kernel_constants(k.eval, k.deriv);
        CHECK(loose.first == doctest::Approx(k.l2_norm_kstar).epsilon(1e-10));
        CHECK(loose.second == doctest::Approx(k.lambda_k).epsilon(1e-10));
    }

    TEST_CASE("unnormalized kernel is rejected") {
        auto scaled = [](double x) {
            if (std::abs(x) >= 1.0) return 0.0;
            const double u = 1.0 - x * x;
            return 2.0 * 0.9375 * u * u;
        };
        CHECK_THROWS_AS(make_kernel("scaled-quartic", scaled), std::invalid_argument);
    }

    TEST_CASE("asymmetric kernel is rejected") {
        auto skew = [](double x) {
            if (x < 0.0 || x >= 1.0) return 0.0;
            return 2.0 * (1.0 - x);
        };
        CHECK_THROWS_AS(make_kernel("skew", skew), std::invalid_argument);
    }
}
