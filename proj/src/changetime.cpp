#include "reldev/changetime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "reldev/errors.hpp"

namespace reldev {

bool FirstExceedance::detected() const { return std::isfinite(t_star_hat); }

FirstExceedance first_exceedance(const DeviationCurve& dev, double delta, double delta_n) {
    if (!(delta_n > 0.0) || delta_n >= delta)
        throw invalid_margin("need 0 < delta_n < delta, got delta_n = " + std::to_string(delta_n) +
                             ", delta = " + std::to_string(delta));
    FirstExceedance result;
    result.delta_n = delta_n;
    result.threshold_used = delta - delta_n;
    const double thr = result.threshold_used;

    if (dev.values.empty() || dev.sup < thr) {
        result.t_star_hat = std::numeric_limits<double>::infinity();
        return result;
    }
    if (std::abs(dev.values.front()) >= thr) {
        result.t_star_hat = dev.interval.lo;
        return result;
    }
    for (std::size_t i = 1; i < dev.values.size(); ++i) {
        const double v = std::abs(dev.values[i]);
        if (v >= thr) {
            const double prev = std::abs(dev.values[i - 1]);
            const double frac = (thr - prev) / (v - prev);
            result.t_star_hat = dev.grid[i - 1] + frac * (dev.grid[i] - dev.grid[i - 1]);
            return result;
        }
    }
    result.t_star_hat = std::numeric_limits<double>::infinity();
    return result;
}

double default_delta_n(double sigma_hat, const KernelSpec& k, int n, double h, double c,
                       double measure, std::vector<std::string>* warnings) {
    if (c < 1.0) throw std::invalid_argument("default_delta_n inflation factor must be >= 1");
    if (c == 1.0 && warnings)
        warnings->push_back("delta_n inflation factor c = 1 sits exactly on the boundary of the "
                            "admissible rate");
    if (!(sigma_hat > 0.0) || !(h > 0.0) || n <= 0)
        throw std::invalid_argument("default_delta_n needs sigma_hat > 0, h > 0, n > 0");
    const double ell = scaling_ell(measure, h, k.lambda_k);
    return c * sigma_hat * k.l2_norm_kstar * ell / std::sqrt(double(n) * h);
}

}  // namespace reldev
