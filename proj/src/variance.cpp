#include "reldev/variance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "reldev/errors.hpp"

namespace reldev {

LrvEstimate lrv_estimate(const TimeSeries& series, int m) {
    const int n = series.n();
    if (m < 1) throw std::invalid_argument("block length must be >= 1");
    const int blocks = n / m;
    if (blocks < 2)
        throw block_too_large("block length " + std::to_string(m) + " leaves fewer than 2 blocks of " +
                              std::to_string(n) + " observations");
    // S_{(j-1)m+1, jm} - S_{jm+1, (j+1)m} for j = 1..blocks-1.
    double acc = 0.0;
    double prev = 0.0;
    for (int i = 0; i < m; ++i) prev += series.values[i];
    for (int j = 1; j < blocks; ++j) {
        double cur = 0.0;
        const int base = j * m;
        for (int i = 0; i < m; ++i) cur += series.values[base + i];
        const double diff = prev - cur;
        acc += diff * diff / (2.0 * m);
        prev = cur;
    }
    return {acc / double(blocks - 1), m};
}

int block_length_rule(std::span<const double> residuals) {
    const int n = static_cast<int>(residuals.size());
    if (n < 5) throw std::invalid_argument("block length rule needs at least 5 residuals");
    double mean = 0.0;
    for (double v : residuals) mean += v;
    mean /= n;
    double gamma[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k <= 4; ++k) {
        double acc = 0.0;
        for (int i = 0; i + k < n; ++i) acc += (residuals[i] - mean) * (residuals[i + k] - mean);
        gamma[k] = acc / n;
    }
    const double num = std::abs(gamma[1]) + std::abs(gamma[2]) + std::abs(gamma[3]) + std::abs(gamma[4]);
    const double den = std::abs(gamma[0]) + num;
    if (den <= 0.0) return 1;
    const int m = static_cast<int>(std::floor(std::sqrt(num / den) * std::cbrt(double(n))));
    return std::max(m, 1);
}

int default_block_length(int n) {
    return std::max(1, static_cast<int>(std::floor(std::cbrt(double(n)))));
}

}  // namespace reldev
