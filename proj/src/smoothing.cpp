#include "reldev/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "reldev/errors.hpp"
#include "reldev/rng.hpp"

namespace reldev {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kCondLimit = 1e12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Moments {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;  // weighted powers of u = (i/n - t)/h
    double t0 = 0.0, t1 = 0.0;            // weighted responses
};

// Solves the 2x2 normal equations in u-units. Returns intercept and the
// slope already rescaled to the t-scale (division by h happens in caller).
bool solve_moments(const Moments& m, double* b0, double* b1_u) {
    const double tr = m.s0 + m.s2;
    const double diff = m.s0 - m.s2;
    const double disc = std::sqrt(diff * diff + 4.0 * m.s1 * m.s1);
    const double lmin = 0.5 * (tr - disc);
    const double lmax = 0.5 * (tr + disc);
    if (!(lmin > 0.0) || lmax > kCondLimit * lmin) return false;
    const double det = m.s0 * m.s2 - m.s1 * m.s1;
    *b0 = (m.s2 * m.t0 - m.s1 * m.t1) / det;
    *b1_u = (m.s0 * m.t1 - m.s1 * m.t0) / det;
    return true;
}

std::optional<LinFit> fit_at(const TimeSeries& series, const KernelSpec& k, double h, double t) {
    const int n = series.n();
    const int ilo = std::max(0, static_cast<int>(std::floor(n * (t - h))) - 1);
    const int ihi = std::min(n - 1, static_cast<int>(std::ceil(n * (t + h))) - 1);
    Moments m;
    for (int i = ilo; i <= ihi; ++i) {
        const double u = (double(i + 1) / n - t) / h;
        const double w = k.eval(u);
        if (w == 0.0) continue;
        const double wu = w * u;
        m.s0 += w;
        m.s1 += wu;
        m.s2 += wu * u;
        m.t0 += w * series.values[i];
        m.t1 += wu * series.values[i];
    }
    double b0 = 0.0, b1_u = 0.0;
    if (!solve_moments(m, &b0, &b1_u)) return std::nullopt;
    return LinFit{b0, b1_u / h};
}

void check_bandwidth(double h) {
    if (!(h > 0.0) || h > 0.5)
        throw std::invalid_argument("bandwidth must lie in (0, 1/2], got " + std::to_string(h));
}

// Per-candidate kernel weight table on the integer offset grid d = i - j.
struct WeightTable {
    int radius = 0;
    // Indexed by d + radius.
    std::vector<double> w, wu, wuu;
    double s0_full = 0.0, s1_full = 0.0, s2_full = 0.0;

    WeightTable(const KernelSpec& k, int n, double h) {
        radius = static_cast<int>(std::ceil(n * h));
        const int m = 2 * radius + 1;
        w.assign(m, 0.0);
        wu.assign(m, 0.0);
        wuu.assign(m, 0.0);
        for (int d = -radius; d <= radius; ++d) {
            const double u = double(d) / (n * h);
            const double kw = k.eval(u);
            w[d + radius] = kw;
            wu[d + radius] = kw * u;
            wuu[d + radius] = kw * u * u;
        }
        for (int idx = 0; idx < m; ++idx) {
            s0_full += w[idx];
            s1_full += wu[idx];
            s2_full += wuu[idx];
        }
    }
};

// Sum of squared out-of-fold prediction errors for one candidate bandwidth,
// scaled by 1/(1-h/2). NaN marks a candidate with a singular fit.
double candidate_score(const TimeSeries& series, const std::vector<int>& fold_of,
                       const std::vector<std::vector<int>>& members, const KernelSpec& k,
                       double h) {
    const int n = series.n();
    const WeightTable ta(k, n, h);
    const WeightTable tb(k, n, h / kSqrt2);
    const double* x = series.values.data();
    double sse = 0.0;
    for (int j = 0; j < n; ++j) {
        Moments ma, mb;
        {
            const int dlo = std::max(-ta.radius, -j);
            const int dhi = std::min(ta.radius, n - 1 - j);
            if (dlo == -ta.radius && dhi == ta.radius) {
                ma.s0 = ta.s0_full;
                ma.s1 = ta.s1_full;
                ma.s2 = ta.s2_full;
            } else {
                const double* w = ta.w.data() + ta.radius;
                const double* wu = ta.wu.data() + ta.radius;
                const double* wuu = ta.wuu.data() + ta.radius;
                double s0 = 0.0, s1 = 0.0, s2 = 0.0;
#pragma omp simd reduction(+ : s0, s1, s2)
                for (int d = dlo; d <= dhi; ++d) {
                    s0 += w[d];
                    s1 += wu[d];
                    s2 += wuu[d];
                }
                ma.s0 = s0;
                ma.s1 = s1;
                ma.s2 = s2;
            }
            const double* w = ta.w.data() + ta.radius;
            const double* wu = ta.wu.data() + ta.radius;
            const double* xs = x + j;
            double t0 = 0.0, t1 = 0.0;
#pragma omp simd reduction(+ : t0, t1)
            for (int d = dlo; d <= dhi; ++d) {
                t0 += w[d] * xs[d];
                t1 += wu[d] * xs[d];
            }
            ma.t0 = t0;
            ma.t1 = t1;
        }
        {
            const int dlo = std::max(-tb.radius, -j);
            const int dhi = std::min(tb.radius, n - 1 - j);
            if (dlo == -tb.radius && dhi == tb.radius) {
                mb.s0 = tb.s0_full;
                mb.s1 = tb.s1_full;
                mb.s2 = tb.s2_full;
            } else {
                const double* w = tb.w.data() + tb.radius;
                const double* wu = tb.wu.data() + tb.radius;
                const double* wuu = tb.wuu.data() + tb.radius;
                double s0 = 0.0, s1 = 0.0, s2 = 0.0;
#pragma omp simd reduction(+ : s0, s1, s2)
                for (int d = dlo; d <= dhi; ++d) {
                    s0 += w[d];
                    s1 += wu[d];
                    s2 += wuu[d];
                }
                mb.s0 = s0;
                mb.s1 = s1;
                mb.s2 = s2;
            }
            const double* w = tb.w.data() + tb.radius;
            const double* wu = tb.wu.data() + tb.radius;
            const double* xs = x + j;
            double t0 = 0.0, t1 = 0.0;
#pragma omp simd reduction(+ : t0, t1)
            for (int d = dlo; d <= dhi; ++d) {
                t0 += w[d] * xs[d];
                t1 += wu[d] * xs[d];
            }
            mb.t0 = t0;
            mb.t1 = t1;
        }
        // Remove the held-out fold (including observation j itself).
        const std::vector<int>& mine = members[fold_of[j]];
        auto it = std::lower_bound(mine.begin(), mine.end(), j - ta.radius);
        for (; it != mine.end() && *it <= j + ta.radius; ++it) {
            const int d = *it - j;
            const double xv = x[*it];
            ma.s0 -= ta.w[d + ta.radius];
            ma.s1 -= ta.wu[d + ta.radius];
            ma.s2 -= ta.wuu[d + ta.radius];
            ma.t0 -= ta.w[d + ta.radius] * xv;
            ma.t1 -= ta.wu[d + ta.radius] * xv;
            if (d >= -tb.radius && d <= tb.radius) {
                mb.s0 -= tb.w[d + tb.radius];
                mb.s1 -= tb.wu[d + tb.radius];
                mb.s2 -= tb.wuu[d + tb.radius];
                mb.t0 -= tb.w[d + tb.radius] * xv;
                mb.t1 -= tb.wu[d + tb.radius] * xv;
            }
        }
        double a0 = 0.0, a1 = 0.0, b0 = 0.0, b1 = 0.0;
        if (!solve_moments(ma, &a0, &a1) || !solve_moments(mb, &b0, &b1)) return kNaN;
        const double pred = 2.0 * b0 - a0;
        const double err = x[j] - pred;
        sse += err * err;
    }
    return sse / (1.0 - 0.5 * h);
}

}  // namespace

Interval fit_interval(double x0, double x1, double h) {
    return {std::max(x0, h), std::min(x1, 1.0 - h)};
}

Grid make_grid(int n, const Interval& interval, int refine) {
    if (refine < 1) throw std::invalid_argument("grid refinement factor must be >= 1");
    if (!(interval.lo <= interval.hi))
        throw std::invalid_argument("empty evaluation interval");
    const long step_count = static_cast<long>(n) * refine;
    const double step = 1.0 / double(step_count);
    const long lo = static_cast<long>(std::ceil(interval.lo * step_count - 1e-9));
    const long hi = static_cast<long>(std::floor(interval.hi * step_count + 1e-9));
    Grid grid;
    grid.cell = step;
    grid.points.reserve(std::max<long>(0, hi - lo + 1));
    for (long i = lo; i <= hi; ++i) grid.points.push_back(double(i) * step);
    if (grid.points.empty())
        throw std::invalid_argument("evaluation interval contains no grid point");
    return grid;
}

LinFit local_linear_fit(const TimeSeries& series, const KernelSpec& k, double h, double t) {
    require_estimable(series);
    check_bandwidth(h);
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("fit point outside [0,1]: " + std::to_string(t));
    auto fit = fit_at(series, k, h, t);
    if (!fit) throw singular_design(t);
    return *fit;
}

std::vector<double> jackknife_values(const TimeSeries& series, const KernelSpec& k, double h,
                                     std::span<const double> ts, exec policy) {
    require_estimable(series);
    check_bandwidth(h);
    std::vector<double> out(ts.size(), kNaN);
    std::vector<unsigned char> failed(ts.size(), 0);
    parallel_for(static_cast<std::int64_t>(ts.size()), policy, [&](std::int64_t i) {
        const double t = ts[i];
        auto wide = fit_at(series, k, h, t);
        auto narrow = fit_at(series, k, h / kSqrt2, t);
        if (!wide || !narrow) {
            failed[i] = 1;
            return;
        }
        out[i] = 2.0 * narrow->intercept - wide->intercept;
    });
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (failed[i]) throw singular_design(ts[i]);
    return out;
}

SmoothCurve jackknife_curve(const TimeSeries& series, const KernelSpec& k, double h,
                            const Grid& grid, const Interval& interval, exec policy) {
    for (double t : grid.points) {
        if (t < interval.lo - 1e-12 || t > interval.hi + 1e-12)
            throw std::invalid_argument("grid point " + std::to_string(t) +
                                        " outside the fit interval");
    }
    SmoothCurve curve;
    curve.grid = grid.points;
    curve.values = jackknife_values(series, k, h, grid.points, policy);
    curve.bandwidth = h;
    curve.interval = interval;
    curve.cell = grid.cell;
    curve.n = series.n();
    return curve;
}

std::vector<int> make_folds(int n, int folds, std::uint64_t seed, FoldScheme scheme) {
    if (folds < 2) throw std::invalid_argument("need at least 2 folds");
    if (n < 2 * folds) throw std::invalid_argument("need n >= 2*folds for cross-validation");
    std::vector<int> fold_of(n);
    if (scheme == FoldScheme::contiguous) {
        for (int i = 0; i < n; ++i)
            fold_of[i] = static_cast<int>((static_cast<long>(i) * folds) / n);
        return fold_of;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto rng = make_rng(seed, 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int pos = 0; pos < n; ++pos) fold_of[perm[pos]] = pos % folds;
    return fold_of;
}

CvResult cv_bandwidth(const TimeSeries& series, const KernelSpec& k, const CvOptions& options) {
    require_estimable(series);
    const int n = series.n();
    const std::vector<int> fold_of = make_folds(n, options.folds, options.seed, options.scheme);
    std::vector<std::vector<int>> members(options.folds);
    for (int i = 0; i < n; ++i) members[fold_of[i]].push_back(i);

    std::vector<int> candidates;
    const int kmax = n / 2;
    int stride = 1;
    if (options.thin && n > 1000) stride = (n + 99) / 100;
    for (int kk = stride; kk <= kmax; kk += stride) candidates.push_back(kk);

    std::vector<double> score(candidates.size(), kNaN);
    parallel_for_dynamic(static_cast<std::int64_t>(candidates.size()), options.policy,
                         [&](std::int64_t c) {
                             const double h = double(candidates[c]) / n;
                             score[c] = candidate_score(series, fold_of, members, k, h);
                         });

    const double mean =
        std::accumulate(series.values.begin(), series.values.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double v : series.values) ss += (v - mean) * (v - mean);
    const double tie_eps = 1e-12 * (1.0 + ss);

    double best = kNaN;
    for (double s : score)
        if (!std::isnan(s) && (std::isnan(best) || s < best)) best = s;
    if (std::isnan(best)) throw no_valid_bandwidth();

    CvResult result;
    result.trace.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
        result.trace.emplace_back(double(candidates[c]) / n, score[c]);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!std::isnan(score[c]) && score[c] <= best + tie_eps) {
            result.bandwidth = double(candidates[c]) / n;
            break;
        }
    }
    return result;
}

}  // namespace reldev
