#include "pwave/stats.hpp"

#include <cmath>

#include "pwave/errors.hpp"
#include "pwave/specfun.hpp"

namespace pwave::stats {

double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted) {
    if (observed.size() != predicted.size() || observed.size() < 2)
        throw DomainError("r_squared: need equal lengths >= 2");
    double mean = 0.0;
    for (double v : observed) mean += v;
    mean /= static_cast<double>(observed.size());

    double rss = 0.0, tss = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        const double e = observed[i] - predicted[i];
        const double d = observed[i] - mean;
        rss += e * e;
        tss += d * d;
    }
    if (tss == 0.0) throw ZeroVariance("r_squared: constant observations");
    return 1.0 - rss / tss;
}

double f_statistic(double r2, int n, int k) {
    if (n <= k + 1) throw DomainError("f_statistic: n must exceed k+1");
    if (r2 >= 1.0) throw DomainError("f_statistic: r2 must be < 1");
    return (r2 / k) / ((1.0 - r2) / (n - k - 1));
}

double r2_crit(double alpha, int n, int k) {
    if (n <= k + 1) throw DomainError("r2_crit: n must exceed k+1");
    const double fc = specfun::f_critical(alpha, k, n - k - 1);
    return k * fc / (k * fc + (n - k - 1));
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n != y.size() || n < 3) throw DomainError("pearson_r: need equal lengths >= 3");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ZeroVariance("pearson_r: x is constant");
    if (syy == 0.0) throw ZeroVariance("pearson_r: y is constant");
    double r = sxy / std::sqrt(sxx * syy);
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

double t_stat_correlation(double r, int n) {
    if (n < 3) throw DomainError("t_stat_correlation: n must be >= 3");
    if (std::fabs(r) >= 1.0) throw DomainError("t_stat_correlation: |r| must be < 1");
    return std::fabs(r) * std::sqrt((n - 2) / (1.0 - r * r));
}

SignificanceResult correlation_significant(double r, int n, double alpha) {
    SignificanceResult res;
    res.statistic = t_stat_correlation(r, n);
    res.critical = specfun::t_critical(alpha, n - 2);
    res.alpha = alpha;
    res.df = n - 2;
    res.passed = res.statistic > res.critical;
    return res;
}

}  // namespace pwave::stats
