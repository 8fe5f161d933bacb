#pragma once

#include <vector>

namespace pwave::stats {

struct SignificanceResult {
    double statistic = 0.0;
    double critical = 0.0;
    double alpha = 0.0;
    int df = 0;
    bool passed = false;  // statistic > critical, strictly
};

// 1 - RSS/TSS about the observed mean. May go negative for terrible fits.
// Throws ZeroVariance when the observed series is constant.
double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted);

// (r2/k) / ((1-r2)/(n-k-1)) for a k-regressor fit on n points.
double f_statistic(double r2, int n, int k);

// Significance threshold on R^2: k*F_crit / (k*F_crit + (n-k-1)).
double r2_crit(double alpha, int n, int k);

// Sample Pearson correlation; normalization cancels between numerator and
// denominator. Throws ZeroVariance if either series is constant.
double pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// t = |r| * sqrt((n-2)/(1-r^2)) for H0: rho = 0.
double t_stat_correlation(double r, int n);

// Two-sided test of r against t_critical(alpha, n-2).
SignificanceResult correlation_significant(double r, int n, double alpha);

}  // namespace pwave::stats
