#include "pwave/specfun.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "pwave/errors.hpp"

namespace pwave::specfun {

namespace {

// ---------------------------------------------------------------- J0 ----

// Power series J0(x) = sum (-1)^k (x^2/4)^k / (k!)^2, long double to keep
// cancellation under control; good to ~1e-16 relative for |x| <= 8.
long double j0_series(long double x) {
    const long double q = x * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-40L) break;
    }
    return sum;
}

// J1(x) = (x/2) sum (-1)^k (x^2/4)^k / (k! (k+1)!); J0' = -J1.
long double j1_series(long double x) {
    const long double q = x * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-40L) break;
    }
    return x / 2.0L * sum;
}

constexpr double kAnchorStart = 8.0;
constexpr double kAnchorStep = 0.5;
constexpr double kAnchorEnd = 1024.0;
constexpr int kTaylorOrder = 18;

struct Anchor {
    long double y;   // J0
    long double yp;  // J0'
};

// Taylor coefficients of J0 around x0 from (y, y') using the ODE
// x y'' + y' + x y = 0 differentiated n times:
//   y^(n+2) = -[(n+1) y^(n+1) + x y^(n) + n y^(n-1)] / x
std::array<long double, kTaylorOrder + 1> taylor_derivs(long double x0, long double y,
                                                        long double yp) {
    std::array<long double, kTaylorOrder + 1> d{};
    d[0] = y;
    d[1] = yp;
    for (int n = 0; n + 2 <= kTaylorOrder; ++n) {
        long double prev = (n == 0) ? 0.0L : static_cast<long double>(n) * d[n - 1];
        d[n + 2] = -((n + 1) * d[n + 1] + x0 * d[n] + prev) / x0;
    }
    return d;
}

// y(x0+h) = sum d[n] h^n / n!, y'(x0+h) = sum d[n+1] h^n / n!.
void taylor_eval(const std::array<long double, kTaylorOrder + 1>& d, long double h,
                 long double& y, long double& yp) {
    long double hn_over_fact = 1.0L;  // h^n / n!
    long double ay = 0.0L, ayp = 0.0L;
    for (int n = 0; n <= kTaylorOrder; ++n) {
        if (n > 0) hn_over_fact *= h / n;
        ay += d[n] * hn_over_fact;
        if (n + 1 <= kTaylorOrder) ayp += d[n + 1] * hn_over_fact;
    }
    y = ay;
    yp = ayp;
}

// Anchors at 8.0, 8.5, ... built once by marching the Taylor expansion.
const std::vector<Anchor>& anchor_table() {
    static const std::vector<Anchor> table = [] {
        std::vector<Anchor> t;
        const int n = static_cast<int>((kAnchorEnd - kAnchorStart) / kAnchorStep) + 1;
        t.reserve(n);
        long double y = j0_series(kAnchorStart);
        long double yp = -j1_series(kAnchorStart);
        t.push_back({y, yp});
        for (int i = 1; i < n; ++i) {
            const long double x0 = kAnchorStart + (i - 1) * kAnchorStep;
            auto d = taylor_derivs(x0, y, yp);
            taylor_eval(d, kAnchorStep, y, yp);
            t.push_back({y, yp});
        }
        return t;
    }();
    return table;
}

void j0_with_prime(double x, double& y_out, double& yp_out) {
    const double ax = std::fabs(x);
    const double sign = x < 0 ? -1.0 : 1.0;  // J0 even, J0' odd
    if (ax <= kAnchorStart) {
        y_out = static_cast<double>(j0_series(ax));
        yp_out = sign * static_cast<double>(-j1_series(ax));
        return;
    }
    if (ax <= kAnchorEnd) {
        const auto& t = anchor_table();
        int i = static_cast<int>((ax - kAnchorStart) / kAnchorStep);
        if (i >= static_cast<int>(t.size())) i = static_cast<int>(t.size()) - 1;
        const long double x0 = kAnchorStart + i * kAnchorStep;
        auto d = taylor_derivs(x0, t[i].y, t[i].yp);
        long double y, yp;
        taylor_eval(d, ax - x0, y, yp);
        y_out = static_cast<double>(y);
        yp_out = sign * static_cast<double>(yp);
        return;
    }
    // Large argument: Hankel asymptotic, two terms. Only used far outside
    // the fitting range; error O(x^-3).
    const double z = ax;
    const double p0 = 1.0 - 9.0 / (128.0 * z * z);
    const double q0 = -1.0 / (8.0 * z);
    const double chi = z - M_PI / 4.0;
    const double amp = std::sqrt(2.0 / (M_PI * z));
    double y = amp * (p0 * std::cos(chi) - q0 * std::sin(chi));
    if (y > 1.0) y = 1.0;
    if (y < -1.0) y = -1.0;
    y_out = y;
    yp_out = sign * amp * (-p0 * std::sin(chi) - q0 * std::cos(chi));
}

// ------------------------------------------------- incomplete beta ----

// Continued fraction for I_x(a,b) (modified Lentz). Needs many iterations
// when a or b is large (t quantiles at df in the hundreds), hence the cap.
double beta_cf(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double reg_inc_beta_impl(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                            (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

// Expand [0, hi] until pred(hi) flips, then bisect. pred must be monotone
// (true below the root, false above).
template <class Pred>
double bisect_down(Pred pred, double tol) {
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (pred(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 80) throw DomainError("quantile bracket failed");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite argument");
    double y, yp;
    j0_with_prime(x, y, yp);
    return y;
}

double bessel_j0_prime(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0_prime: non-finite argument");
    double y, yp;
    j0_with_prime(x, y, yp);
    return yp;
}

double reg_inc_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0) || !(a > 0.0) || !(b > 0.0))
        throw DomainError("reg_inc_beta: domain");
    return reg_inc_beta_impl(x, a, b);
}

double t_critical(double alpha_two_sided, int df) {
    if (!(alpha_two_sided > 0.0 && alpha_two_sided < 1.0) || df < 1)
        throw DomainError("t_critical: domain");
    const double a = alpha_two_sided;
    // P(|T| > q) = I_{df/(df+q^2)}(df/2, 1/2), decreasing in q.
    auto tail_above = [&](double q) {
        return reg_inc_beta_impl(df / (df + q * q), df / 2.0, 0.5) > a;
    };
    return bisect_down(tail_above, 1e-10);
}

double f_critical(double alpha, int df1, int df2) {
    if (!(alpha > 0.0 && alpha < 1.0) || df1 < 1 || df2 < 1)
        throw DomainError("f_critical: domain");
    // P(F > q) = I_{df2/(df2+df1*q)}(df2/2, df1/2), decreasing in q.
    auto tail_above = [&](double q) {
        return reg_inc_beta_impl(df2 / (df2 + df1 * q), df2 / 2.0, df1 / 2.0) > alpha;
    };
    return bisect_down(tail_above, 1e-9);
}

}  // namespace pwave::specfun
