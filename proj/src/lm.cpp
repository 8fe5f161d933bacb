#include "pwave/lm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwave/errors.hpp"
#include "pwave/specfun.hpp"

namespace pwave::wavefit {

namespace {

constexpr double kFirstJ0Zero = 2.4048255577;
constexpr double kLogCap = 700.0;  // exp() stays finite

// flat layout: [C, rate, p0] or [C1, w1, p01, C2, w2, p02]
std::vector<double> flatten(const ModelParams& params) {
    if (auto* b = std::get_if<BesselParams>(&params)) return {b->C, b->omega, b->p0};
    if (auto* k = std::get_if<KummerParams>(&params)) return {k->C, k->sqrtA, k->p0};
    if (auto* t = std::get_if<TwoPeakParams>(&params))
        return {t->left.C, t->left.omega, t->left.p0,
                t->right.C, t->right.omega, t->right.p0};
    throw DomainError("lm_fit: empty parameter set");
}

ModelParams unflatten(ModelKind kind, const std::vector<double>& v) {
    switch (kind) {
        case ModelKind::Bessel0: return BesselParams{v[0], v[1], v[2]};
        case ModelKind::Kummer1: return KummerParams{v[0], v[1], v[2]};
        case ModelKind::Bessel0TwoPeak: {
            TwoPeakParams t{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
            if (t.left.p0 > t.right.p0) std::swap(t.left, t.right);
            return t;
        }
        default: throw DomainError("lm_fit: cannot fit kind " + to_string(kind));
    }
}

double eval_flat(ModelKind kind, double p, const std::vector<double>& v) {
    switch (kind) {
        case ModelKind::Bessel0:
            return v[0] * std::fabs(specfun::bessel_j0(v[1] * (p - v[2])));
        case ModelKind::Kummer1: {
            const double d = std::fabs(p - v[2]);
            return v[0] * std::exp(-v[1] * d) * std::fabs(1.0 - 2.0 * v[1] * d);
        }
        case ModelKind::Bessel0TwoPeak:
            return v[0] * std::fabs(specfun::bessel_j0(v[1] * (p - v[2]))) +
                   v[3] * std::fabs(specfun::bessel_j0(v[4] * (p - v[5])));
        default: return 0.0;
    }
}

// log-transform scale parameters; clamp p0 into the grid
struct Codec {
    ModelKind kind;
    double p_lo, p_hi;

    std::vector<double> encode(const std::vector<double>& v) const {
        std::vector<double> t(v);
        for (size_t j = 0; j < t.size(); j += 3) {
            t[j] = std::log(std::max(v[j], 1e-300));
            t[j + 1] = std::log(std::max(v[j + 1], 1e-300));
        }
        return t;
    }
    std::vector<double> decode(const std::vector<double>& t) const {
        std::vector<double> v(t);
        for (size_t j = 0; j < v.size(); j += 3) {
            v[j] = std::exp(std::clamp(t[j], -kLogCap, kLogCap));
            v[j + 1] = std::exp(std::clamp(t[j + 1], -kLogCap, kLogCap));
            v[j + 2] = std::clamp(t[j + 2], p_lo, p_hi);
        }
        return v;
    }
};

// (A + lambda*diag(A)) delta = g, Gaussian elimination with partial pivoting.
// Returns false on a vanishing pivot.
bool solve_damped(std::vector<double> A, std::vector<double> g, double lambda,
                  std::vector<double>& delta) {
    const int n = static_cast<int>(g.size());
    for (int i = 0; i < n; ++i) A[i * n + i] *= (1.0 + lambda);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r * n + col]) > std::fabs(A[piv * n + col])) piv = r;
        if (std::fabs(A[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = col; c < n; ++c) std::swap(A[col * n + c], A[piv * n + c]);
            std::swap(g[col], g[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r * n + col] / A[col * n + col];
            for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
            g[r] -= f * g[col];
        }
    }
    delta.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = g[r];
        for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * delta[c];
        delta[r] = s / A[r * n + r];
    }
    return true;
}

struct Problem {
    ModelKind kind;
    std::vector<double> prices;  // currency units
    const std::vector<double>* y;
    Codec codec;

    double ssr_raw(const std::vector<double>& v) const {
        double s = 0.0;
        for (size_t i = 0; i < prices.size(); ++i) {
            const double r = (*y)[i] - eval_flat(kind, prices[i], v);
            s += r * r;
        }
        return s;
    }
    double ssr_at(const std::vector<double>& t) const { return ssr_raw(codec.decode(t)); }
};

// One damped descent from the raw (unencoded) start s0.
LmResult descend(const Problem& prob, const std::vector<double>& s0, const FitConfig& cfg) {
    // Exact data at the start: report it untouched. The log-space round-trip
    // below costs an ulp on C and the rate, which would turn an exact zero
    // into ~1e-31 and leave nothing for the iteration to improve on.
    if (prob.ssr_raw(s0) == 0.0) {
        LmResult out;
        out.ssr = 0.0;
        out.converged = true;
        out.params = unflatten(prob.kind, s0);
        return out;
    }

    const int np = static_cast<int>(s0.size());
    const int ny = static_cast<int>(prob.prices.size());

    std::vector<double> t = prob.codec.encode(s0);
    double ssr = prob.ssr_at(t);
    LmResult out;
    out.ssr = ssr;
    out.converged = (ssr == 0.0);

    double lambda = cfg.lambda_init;
    std::vector<double> resid(ny), J(ny * np), A(np * np), g(np), delta, t_try;

    for (int iter = 0; !out.converged && iter < cfg.max_iterations; ++iter) {
        out.iterations = iter + 1;
        {
            const auto v = prob.codec.decode(t);
            for (int i = 0; i < ny; ++i)
                resid[i] = (*prob.y)[i] - eval_flat(prob.kind, prob.prices[i], v);
        }
        // central differences on the encoded parameters
        for (int j = 0; j < np; ++j) {
            const double h = cfg.jacobian_step * std::max(std::fabs(t[j]), 1.0);
            std::vector<double> tp(t), tm(t);
            tp[j] += h;
            tm[j] -= h;
            const auto vp = prob.codec.decode(tp);
            const auto vm = prob.codec.decode(tm);
            for (int i = 0; i < ny; ++i) {
                const double fp = eval_flat(prob.kind, prob.prices[i], vp);
                const double fm = eval_flat(prob.kind, prob.prices[i], vm);
                J[i * np + j] = -(fp - fm) / (2.0 * h);  // d(resid)/d(theta)
            }
        }
        for (int a = 0; a < np; ++a) {
            g[a] = 0.0;
            for (int b = a; b < np; ++b) {
                double s = 0.0;
                for (int i = 0; i < ny; ++i) s += J[i * np + a] * J[i * np + b];
                A[a * np + b] = A[b * np + a] = s;
            }
            for (int i = 0; i < ny; ++i) g[a] += J[i * np + a] * resid[i];
        }

        bool moved = false;
        for (int k = 0; k <= 30; ++k) {
            if (!solve_damped(A, g, lambda, delta)) {
                out.singular = true;
                lambda = std::min(lambda * cfg.lambda_up, 1e14);
                if (lambda >= 1e14) break;
                continue;
            }
            t_try = t;
            for (int j = 0; j < np; ++j) t_try[j] -= delta[j];
            const double ssr_try = prob.ssr_at(t_try);
            if (std::isfinite(ssr_try) && ssr_try < ssr) {
                const double rel = (ssr - ssr_try) / ssr;
                double step = 0.0;
                for (double dj : delta) step += dj * dj;
                t = t_try;
                ssr = ssr_try;
                lambda = std::max(lambda * cfg.lambda_down, 1e-12);
                moved = true;
                if (rel < cfg.ssr_rel_tol || std::sqrt(step) < cfg.step_tol || ssr == 0.0)
                    out.converged = true;
                break;
            }
            lambda = std::min(lambda * cfg.lambda_up, 1e14);
            if (lambda >= 1e14) break;
        }
        if (!moved) break;  // no downhill step at maximum damping
    }

    out.ssr = ssr;
    out.params = unflatten(prob.kind, prob.codec.decode(t));
    return out;
}

Problem make_problem(ModelKind kind, const VolumeHistogram& hist) {
    Problem prob;
    prob.kind = kind;
    prob.prices.reserve(hist.size());
    for (PriceMils p : hist.prices) prob.prices.push_back(to_currency(p));
    prob.y = &hist.probabilities;
    prob.codec = Codec{kind, prob.prices.front(), prob.prices.back()};
    return prob;
}

// Distance from the peak to where probability first drops below half of the
// peak, in either direction; 0 when it never does.
double half_drop_distance(const VolumeHistogram& h, int i0) {
    const auto& y = h.probabilities;
    const double half = y[i0] / 2.0;
    const int n = static_cast<int>(y.size());
    double best = 0.0;
    for (int i = i0 + 1; i < n; ++i)
        if (y[i] < half) {
            best = to_currency(h.prices[i] - h.prices[i0]);
            break;
        }
    for (int i = i0 - 1; i >= 0; --i)
        if (y[i] < half) {
            const double d = to_currency(h.prices[i0] - h.prices[i]);
            if (best == 0.0 || d < best) best = d;
            break;
        }
    return best;
}

// Distance from the peak to the first local minimum in each direction.
void valley_distances(const VolumeHistogram& h, int i0, std::vector<double>& out) {
    const auto& y = h.probabilities;
    const int n = static_cast<int>(y.size());
    for (int step : {+1, -1}) {
        int i = i0;
        while (i + step >= 0 && i + step < n && y[i + step] <= y[i]) i += step;
        const double d = std::fabs(to_currency(h.prices[i] - h.prices[i0]));
        if (d > 0.0) out.push_back(d);
    }
}

double rate_from_distance(ModelKind kind, double d) {
    return kind == ModelKind::Bessel0 ? kFirstJ0Zero / d : 1.0 / (2.0 * d);
}

}  // namespace

LmResult lm_descend(ModelKind kind, const VolumeHistogram& hist, const ModelParams& init,
                    const FitConfig& config) {
    const Problem prob = make_problem(kind, hist);
    return descend(prob, flatten(init), config);
}

LmResult lm_fit(ModelKind kind, const VolumeHistogram& hist, const ModelParams& init,
                const FitConfig& config) {
    const size_t need = kind == ModelKind::Bessel0TwoPeak ? 7 : 4;
    if (hist.size() < need)
        throw DegenerateDay(hist.day_id + ": " + std::to_string(hist.size()) +
                            " points, need " + std::to_string(need));
    const Problem prob = make_problem(kind, hist);

    std::vector<std::vector<double>> starts;
    const auto v0 = flatten(init);

    if (kind == ModelKind::Bessel0TwoPeak) {
        starts.push_back(v0);
        // midpoint split as the alternative seed
        const int n = static_cast<int>(hist.size());
        const int mid = n / 2;
        if (mid >= 2 && n - mid >= 2) {
            TwoPeakParams tp;
            tp.left = bessel_side_guess(hist, 0, mid + 1);
            tp.right = bessel_side_guess(hist, mid, n);
            if (tp.left.p0 > tp.right.p0) std::swap(tp.left, tp.right);
            starts.push_back(flatten(ModelParams{tp}));
        }
    } else {
        // p0 seeds: supplied, argmax, volume-weighted mean, grid midpoint
        std::vector<double> p0s{v0[2]};
        {
            int i0 = 0;
            double pbar = 0.0;
            for (size_t i = 0; i < hist.size(); ++i) {
                if (hist.probabilities[i] > hist.probabilities[i0]) i0 = static_cast<int>(i);
                pbar += to_currency(hist.prices[i]) * hist.probabilities[i];
            }
            const double cands[3] = {to_currency(hist.prices[i0]), pbar,
                                     0.5 * (prob.prices.front() + prob.prices.back())};
            for (int c = 0; c < std::min(3, config.multistart_count); ++c) p0s.push_back(cands[c]);
        }
        // width seeds: supplied, shape-derived, and a geometric ladder
        std::vector<double> rates{v0[1]};
        {
            int i0 = 0;
            for (size_t i = 1; i < hist.size(); ++i)
                if (hist.probabilities[i] > hist.probabilities[i0]) i0 = static_cast<int>(i);
            const double hd = half_drop_distance(hist, i0);
            if (hd > 0.0) rates.push_back(rate_from_distance(kind, hd));
            std::vector<double> vd;
            valley_distances(hist, i0, vd);
            for (double d : vd) rates.push_back(rate_from_distance(kind, d));

            const double tick = to_currency(hist.tick());
            const double span = std::max(prob.prices.back() - prob.prices.front(), tick);
            const double cap = M_PI / tick;
            const double floor = 1.0 / span;
            for (double r = v0[1] * 1.3; r < cap; r *= 1.3) rates.push_back(r);
            for (double r = v0[1] / 1.3; r > floor; r /= 1.3) rates.push_back(r);
        }
        // dedup (1% tolerance) keeping first occurrences
        auto dedup = [](std::vector<double>& xs, double rel) {
            std::vector<double> out;
            for (double x : xs) {
                bool seen = false;
                for (double o : out)
                    if (std::fabs(x - o) <= rel * std::max(std::fabs(o), 1e-12)) {
                        seen = true;
                        break;
                    }
                if (!seen) out.push_back(x);
            }
            xs = out;
        };
        dedup(p0s, 1e-9);
        dedup(rates, 0.01);

        for (double p0 : p0s)
            for (double r : rates) starts.push_back({v0[0], r, p0});

        // The geometric ladder can straddle a basin entirely when the wave
        // oscillates near the grid's resolution limit.  The model is linear
        // in C, so a linear sweep over the rate with the closed-form best
        // amplitude profiles the SSR cheaply; its local minima mark every
        // candidate basin and join the start list with their own C.
        {
            const double tick = to_currency(hist.tick());
            const double span = std::max(prob.prices.back() - prob.prices.front(), tick);
            const double step = M_PI / (4.0 * span);
            const size_t n_scan_p0 = std::min<size_t>(2, p0s.size());
            for (size_t ip = 0; ip < n_scan_p0; ++ip) {
                const double p0 = p0s[ip];
                std::vector<double> rs, cs, es;
                std::vector<double> v{1.0, 0.0, p0};
                for (double r = 1.0 / span; r < M_PI / tick; r += step) {
                    v[1] = r;
                    double sgy = 0.0, sgg = 0.0;
                    for (size_t i = 0; i < prob.prices.size(); ++i) {
                        const double g = eval_flat(kind, prob.prices[i], v);
                        sgy += g * hist.probabilities[i];
                        sgg += g * g;
                    }
                    double c = 0.0, e = 0.0;  // e is SSR less the constant sum(y^2)
                    if (sgg > 0.0 && sgy > 0.0) {
                        c = sgy / sgg;
                        e = -sgy * sgy / sgg;
                    }
                    rs.push_back(r);
                    cs.push_back(c);
                    es.push_back(e);
                }
                std::vector<size_t> mins;
                for (size_t k = 0; k < rs.size(); ++k) {
                    const bool down_l = k == 0 || es[k] < es[k - 1];
                    const bool down_r = k + 1 == rs.size() || es[k] <= es[k + 1];
                    if (down_l && down_r && cs[k] > 0.0) mins.push_back(k);
                }
                std::sort(mins.begin(), mins.end(),
                          [&](size_t a, size_t b) { return es[a] < es[b]; });
                if (mins.size() > 4) mins.resize(4);
                for (size_t k : mins) starts.push_back({cs[k], rs[k], p0});
            }
        }
    }

    LmResult best;
    bool first = true;
    for (const auto& s : starts) {
        LmResult res = descend(prob, s, config);
        if (first || res.ssr < best.ssr) {
            best = res;
            first = false;
        }
    }
    return best;
}

}  // namespace pwave::wavefit
