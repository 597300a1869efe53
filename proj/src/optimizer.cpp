#include "regimekit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace regimekit {

namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr double kStepShrink = 0.5;
constexpr int kMaxBacktracks = 60;

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

struct Workspace {
    const Objective& f;
    const std::vector<double>& lo;
    const std::vector<double>& hi;
    const std::vector<bool>& fixed;
    std::size_t n_evals = 0;

    double eval(const std::vector<double>& x) {
        ++n_evals;
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }

    // Central differences on free coordinates; one-sided fallback when a
    // probe lands in a non-finite region.
    std::vector<double> gradient(const std::vector<double>& x, double fx) {
        std::vector<double> g(x.size(), 0.0);
        std::vector<double> probe = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (fixed[i]) continue;
            const double h = 6e-6 * (1.0 + std::fabs(x[i]));
            probe[i] = x[i] + h;
            double fp = eval(probe);
            probe[i] = x[i] - h;
            double fm = eval(probe);
            probe[i] = x[i];
            if (std::isfinite(fp) && std::isfinite(fm))
                g[i] = (fp - fm) / (2.0 * h);
            else if (std::isfinite(fp))
                g[i] = (fp - fx) / h;
            else if (std::isfinite(fm))
                g[i] = (fx - fm) / h;
            else
                g[i] = 0.0;
        }
        return g;
    }
};

// Gradient components pointing out of an active bound do not count
// against convergence; the box absorbs them.
double projected_inf_norm(const std::vector<double>& x, const std::vector<double>& g,
                          const std::vector<double>& lo, const std::vector<double>& hi,
                          const std::vector<bool>& fixed) {
    double norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (fixed[i]) continue;
        const double eps = 1e-10 * (1.0 + std::fabs(x[i]));
        if (x[i] <= lo[i] + eps && g[i] > 0.0) continue;
        if (x[i] >= hi[i] - eps && g[i] < 0.0) continue;
        norm = std::max(norm, std::fabs(g[i]));
    }
    return norm;
}

} // namespace

MinimizeResult minimize(const Objective& f, std::vector<double> x0,
                        const std::vector<double>& lo, const std::vector<double>& hi,
                        const std::vector<bool>& fixed, const MinimizeOptions& opts) {
    const std::size_t n = x0.size();
    Workspace ws{f, lo, hi, fixed, 0};
    MinimizeResult res;

    for (std::size_t i = 0; i < n; ++i)
        if (!fixed[i]) x0[i] = clip(x0[i], lo[i], hi[i]);

    std::vector<double> x = x0;
    double fx = ws.eval(x);
    if (!std::isfinite(fx)) {
        res.x = std::move(x);
        res.f = fx;
        res.n_evals = ws.n_evals;
        res.status = MinimizeStatus::failed;
        res.message = "objective not finite at the starting point";
        return res;
    }

    std::vector<double> g = ws.gradient(x, fx);
    // Inverse-Hessian approximation, identity to start.
    std::vector<double> H(n * n, 0.0);
    auto reset_H = [&] {
        std::fill(H.begin(), H.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
    };
    reset_H();

    auto finish = [&](MinimizeStatus st, std::string msg) {
        res.x = x;
        res.f = fx;
        res.grad = g;
        res.grad_inf_norm = projected_inf_norm(x, g, lo, hi, fixed);
        res.n_evals = ws.n_evals;
        res.status = st;
        res.message = std::move(msg);
        return res;
    };

    std::vector<double> d(n), x_new(n), g_new(n), s(n), yv(n), Hy(n);
    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
        res.iterations = iter;
        const double pg = projected_inf_norm(x, g, lo, hi, fixed);
        if (pg <= opts.grad_tol * (1.0 + std::fabs(fx)))
            return finish(MinimizeStatus::converged, "projected gradient below tolerance");

        // d = -H g on free coordinates
        double dg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (fixed[i]) {
                d[i] = 0.0;
                continue;
            }
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (!fixed[j]) acc += H[i * n + j] * g[j];
            d[i] = -acc;
            dg += d[i] * g[i];
        }
        if (!(dg < 0.0)) {
            reset_H();
            dg = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = fixed[i] ? 0.0 : -g[i];
                dg += d[i] * g[i];
            }
            if (!(dg < 0.0))
                return finish(pg <= 10.0 * opts.grad_tol * (1.0 + std::fabs(fx))
                                  ? MinimizeStatus::converged
                                  : MinimizeStatus::stalled,
                              "no descent direction");
        }

        // Backtracking on the clipped trial point; the Armijo slope uses
        // the realized displacement, which clipping may shorten.
        double step = 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            double slope = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                x_new[i] = fixed[i] ? x[i] : clip(x[i] + step * d[i], lo[i], hi[i]);
                slope += g[i] * (x_new[i] - x[i]);
            }
            if (slope < 0.0) {
                f_new = ws.eval(x_new);
                if (f_new <= fx + kArmijoC1 * slope) {
                    accepted = true;
                    break;
                }
            }
            step *= kStepShrink;
        }
        if (!accepted)
            return finish(pg <= 10.0 * opts.grad_tol * (1.0 + std::fabs(fx))
                              ? MinimizeStatus::converged
                              : MinimizeStatus::stalled,
                          "line search could not improve the objective");

        ws.gradient(x_new, f_new).swap(g_new);

        double sy = 0.0, ss = 0.0, yy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            yv[i] = g_new[i] - g[i];
            sy += s[i] * yv[i];
            ss += s[i] * s[i];
            yy += yv[i] * yv[i];
        }
        if (sy > 1e-10 * std::sqrt(ss * yy) && sy > 0.0) {
            // H <- (I - r s y')H(I - r y s') + r s s'
            const double r = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * yv[j];
                Hy[i] = acc;
            }
            double yHy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yHy += yv[i] * Hy[i];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    H[i * n + j] += -r * (s[i] * Hy[j] + Hy[i] * s[j]) +
                                    r * (1.0 + r * yHy) * s[i] * s[j];
                }
            }
        }

        x.swap(x_new);
        fx = f_new;
        g.swap(g_new);
    }
    res.iterations = opts.max_iter;
    return finish(MinimizeStatus::max_iter, "iteration limit reached");
}

} // namespace regimekit
