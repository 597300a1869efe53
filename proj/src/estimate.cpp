#include "regimekit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "regimekit/errors.hpp"
#include "regimekit/linalg.hpp"
#include "regimekit/transition.hpp"

namespace regimekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Negative log-likelihood as a plain function of the flat vector;
// infeasible regions (density overflow) map to +inf for the optimizer.
Objective make_objective(const BoundModel& bound, const ModelSpec& spec) {
    return [&bound, &spec](const std::vector<double>& v) {
        try {
            return -loglikelihood(bound, unpack(v, spec)).loglik;
        } catch (const FilterError&) {
            return kInf;
        }
    };
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    double hi = v[n / 2];
    if (n % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
    return 0.5 * (v[n / 2 - 1] + hi);
}

double clamped_log_var(double var) {
    return std::clamp(std::log(std::max(var, 1e-8)), kLogVarMin, kLogVarMax);
}

} // namespace

std::vector<std::vector<double>> initial_points(const Dataset& ds, const ModelSpec& spec,
                                                std::uint64_t seed, std::size_t count) {
    if (count < 1) throw DomainError("initial_points: count must be at least 1");
    const std::size_t n = ds.n_obs();
    const std::size_t k = spec.n_regressors();

    // Median split: the high half seeds the surge regime.
    const double med = median(ds.dep);
    std::array<std::vector<double>, 2> halves;
    for (double v : ds.dep) halves[v > med ? 0 : 1].push_back(v);
    for (auto& h : halves)
        if (h.empty()) h.push_back(med); // fully constant dependent variable

    Params p0;
    for (int s = 0; s < 2; ++s) {
        const auto& h = halves[static_cast<std::size_t>(s)];
        double mean = 0.0;
        for (double v : h) mean += v;
        mean /= static_cast<double>(h.size());
        double var = 0.0;
        for (double v : h) var += (v - mean) * (v - mean);
        var /= static_cast<double>(h.size());
        p0.regime[static_cast<std::size_t>(s)].mu = mean;
        p0.regime[static_cast<std::size_t>(s)].log_var = clamped_log_var(var);
        p0.regime[static_cast<std::size_t>(s)].betas.assign(k, 0.0);
    }
    if (k > 0) {
        std::vector<const double*> cols;
        for (const auto& r : spec.regressors) cols.push_back(ds.find(r.name, r.lag)->values.data());
        try {
            auto ols = linalg::ols(cols, ds.dep.data(), n, true);
            for (std::size_t j = 0; j < k; ++j) {
                p0.regime[0].betas[j] = ols.coef[j + 1];
                p0.regime[1].betas[j] = ols.coef[j + 1];
            }
        } catch (const DomainError&) {
            // degenerate design: keep zero slopes
        }
    }
    p0.transition.alpha0 = {2.0, 2.0};
    if (spec.transition_mode == TransitionMode::TVTP)
        p0.transition.alpha1 = std::array<double, 2>{0.0, 0.0};

    const Bounds b = bounds_for(spec);
    std::vector<std::vector<double>> points;
    points.push_back(pack(p0));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 0.5);
    for (std::size_t i = 1; i < count; ++i) {
        std::vector<double> v = points[0];
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = std::clamp(v[j] + jitter(rng), b.lo[j], b.hi[j]);
        points.push_back(std::move(v));
    }
    return points;
}

Params normalize_labels(const Params& p) {
    if (p.regime[0].mu >= p.regime[1].mu) return p;
    Params q = p;
    std::swap(q.regime[0], q.regime[1]);
    std::swap(q.transition.alpha0[0], q.transition.alpha0[1]);
    if (q.transition.alpha1) std::swap((*q.transition.alpha1)[0], (*q.transition.alpha1)[1]);
    return q;
}

double aic_value(double loglik, std::size_t n_params, std::size_t n_obs) {
    return (-2.0 * loglik + 2.0 * static_cast<double>(n_params)) / static_cast<double>(n_obs);
}

Stars stars(double coef, double se) {
    if (!(se > 0.0)) return Stars::none;
    const double z = std::fabs(coef / se);
    if (z > 2.576) return Stars::three;
    if (z > 1.960) return Stars::two;
    if (z > 1.645) return Stars::one;
    return Stars::none;
}

Stars stars(double coef, const std::optional<double>& se) {
    return se ? stars(coef, *se) : Stars::none;
}

std::string star_label(Stars s) {
    switch (s) {
        case Stars::one: return "*";
        case Stars::two: return "**";
        case Stars::three: return "***";
        default: return "";
    }
}

std::vector<double> neg_loglik_hessian(const Dataset& ds, const ModelSpec& spec,
                                       const std::vector<double>& p_hat,
                                       const std::vector<bool>& fixed) {
    const BoundModel bound = bind(ds, spec);
    Objective f = make_objective(bound, spec);

    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < p_hat.size(); ++i)
        if (fixed.empty() || !fixed[i]) free.push_back(i);
    const std::size_t m = free.size();

    std::vector<double> h(m);
    for (std::size_t a = 0; a < m; ++a)
        h[a] = std::max(1e-4, 1e-4 * std::fabs(p_hat[free[a]]));

    const double f0 = f(p_hat);
    std::vector<double> H(m * m, 0.0);
    std::vector<double> x = p_hat;
    for (std::size_t a = 0; a < m; ++a) {
        // diagonal: (f(x+h) - 2 f(x) + f(x-h)) / h^2
        x[free[a]] = p_hat[free[a]] + h[a];
        const double fp = f(x);
        x[free[a]] = p_hat[free[a]] - h[a];
        const double fm = f(x);
        x[free[a]] = p_hat[free[a]];
        H[a * m + a] = (fp - 2.0 * f0 + fm) / (h[a] * h[a]);

        // off-diagonal four-point formula, symmetric by construction
        for (std::size_t b = a + 1; b < m; ++b) {
            const std::size_t ia = free[a], ib = free[b];
            x[ia] = p_hat[ia] + h[a];
            x[ib] = p_hat[ib] + h[b];
            const double fpp = f(x);
            x[ib] = p_hat[ib] - h[b];
            const double fpm = f(x);
            x[ia] = p_hat[ia] - h[a];
            const double fmm = f(x);
            x[ib] = p_hat[ib] + h[b];
            const double fmp = f(x);
            x[ia] = p_hat[ia];
            x[ib] = p_hat[ib];
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * h[a] * h[b]);
            H[a * m + b] = v;
            H[b * m + a] = v;
        }
    }
    return H;
}

std::vector<std::optional<double>> standard_errors(const Dataset& ds, const ModelSpec& spec,
                                                   const std::vector<double>& p_hat,
                                                   const std::vector<bool>& fixed) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < p_hat.size(); ++i)
        if (fixed.empty() || !fixed[i]) free.push_back(i);

    std::vector<std::optional<double>> out(p_hat.size());
    std::vector<double> H;
    try {
        H = neg_loglik_hessian(ds, spec, p_hat, fixed);
    } catch (const Error&) {
        return out; // probe stepped into an infeasible region: all absent
    }
    for (double v : H)
        if (!std::isfinite(v)) return out;

    auto inv = linalg::invert(H, free.size());
    if (!inv) return out;
    for (std::size_t a = 0; a < free.size(); ++a) {
        const double d = (*inv)[a * free.size() + a];
        if (d > 0.0) out[free[a]] = std::sqrt(d);
    }
    return out;
}

FitResult fit(const Dataset& ds, const ModelSpec& spec, const FitOptions& opts) {
    spec.validate();
    const BoundModel bound = bind(ds, spec);
    const std::size_t np = spec.n_params();
    if (ds.n_obs() <= np + 10)
        throw DomainError("fit: need more than " + std::to_string(np + 10) +
                          " observations, have " + std::to_string(ds.n_obs()));
    if (opts.restarts < 1) throw DomainError("fit: restarts must be at least 1");
    if (!opts.fixed.empty() && opts.fixed.size() != np)
        throw DomainError("fit: fixed-coordinate mask does not match the layout");

    std::vector<bool> fixed_mask(np, false);
    std::vector<std::optional<double>> pins(np);
    if (!opts.fixed.empty()) pins = opts.fixed;
    if (opts.fix_alpha1) {
        if (spec.transition_mode != TransitionMode::TVTP)
            throw DomainError("fit: fix_alpha1 applies to TVTP specs only");
        pins[np - 2] = pins[np - 2].value_or(0.0);
        pins[np - 1] = pins[np - 1].value_or(0.0);
    }
    for (std::size_t i = 0; i < np; ++i) fixed_mask[i] = pins[i].has_value();

    auto points = initial_points(ds, spec, opts.seed, opts.restarts);
    if (opts.init) {
        if (opts.init->size() != np)
            throw DomainError("fit: init vector does not match the layout");
        points[0] = *opts.init;
    }
    for (auto& pt : points)
        for (std::size_t i = 0; i < np; ++i)
            if (pins[i]) pt[i] = *pins[i];

    const Bounds b = bounds_for(spec);
    Objective obj = make_objective(bound, spec);
    MinimizeOptions mopts{opts.tol, opts.max_iter};

    std::vector<MinimizeResult> results(opts.restarts);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            results[i] = minimize(obj, points[i], b.lo, b.hi, fixed_mask, mopts);
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, opts.restarts));
    if (jobs == 1) {
        run_range(0, opts.restarts);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (opts.restarts + jobs - 1) / jobs;
        for (std::size_t w = 0; w < jobs; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(opts.restarts, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    FitResult fr;
    fr.spec = spec;
    fr.n_obs = ds.n_obs();
    fr.n_params = np;

    std::size_t best = opts.restarts;
    for (std::size_t i = 0; i < opts.restarts; ++i) {
        const auto& r = results[i];
        fr.restarts.push_back({i, r.usable() ? r.f : kInf, r.status, r.iterations, r.n_evals});
        if (!r.usable() || !std::isfinite(r.f)) continue;
        if (best == opts.restarts || r.f < results[best].f) best = i;
    }
    if (best == opts.restarts)
        throw EstimationError("fit: no restart produced a finite log-likelihood (" +
                              std::to_string(opts.restarts) + " attempted)");
    fr.best_restart = best;
    const MinimizeResult& win = results[best];
    fr.grad_inf_norm = win.grad_inf_norm;

    fr.params = normalize_labels(unpack(win.x, spec));
    const std::vector<double> x_hat = pack(fr.params);
    const bool swapped = x_hat != win.x;

    fr.filter = loglikelihood(bound, fr.params);
    fr.loglik = fr.filter.loglik;
    fr.aic = aic_value(fr.loglik, np, fr.n_obs);
    fr.smoothed = smooth(fr.filter, bound, fr.params);
    fr.classification = classify(fr.smoothed, ds.periods);

    // Durations: constant matrix under fixed probabilities, matrix at the
    // covariate mean otherwise.
    TransitionMatrix tm;
    if (spec.transition_mode == TransitionMode::TVTP) {
        double zbar = 0.0;
        for (std::size_t t = 0; t < fr.n_obs; ++t) zbar += bound.z[t];
        zbar /= static_cast<double>(fr.n_obs);
        tm = transition_matrix_at(fr.params.transition, zbar);
    } else {
        tm = transition_matrix_at(fr.params.transition);
    }
    fr.durations = durations(tm, fr.classification);

    // A label swap moves pinned coordinates to the other regime's slots;
    // the swapped mask keeps standard errors aligned with the estimate.
    std::vector<bool> se_mask = fixed_mask;
    if (swapped) {
        auto flip = [&se_mask](std::size_t a, std::size_t b) {
            const bool tmp = se_mask[a];
            se_mask[a] = se_mask[b];
            se_mask[b] = tmp;
        };
        const std::size_t block = 2 + spec.n_regressors();
        for (std::size_t i = 0; i < block; ++i) flip(i, i + block);
        flip(2 * block, 2 * block + 1);
        if (spec.transition_mode == TransitionMode::TVTP) flip(2 * block + 2, 2 * block + 3);
    }
    fr.std_errors = standard_errors(ds, spec, x_hat, se_mask);

    bool some_se_absent = false;
    for (std::size_t i = 0; i < np; ++i)
        if (!se_mask[i] && !fr.std_errors[i]) some_se_absent = true;
    if (some_se_absent)
        fr.warnings.push_back("standard errors unavailable for some parameters");

    for (int s = 0; s < 2; ++s) {
        double expected = 0.0;
        for (const auto& row : fr.smoothed.smoothed) expected += row[static_cast<std::size_t>(s)];
        if (expected < 3.0)
            fr.warnings.push_back(std::string("regime-starved: ") +
                                  (s == 0 ? "surge" : "steady") +
                                  " regime has fewer than 3 expected observations");
    }

    switch (win.status) {
        case MinimizeStatus::converged: fr.status = FitStatus::converged; break;
        case MinimizeStatus::max_iter:
            fr.status = FitStatus::max_iter;
            fr.warnings.push_back("optimizer hit the iteration limit");
            break;
        case MinimizeStatus::stalled:
            fr.status = FitStatus::converged;
            fr.warnings.push_back("line search stalled before the gradient tolerance");
            break;
        case MinimizeStatus::failed: fr.status = FitStatus::failed; break;
    }
    return fr;
}

} // namespace regimekit
