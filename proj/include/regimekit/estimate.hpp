#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regimekit/dataset.hpp"
#include "regimekit/filter.hpp"
#include "regimekit/model_spec.hpp"
#include "regimekit/optimizer.hpp"
#include "regimekit/params.hpp"

namespace regimekit {

enum class FitStatus { converged, max_iter, failed };

struct RestartDiag {
    std::size_t index = 0;
    double neg_loglik = 0.0; // +inf when the restart failed
    MinimizeStatus status = MinimizeStatus::failed;
    std::size_t iterations = 0;
    std::size_t n_evals = 0;
};

struct FitOptions {
    std::size_t restarts = 20;
    std::uint64_t seed = 0;
    double tol = 1e-5;
    std::size_t max_iter = 500;
    std::size_t jobs = 1;
    // Pin the covariate slopes at zero (reduces TVTP to fixed probabilities).
    bool fix_alpha1 = false;
    // Per-coordinate pins in flat layout; overrides the starting points.
    std::vector<std::optional<double>> fixed;
    // Replacement for the data-driven first starting point.
    std::optional<std::vector<double>> init;
};

struct FitResult {
    ModelSpec spec;
    Params params;
    std::vector<std::optional<double>> std_errors; // flat layout; absent = unavailable
    double loglik = 0.0;
    double aic = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
    FilterOutput filter;
    SmoothOutput smoothed;
    Classification classification;
    Durations durations;
    FitStatus status = FitStatus::failed;
    std::size_t best_restart = 0;
    double grad_inf_norm = 0.0;
    std::vector<RestartDiag> restarts;
    std::vector<std::string> warnings;
};

// Maximum likelihood over the flat parameter vector: multi-start BFGS on
// the negative filter log-likelihood, best optimum by (value, restart
// index), labels normalized so regime 1 has the higher intercept, then
// standard errors, AIC, smoothed probabilities, dating and durations.
// TVTP model-implied durations evaluate the matrix at the covariate mean.
FitResult fit(const Dataset& ds, const ModelSpec& spec, const FitOptions& opts = {});

// First point is data-driven (median split of the dependent variable,
// full-sample least-squares slopes, alpha0 = 2); the rest jitter it with
// seeded Gaussian noise of scale 0.5, clipped to the box bounds.
std::vector<std::vector<double>> initial_points(const Dataset& ds, const ModelSpec& spec,
                                                std::uint64_t seed, std::size_t count);

// Central-difference Hessian of the negative log-likelihood restricted to
// the free coordinates; step max(1e-4, 1e-4|theta_i|). Row-major, size
// free^2, ordered by flat index.
std::vector<double> neg_loglik_hessian(const Dataset& ds, const ModelSpec& spec,
                                       const std::vector<double>& p_hat,
                                       const std::vector<bool>& fixed);

// sqrt(diagonal of the inverse Hessian); absent where the inverse fails,
// the diagonal is non-positive, or the coordinate was pinned.
std::vector<std::optional<double>> standard_errors(const Dataset& ds, const ModelSpec& spec,
                                                   const std::vector<double>& p_hat,
                                                   const std::vector<bool>& fixed = {});

// Swap regimes (and the transition parameter pairs) so mu1 >= mu2.
Params normalize_labels(const Params& p);

// (-2 loglik + 2k) / n
double aic_value(double loglik, std::size_t n_params, std::size_t n_obs);

enum class Stars { none, one, two, three };

// Two-sided normal test on coef/se at the 1.645 / 1.960 / 2.576 thresholds.
Stars stars(double coef, double se);
Stars stars(double coef, const std::optional<double>& se);
std::string star_label(Stars s); // "", "*", "**", "***"

} // namespace regimekit
