#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "regimekit/estimate.hpp"
#include "regimekit/model_spec.hpp"
#include "regimekit/series.hpp"
#include "regimekit/stats.hpp"

namespace regimekit {

// Where a searched variable enters the model.
enum class SearchWhere { regression, transition, both };

// "Significant" can mean in at least one regime or in both.
enum class SignificanceRule { either_regime, both_regimes };

struct CandidateCoef {
    double value = 0.0;
    std::optional<double> se;
};

struct LagCandidate {
    int lag = -1;    // regression lag; -1 when not searched
    int tp_lag = -1; // transition lag; -1 when not searched
    bool ok = false;
    double loglik = 0.0;
    double aic = 0.0;
    // the searched variable's coefficient per regime (regression search)
    // or the covariate slope per regime equation (transition search)
    std::array<std::optional<CandidateCoef>, 2> coef;
    std::string note; // failure reason when !ok
};

struct LagSearchResult {
    std::optional<int> lag;    // chosen regression lag
    std::optional<int> tp_lag; // chosen transition lag
    std::vector<LagCandidate> candidates;
    std::vector<std::string> warnings;
};

// Every candidate fits on one common sample aligned at the largest lag in
// play, so likelihoods and AICs are comparable across lags.

// Smallest lag in 1..max_lag at which the added variable's coefficient is
// significant at `level` (either or both regimes); absent when none
// qualifies. Candidate fits that fail are skipped with a warning.
LagSearchResult min_significant_lag(const std::vector<Series>& table, const ModelSpec& base,
                                    const std::string& var, int max_lag,
                                    RejectLevel level = RejectLevel::p10,
                                    SignificanceRule rule = SignificanceRule::either_regime,
                                    const FitOptions& fit_opts = {});

// AIC-minimizing lag (or lag pair for `both`); ties break toward the
// smaller lag, lexicographically for pairs. Throws EstimationError when
// every candidate fails.
LagSearchResult aic_lag_search(const std::vector<Series>& table, const ModelSpec& base,
                               const std::string& var, SearchWhere where, int max_lag,
                               const FitOptions& fit_opts = {});

// lag, tp_lag, loglik, aic, per-regime coefficient/SE/stars, status.
void write_candidates_csv(const std::string& path, const LagSearchResult& result);

} // namespace regimekit
