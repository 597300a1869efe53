#pragma once

#include <string>
#include <vector>

#include "regimekit/estimate.hpp"
#include "regimekit/stats.hpp"

namespace regimekit {

// Fit artifact: the whole FitResult plus the first estimation period,
// full double precision, library version embedded, no timestamps. The
// same bytes come back for the same fit.
std::string fit_to_json(const FitResult& fr, Period start);

struct StoredFit {
    FitResult fit;
    Period start; // period of the first estimation row
};

// Throws LoadError on malformed artifacts.
StoredFit fit_from_json(const std::string& text);
StoredFit load_fit(const std::string& path);

// Markdown table in the published layout: per-regime blocks of
// "estimate*** (se)" cells at 3 decimals, a transition-coefficient
// block, then the AIC / Loglikelihood / Number of observations footer.
std::string markdown_table(const FitResult& fr);

// period, p_surge, p_steady, regime_label rows of the smoothed output.
void write_probs_csv(const std::string& path, const FitResult& fr, Period start);

// Self-contained 900x360 chart: shaded surge episodes, the smoothed
// surge probability as a dashed blue line on [0,1], and the dependent
// series in black on a secondary axis.
std::string probs_svg(const FitResult& fr, const std::vector<double>& dep, Period start);

struct DescribeRow {
    std::string name;
    SummaryStats stats; // ADF fields filled by the caller
    bool adf_ok = true; // false leaves the ADF cell empty
};

// Variable, Mean, SD, Max, Min, ADF (t-stat with stars), N.
std::string describe_table(const std::vector<DescribeRow>& rows);
void write_describe_csv(const std::string& path, const std::vector<DescribeRow>& rows);

} // namespace regimekit
