#pragma once

#include <cstddef>
#include <string>

#include "regimekit/series.hpp"

namespace regimekit {

enum class RejectLevel { none, p10, p5, p1 };

// "none", "10%", "5%", "1%"
std::string reject_label(RejectLevel r);
// "", "*", "**", "***"
std::string reject_stars(RejectLevel r);

struct SummaryStats {
    double mean = 0.0;
    double sd = 0.0;   // sample standard deviation, divisor n-1
    double max = 0.0;
    double min = 0.0;
    std::size_t n_obs = 0;
    double adf_tstat = 0.0;
    RejectLevel adf_reject_level = RejectLevel::none;
};

// Mean/sd/max/min/n. ADF fields stay at their defaults; callers wanting
// them run adf_test and copy the result in. Requires n >= 2.
SummaryStats summarize(const Series& s);

struct AdfResult {
    double tstat = 0.0;
    RejectLevel reject = RejectLevel::none;
    std::size_t lag = 0;     // augmentation order chosen by AIC
    std::size_t n_used = 0;  // observations in the final regression
};

// Augmented Dickey-Fuller regression with a constant: delta y on
// [1, y_{t-1}, delta y_{t-1..t-p}]. The order p minimizes AIC over
// 0..max_lag on the common sample implied by max_lag, then the chosen
// order is refit on its own maximal sample. Rejection compares the
// t-ratio on y_{t-1} against the constant-only asymptotic critical
// values -2.57 / -2.88 / -3.44 (10/5/1 percent).
AdfResult adf_test(const Series& s, std::size_t max_lag = 4);

} // namespace regimekit
