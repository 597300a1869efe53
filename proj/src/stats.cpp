#include "regimekit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "regimekit/errors.hpp"
#include "regimekit/linalg.hpp"

namespace regimekit {

std::string reject_label(RejectLevel r) {
    switch (r) {
        case RejectLevel::p10: return "10%";
        case RejectLevel::p5: return "5%";
        case RejectLevel::p1: return "1%";
        default: return "none";
    }
}

std::string reject_stars(RejectLevel r) {
    switch (r) {
        case RejectLevel::p10: return "*";
        case RejectLevel::p5: return "**";
        case RejectLevel::p1: return "***";
        default: return "";
    }
}

SummaryStats summarize(const Series& s) {
    const std::size_t n = s.size();
    if (n < 2) throw DomainError("summarize: need at least 2 observations in '" + s.name + "'");
    SummaryStats st;
    st.n_obs = n;
    double sum = 0.0;
    st.max = s.values[0];
    st.min = s.values[0];
    for (double v : s.values) {
        sum += v;
        st.max = std::max(st.max, v);
        st.min = std::min(st.min, v);
    }
    st.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : s.values) {
        double d = v - st.mean;
        ss += d * d;
    }
    st.sd = std::sqrt(ss / static_cast<double>(n - 1));
    return st;
}

namespace {

constexpr double kAdfCrit10 = -2.57;
constexpr double kAdfCrit5 = -2.88;
constexpr double kAdfCrit1 = -3.44;

struct AdfRegression {
    double tstat;
    double aic;
    std::size_t n_used;
};

// Regression at augmentation order p over rows t = offset..T-1 of the
// differenced series (row t pairs dy[t] with y[t], lags dy[t-1..t-p]).
AdfRegression adf_at(const std::vector<double>& y, const std::vector<double>& dy,
                     std::size_t p, std::size_t offset) {
    const std::size_t rows = dy.size() - offset;
    std::vector<double> lag_y(rows);
    for (std::size_t t = 0; t < rows; ++t) lag_y[t] = y[offset + t];

    std::vector<std::vector<double>> lag_dy(p);
    std::vector<const double*> cols;
    cols.push_back(lag_y.data());
    for (std::size_t i = 1; i <= p; ++i) {
        lag_dy[i - 1].resize(rows);
        for (std::size_t t = 0; t < rows; ++t) lag_dy[i - 1][t] = dy[offset + t - i];
        cols.push_back(lag_dy[i - 1].data());
    }

    auto fit = linalg::ols(cols, dy.data() + offset, rows, true);
    if (!(fit.se[1] > 0.0)) throw DomainError("adf_test: degenerate regression");
    double aic = static_cast<double>(rows) *
                     std::log(fit.ssr / static_cast<double>(rows)) +
                 2.0 * static_cast<double>(fit.k);
    return {fit.coef[1] / fit.se[1], aic, rows};
}

} // namespace

AdfResult adf_test(const Series& s, std::size_t max_lag) {
    const std::size_t n = s.size();
    if (n < max_lag + 10)
        throw DomainError("adf_test: series '" + s.name + "' too short for max_lag");

    // dy[t] = y[t+1] - y[t]; regression row t uses level y[t] (= y_{t-1}
    // relative to dy[t]) so indexes line up without further shifting.
    std::vector<double> y(s.values.begin(), s.values.end() - 1);
    std::vector<double> dy(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) dy[t] = s.values[t + 1] - s.values[t];

    // Order selection on the sample every candidate can serve.
    std::size_t best_p = 0;
    double best_aic = 0.0;
    for (std::size_t p = 0; p <= max_lag; ++p) {
        AdfRegression r = adf_at(y, dy, p, max_lag);
        if (p == 0 || r.aic < best_aic) {
            best_aic = r.aic;
            best_p = p;
        }
    }

    AdfRegression final_r = adf_at(y, dy, best_p, best_p);
    AdfResult out;
    out.tstat = final_r.tstat;
    out.lag = best_p;
    out.n_used = final_r.n_used;
    if (out.tstat < kAdfCrit1)
        out.reject = RejectLevel::p1;
    else if (out.tstat < kAdfCrit5)
        out.reject = RejectLevel::p5;
    else if (out.tstat < kAdfCrit10)
        out.reject = RejectLevel::p10;
    return out;
}

} // namespace regimekit
