#include "regimekit/dataset.hpp"

#include <algorithm>

#include "regimekit/errors.hpp"

namespace regimekit {

const RegressorColumn* Dataset::find(const std::string& name, int lag) const {
    for (const auto& c : regressors)
        if (c.name == name && c.lag == lag) return &c;
    if (tp_covariate && tp_covariate->name == name && tp_covariate->lag == lag)
        return &*tp_covariate;
    return nullptr;
}

namespace {

// Period window on which a column lagged by `lag` is defined.
struct Window {
    Period lo;
    Period hi;
};

Window lagged_window(const Series& s, int lag) {
    return {s.start.plus(lag), s.end().plus(lag)};
}

RegressorColumn cut(const Series& s, int lag, Period from, std::size_t n) {
    RegressorColumn col{s.name, lag, {}};
    col.values.reserve(n);
    std::size_t offset = static_cast<std::size_t>(from.plus(-lag) - s.start);
    for (std::size_t i = 0; i < n; ++i) col.values.push_back(s.values[offset + i]);
    return col;
}

} // namespace

Dataset align(const Series& dep, const std::vector<std::pair<const Series*, int>>& regressors,
              std::optional<std::pair<const Series*, int>> tp_cov, std::size_t min_obs) {
    Window w{dep.start, dep.end()};
    auto widen = [&w](const Window& other) {
        w.lo = std::max(w.lo, other.lo);
        w.hi = std::min(w.hi, other.hi);
    };
    for (const auto& [s, lag] : regressors) widen(lagged_window(*s, lag));
    if (tp_cov) widen(lagged_window(*tp_cov->first, tp_cov->second));

    if (w.hi < w.lo)
        throw DomainError("align: no overlapping periods after lagging");
    const std::size_t n = static_cast<std::size_t>(w.hi - w.lo) + 1;
    if (n < min_obs)
        throw DomainError("align: only " + std::to_string(n) + " usable rows from " + w.lo.str() +
                          ", need " + std::to_string(min_obs));

    Dataset ds;
    ds.dep_name = dep.name;
    ds.dep = cut(dep, 0, w.lo, n).values;
    for (const auto& [s, lag] : regressors) ds.regressors.push_back(cut(*s, lag, w.lo, n));
    if (tp_cov) ds.tp_covariate = cut(*tp_cov->first, tp_cov->second, w.lo, n);
    ds.periods.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ds.periods.push_back(w.lo.plus(static_cast<int>(i)));
    return ds;
}

} // namespace regimekit
