#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regimekit/period.hpp"
#include "regimekit/series.hpp"

namespace regimekit {

struct RegressorColumn {
    std::string name;
    int lag = 0;
    std::vector<double> values; // row t holds the source value at period t-lag
};

// Lag-aligned estimation sample. Row t corresponds to periods[t]; every
// column has n_obs entries copied verbatim from the source series.
struct Dataset {
    std::string dep_name;
    std::vector<double> dep;
    std::vector<RegressorColumn> regressors;
    std::optional<RegressorColumn> tp_covariate;
    std::vector<Period> periods;

    std::size_t n_obs() const { return dep.size(); }
    // Searches regressors first, then the tp covariate; nullptr if absent.
    const RegressorColumn* find(const std::string& name, int lag) const;
};

// Restricts rows to periods where the dependent value and every lagged
// column exist. Throws DomainError when fewer than min_obs rows survive,
// reporting the first usable period.
Dataset align(const Series& dep,
              const std::vector<std::pair<const Series*, int>>& regressors,
              std::optional<std::pair<const Series*, int>> tp_cov = std::nullopt,
              std::size_t min_obs = 20);

} // namespace regimekit
