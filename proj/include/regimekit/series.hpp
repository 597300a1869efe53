#pragma once

#include <string>
#include <vector>

#include "regimekit/period.hpp"

namespace regimekit {

// A named quarterly series with contiguous observations. Values are in
// percent for growth rates and ratios, level units otherwise. Immutable
// by convention once constructed.
struct Series {
    std::string name;
    Period start;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    Period period_at(std::size_t i) const { return start.plus(static_cast<int>(i)); }
    Period end() const { return start.plus(static_cast<int>(values.size()) - 1); }
};

// Quarter-over-quarter growth in percent: 100 * ln(x_t / x_{t-1}).
// Output is one observation shorter and starts one quarter later.
// Throws DomainError if any level is not strictly positive.
Series growth_rate(const Series& s);

} // namespace regimekit
