#include "regimekit/series.hpp"

#include <cmath>

#include "regimekit/errors.hpp"

namespace regimekit {

Series growth_rate(const Series& s) {
    if (s.values.size() < 2)
        throw DomainError("growth_rate: series '" + s.name +
                          "' needs at least 2 observations");
    Series out;
    out.name = s.name;
    out.start = s.start.plus(1);
    out.values.reserve(s.values.size() - 1);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (!(s.values[i] > 0.0))
            throw DomainError("growth_rate: non-positive level in '" + s.name +
                              "' at " + s.period_at(i).str());
        if (i > 0)
            out.values.push_back(100.0 * std::log(s.values[i] / s.values[i - 1]));
    }
    return out;
}

} // namespace regimekit
