#include "regimekit/transition.hpp"

#include <algorithm>
#include <cmath>

#include "regimekit/errors.hpp"

namespace regimekit {

double logistic(double x) {
    double p;
    if (x >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-x));
    } else {
        double e = std::exp(x);
        p = e / (1.0 + e);
    }
    return std::clamp(p, 1e-12, 1.0 - 1e-12);
}

TransitionMatrix transition_matrix_at(const TransitionParams& tp, std::optional<double> z) {
    double x1 = tp.alpha0[0];
    double x2 = tp.alpha0[1];
    if (tp.alpha1) {
        if (!z)
            throw DomainError("transition_matrix_at: time-varying parameters need a covariate value");
        x1 += (*tp.alpha1)[0] * *z;
        x2 += (*tp.alpha1)[1] * *z;
    }
    return {logistic(x1), logistic(x2)};
}

std::pair<double, double> steady_state(const TransitionMatrix& tm) {
    double denom = 2.0 - tm.p11 - tm.p22;
    double pi1 = (1.0 - tm.p22) / denom;
    return {pi1, 1.0 - pi1};
}

double expected_duration(double p_stay) {
    return 1.0 / (1.0 - p_stay);
}

} // namespace regimekit
