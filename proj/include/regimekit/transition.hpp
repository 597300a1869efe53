#pragma once

#include <optional>
#include <utility>

#include "regimekit/params.hpp"

namespace regimekit {

// Staying probabilities of the two-state chain; leaving probabilities
// are implied (p12 = 1-p11, p21 = 1-p22). Both live strictly inside
// (0,1): the logistic below clamps its output away from the endpoints.
struct TransitionMatrix {
    double p11 = 0.5;
    double p22 = 0.5;

    double p12() const { return 1.0 - p11; }
    double p21() const { return 1.0 - p22; }
};

// e^x / (1+e^x), computed without overflow and clamped to
// [1e-12, 1-1e-12] so downstream ratios stay finite.
double logistic(double x);

// p11 = logistic(alpha0_1 + alpha1_1 * z), likewise p22. Fixed-probability
// parameters (alpha1 absent) ignore z; alpha1 present requires z.
TransitionMatrix transition_matrix_at(const TransitionParams& tp,
                                      std::optional<double> z = std::nullopt);

// Ergodic distribution: pi1 = (1-p22) / (2-p11-p22).
std::pair<double, double> steady_state(const TransitionMatrix& tm);

// Mean sojourn length of a regime with staying probability p: 1/(1-p).
double expected_duration(double p_stay);

} // namespace regimekit
