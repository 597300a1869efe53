#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace regimekit {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeOptions {
    double grad_tol = 1e-5; // on max |projected gradient|, scaled by 1+|f|
    std::size_t max_iter = 500;
};

enum class MinimizeStatus { converged, max_iter, stalled, failed };

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    std::vector<double> grad;
    double grad_inf_norm = 0.0; // projected, free coordinates only
    std::size_t iterations = 0;
    std::size_t n_evals = 0;
    MinimizeStatus status = MinimizeStatus::failed;
    std::string message;

    bool usable() const { return status != MinimizeStatus::failed; }
};

// BFGS with central-difference gradients, Armijo backtracking, and box
// clipping. `fixed` pins coordinates at their x0 value; bounds clip every
// trial point. The objective may return +inf anywhere; a non-finite value
// at x0 yields status failed.
MinimizeResult minimize(const Objective& f, std::vector<double> x0,
                        const std::vector<double>& lo, const std::vector<double>& hi,
                        const std::vector<bool>& fixed, const MinimizeOptions& opts = {});

} // namespace regimekit
