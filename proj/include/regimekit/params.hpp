#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "regimekit/model_spec.hpp"

namespace regimekit {

// Box bounds enforced during optimization.
inline constexpr double kLogVarMin = -10.0;
inline constexpr double kLogVarMax = 10.0;
inline constexpr double kAlphaMin = -50.0;
inline constexpr double kAlphaMax = 50.0;

struct RegimeParams {
    double mu = 0.0;
    std::vector<double> betas; // one per spec regressor, same order
    double log_var = 0.0;      // residual variance = exp(log_var)
};

struct TransitionParams {
    std::array<double, 2> alpha0{0.0, 0.0};
    std::optional<std::array<double, 2>> alpha1; // present under TVTP
};

// regime[0] = surge, regime[1] = steady (by the mu ordering convention).
struct Params {
    std::array<RegimeParams, 2> regime;
    TransitionParams transition;
};

// Flat layout:
//   [mu1, betas1..., log_var1, mu2, betas2..., log_var2,
//    alpha0_1, alpha0_2, (alpha1_1, alpha1_2)]
std::vector<double> pack(const Params& p);
Params unpack(const std::vector<double>& v, const ModelSpec& spec);

struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;
};
Bounds bounds_for(const ModelSpec& spec);

// Machine-readable coordinate names matching the flat layout, e.g.
// "mu1", "beta1_y_l1", "log_var1", "alpha0_1", "alpha1_2".
std::vector<std::string> param_names(const ModelSpec& spec);

} // namespace regimekit
