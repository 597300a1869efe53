#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace regimekit {

enum class TransitionMode { FTP, TVTP };

struct RegressorRef {
    std::string name;
    int lag = 0;

    bool operator==(const RegressorRef&) const = default;
};

// Declarative description of one model: which lagged regressors enter the
// regime regressions, and whether the transition probabilities are fixed
// or driven by a lagged covariate.
struct ModelSpec {
    std::string dep_name = "pd";
    std::vector<RegressorRef> regressors;
    TransitionMode transition_mode = TransitionMode::FTP;
    std::optional<RegressorRef> tp_covariate;

    std::size_t n_regressors() const { return regressors.size(); }
    // 2*(mu, betas..., log_var) + alpha0 pair (+ alpha1 pair under TVTP)
    std::size_t n_params() const {
        return 2 * (2 + regressors.size()) +
               (transition_mode == TransitionMode::TVTP ? 4 : 2);
    }

    // mode/covariate consistency, unique regressor names, non-negative lags
    void validate() const;

    bool operator==(const ModelSpec&) const = default;
};

std::string mode_label(TransitionMode m); // "FTP" / "TVTP"

ModelSpec spec_from_json(const std::string& text);
std::string spec_to_json(const ModelSpec& spec);
ModelSpec load_spec(const std::string& path);

} // namespace regimekit
