#pragma once

// Shared JSON (de)serialization of parameter vectors. Internal to src/.

#include <json.hpp>

#include "regimekit/errors.hpp"
#include "regimekit/params.hpp"

namespace regimekit::detail {

inline nlohmann::json params_to_json(const Params& p) {
    nlohmann::json j;
    j["mu1"] = p.regime[0].mu;
    j["betas1"] = p.regime[0].betas;
    j["log_var1"] = p.regime[0].log_var;
    j["mu2"] = p.regime[1].mu;
    j["betas2"] = p.regime[1].betas;
    j["log_var2"] = p.regime[1].log_var;
    j["alpha0"] = p.transition.alpha0;
    if (p.transition.alpha1) j["alpha1"] = *p.transition.alpha1;
    return j;
}

inline Params params_from_json(const nlohmann::json& j, const ModelSpec& spec) {
    Params p;
    try {
        p.regime[0].mu = j.at("mu1").get<double>();
        p.regime[0].betas = j.value("betas1", std::vector<double>{});
        p.regime[0].log_var = j.at("log_var1").get<double>();
        p.regime[1].mu = j.at("mu2").get<double>();
        p.regime[1].betas = j.value("betas2", std::vector<double>{});
        p.regime[1].log_var = j.at("log_var2").get<double>();
        auto a0 = j.at("alpha0").get<std::vector<double>>();
        if (a0.size() != 2) throw LoadError("params: alpha0 must have 2 entries");
        p.transition.alpha0 = {a0[0], a0[1]};
        if (j.contains("alpha1") && !j.at("alpha1").is_null()) {
            auto a1 = j.at("alpha1").get<std::vector<double>>();
            if (a1.size() != 2) throw LoadError("params: alpha1 must have 2 entries");
            p.transition.alpha1 = std::array<double, 2>{a1[0], a1[1]};
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("params: ") + e.what());
    }
    const std::size_t k = spec.n_regressors();
    if (p.regime[0].betas.size() != k || p.regime[1].betas.size() != k)
        throw LoadError("params: beta count does not match the spec's regressors");
    const bool tvtp = spec.transition_mode == TransitionMode::TVTP;
    if (tvtp != p.transition.alpha1.has_value())
        throw LoadError(tvtp ? "params: alpha1 required in TVTP mode"
                             : "params: alpha1 present without TVTP mode");
    return p;
}

} // namespace regimekit::detail
