#include "regimekit/params.hpp"

#include <limits>

#include "regimekit/errors.hpp"

namespace regimekit {

std::vector<double> pack(const Params& p) {
    std::vector<double> v;
    v.reserve(2 * (2 + p.regime[0].betas.size()) + (p.transition.alpha1 ? 4 : 2));
    for (const auto& r : p.regime) {
        v.push_back(r.mu);
        v.insert(v.end(), r.betas.begin(), r.betas.end());
        v.push_back(r.log_var);
    }
    v.push_back(p.transition.alpha0[0]);
    v.push_back(p.transition.alpha0[1]);
    if (p.transition.alpha1) {
        v.push_back((*p.transition.alpha1)[0]);
        v.push_back((*p.transition.alpha1)[1]);
    }
    return v;
}

Params unpack(const std::vector<double>& v, const ModelSpec& spec) {
    if (v.size() != spec.n_params())
        throw DomainError("unpack: vector length " + std::to_string(v.size()) +
                          " does not match spec layout (" + std::to_string(spec.n_params()) + ")");
    const std::size_t k = spec.n_regressors();
    Params p;
    std::size_t i = 0;
    for (auto& r : p.regime) {
        r.mu = v[i++];
        r.betas.assign(v.begin() + i, v.begin() + i + k);
        i += k;
        r.log_var = v[i++];
    }
    p.transition.alpha0 = {v[i], v[i + 1]};
    i += 2;
    if (spec.transition_mode == TransitionMode::TVTP) {
        p.transition.alpha1 = std::array<double, 2>{v[i], v[i + 1]};
        i += 2;
    }
    return p;
}

Bounds bounds_for(const ModelSpec& spec) {
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t k = spec.n_regressors();
    Bounds b;
    b.lo.reserve(spec.n_params());
    b.hi.reserve(spec.n_params());
    for (int regime = 0; regime < 2; ++regime) {
        b.lo.push_back(-inf); // mu
        b.hi.push_back(inf);
        for (std::size_t j = 0; j < k; ++j) {
            b.lo.push_back(-inf); // beta
            b.hi.push_back(inf);
        }
        b.lo.push_back(kLogVarMin);
        b.hi.push_back(kLogVarMax);
    }
    const std::size_t n_alpha = spec.transition_mode == TransitionMode::TVTP ? 4 : 2;
    for (std::size_t j = 0; j < n_alpha; ++j) {
        b.lo.push_back(kAlphaMin);
        b.hi.push_back(kAlphaMax);
    }
    return b;
}

std::vector<std::string> param_names(const ModelSpec& spec) {
    std::vector<std::string> names;
    names.reserve(spec.n_params());
    for (int regime = 1; regime <= 2; ++regime) {
        const std::string r = std::to_string(regime);
        names.push_back("mu" + r);
        for (const auto& reg : spec.regressors)
            names.push_back("beta" + r + "_" + reg.name + "_l" + std::to_string(reg.lag));
        names.push_back("log_var" + r);
    }
    names.push_back("alpha0_1");
    names.push_back("alpha0_2");
    if (spec.transition_mode == TransitionMode::TVTP) {
        names.push_back("alpha1_1");
        names.push_back("alpha1_2");
    }
    return names;
}

} // namespace regimekit
