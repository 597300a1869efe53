#include "regimekit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json_util.hpp"
#include "regimekit/errors.hpp"
#include "regimekit/transition.hpp"

namespace regimekit {

namespace {

GeneratorSpec generator_for(const DGPConfig& cfg, const std::string& name) {
    auto it = cfg.generators.find(name);
    return it == cfg.generators.end() ? GeneratorSpec{} : it->second;
}

} // namespace

SimOutput simulate(const DGPConfig& cfg) {
    cfg.spec.validate();
    if (cfg.T < 1) throw DomainError("simulate: T must be positive");
    if (pack(cfg.params).size() != cfg.spec.n_params())
        throw DomainError("simulate: params do not match the spec layout");

    int max_lag = 0;
    for (const auto& r : cfg.spec.regressors) max_lag = std::max(max_lag, r.lag);
    if (cfg.spec.tp_covariate) max_lag = std::max(max_lag, cfg.spec.tp_covariate->lag);

    const std::size_t stream_len = cfg.T + static_cast<std::size_t>(max_lag);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> stdn(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Source streams in spec order, transition covariate last if its name
    // is new; draw order is part of the reproducibility contract.
    std::vector<Series> streams;
    auto have_stream = [&streams](const std::string& name) {
        for (const auto& s : streams)
            if (s.name == name) return true;
        return false;
    };
    auto gen_stream = [&](const std::string& name) {
        if (have_stream(name)) return;
        GeneratorSpec g = generator_for(cfg, name);
        Series s{name, cfg.start, {}};
        s.values.reserve(stream_len);
        for (std::size_t i = 0; i < stream_len; ++i) s.values.push_back(g.mean + g.sd * stdn(rng));
        streams.push_back(std::move(s));
    };
    for (const auto& r : cfg.spec.regressors) gen_stream(r.name);
    if (cfg.spec.tp_covariate) gen_stream(cfg.spec.tp_covariate->name);

    auto stream_of = [&streams](const std::string& name) -> const Series& {
        for (const auto& s : streams)
            if (s.name == name) return s;
        throw DomainError("simulate: missing stream '" + name + "'");
    };

    // Row t of a column lagged by l reads the stream at index max_lag+t-l.
    auto column = [&](const RegressorRef& ref) {
        const Series& src = stream_of(ref.name);
        RegressorColumn col{ref.name, ref.lag, {}};
        col.values.reserve(cfg.T);
        for (std::size_t t = 0; t < cfg.T; ++t)
            col.values.push_back(src.values[static_cast<std::size_t>(max_lag) + t -
                                            static_cast<std::size_t>(ref.lag)]);
        return col;
    };

    Dataset ds;
    ds.dep_name = cfg.spec.dep_name;
    for (const auto& r : cfg.spec.regressors) ds.regressors.push_back(column(r));
    if (cfg.spec.tp_covariate) ds.tp_covariate = column(*cfg.spec.tp_covariate);
    const Period dep_start = cfg.start.plus(max_lag);
    for (std::size_t t = 0; t < cfg.T; ++t)
        ds.periods.push_back(dep_start.plus(static_cast<int>(t)));

    const double* z = ds.tp_covariate ? ds.tp_covariate->values.data() : nullptr;
    auto matrix_at = [&](std::size_t t) {
        return z ? transition_matrix_at(cfg.params.transition, z[t])
                 : transition_matrix_at(cfg.params.transition);
    };

    SimOutput out;
    out.states.reserve(cfg.T);
    ds.dep.reserve(cfg.T);
    const std::array<double, 2> sigma{std::sqrt(std::exp(cfg.params.regime[0].log_var)),
                                      std::sqrt(std::exp(cfg.params.regime[1].log_var))};
    int state = 0;
    for (std::size_t t = 0; t < cfg.T; ++t) {
        const TransitionMatrix tm = matrix_at(t);
        const double u = unif(rng);
        if (t == 0) {
            state = u < steady_state(tm).first ? 0 : 1;
        } else {
            const double p_stay = state == 0 ? tm.p11 : tm.p22;
            if (u >= p_stay) state = 1 - state;
        }
        out.states.push_back(state == 0 ? Regime::surge : Regime::steady);

        const RegimeParams& rp = cfg.params.regime[static_cast<std::size_t>(state)];
        double y = rp.mu;
        for (std::size_t j = 0; j < ds.regressors.size(); ++j)
            y += rp.betas[j] * ds.regressors[j].values[t];
        y += sigma[static_cast<std::size_t>(state)] * stdn(rng);
        ds.dep.push_back(y);
    }

    out.raw.push_back(Series{ds.dep_name, dep_start, ds.dep});
    for (auto& s : streams) out.raw.push_back(std::move(s));
    out.dataset = std::move(ds);
    return out;
}

DGPConfig dgp_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("dgp: invalid JSON: ") + e.what());
    }
    DGPConfig cfg;
    try {
        if (!j.contains("spec")) throw LoadError("dgp: missing \"spec\"");
        cfg.spec = spec_from_json(j.at("spec").dump());
        if (!j.contains("params")) throw LoadError("dgp: missing \"params\"");
        cfg.params = detail::params_from_json(j.at("params"), cfg.spec);
        cfg.T = j.value("T", std::size_t{200});
        cfg.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("start")) cfg.start = Period::parse(j.at("start").get<std::string>());
        if (j.contains("generators")) {
            for (const auto& [name, g] : j.at("generators").items()) {
                GeneratorSpec gs;
                gs.mean = g.value("mean", 0.0);
                gs.sd = g.value("sd", 1.0);
                if (!(gs.sd > 0.0)) throw LoadError("dgp: generator sd must be positive");
                cfg.generators[name] = gs;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("dgp: ") + e.what());
    }
    if (cfg.T < 1) throw LoadError("dgp: T must be positive");
    return cfg;
}

std::string dgp_to_json(const DGPConfig& cfg) {
    nlohmann::json j;
    j["spec"] = nlohmann::json::parse(spec_to_json(cfg.spec));
    j["params"] = detail::params_to_json(cfg.params);
    j["T"] = cfg.T;
    j["seed"] = cfg.seed;
    j["start"] = cfg.start.str();
    if (!cfg.generators.empty()) {
        nlohmann::json g;
        for (const auto& [name, gs] : cfg.generators) g[name] = {{"mean", gs.mean}, {"sd", gs.sd}};
        j["generators"] = g;
    }
    return j.dump(2) + "\n";
}

DGPConfig load_dgp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open dgp file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return dgp_from_json(buf.str());
}

} // namespace regimekit
