#include "regimekit/model_spec.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "regimekit/errors.hpp"

namespace regimekit {

using nlohmann::json;

void ModelSpec::validate() const {
    if (dep_name.empty()) throw DomainError("model spec: empty dependent variable name");
    const bool tvtp = transition_mode == TransitionMode::TVTP;
    if (tvtp != tp_covariate.has_value())
        throw DomainError(tvtp ? "model spec: TVTP mode requires a tp_covariate"
                               : "model spec: tp_covariate requires TVTP mode");
    std::unordered_set<std::string> seen;
    for (const auto& r : regressors) {
        if (r.name.empty()) throw DomainError("model spec: empty regressor name");
        if (r.lag < 0) throw DomainError("model spec: negative lag for '" + r.name + "'");
        if (!seen.insert(r.name).second)
            throw DomainError("model spec: duplicate regressor '" + r.name + "'");
    }
    if (tp_covariate && tp_covariate->lag < 0)
        throw DomainError("model spec: negative lag for tp covariate '" + tp_covariate->name + "'");
}

std::string mode_label(TransitionMode m) {
    return m == TransitionMode::TVTP ? "TVTP" : "FTP";
}

namespace {

TransitionMode parse_mode(const std::string& s) {
    if (s == "FTP" || s == "ftp") return TransitionMode::FTP;
    if (s == "TVTP" || s == "tvtp") return TransitionMode::TVTP;
    throw LoadError("model spec: unknown transition_mode '" + s + "'");
}

RegressorRef parse_ref(const json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("lag"))
        throw LoadError("model spec: regressor entries need \"name\" and \"lag\"");
    return {j.at("name").get<std::string>(), j.at("lag").get<int>()};
}

} // namespace

ModelSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(std::string("model spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw LoadError("model spec: top level must be an object");

    ModelSpec spec;
    try {
        if (j.contains("dep")) spec.dep_name = j.at("dep").get<std::string>();
        if (j.contains("regressors"))
            for (const auto& r : j.at("regressors")) spec.regressors.push_back(parse_ref(r));
        if (j.contains("transition_mode"))
            spec.transition_mode = parse_mode(j.at("transition_mode").get<std::string>());
        if (j.contains("tp_covariate") && !j.at("tp_covariate").is_null())
            spec.tp_covariate = parse_ref(j.at("tp_covariate"));
    } catch (const json::exception& e) {
        throw LoadError(std::string("model spec: ") + e.what());
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw LoadError(e.what());
    }
    return spec;
}

std::string spec_to_json(const ModelSpec& spec) {
    spec.validate();
    json j;
    if (spec.dep_name != "pd") j["dep"] = spec.dep_name;
    j["regressors"] = json::array();
    for (const auto& r : spec.regressors)
        j["regressors"].push_back({{"name", r.name}, {"lag", r.lag}});
    j["transition_mode"] = mode_label(spec.transition_mode);
    if (spec.tp_covariate)
        j["tp_covariate"] = {{"name", spec.tp_covariate->name}, {"lag", spec.tp_covariate->lag}};
    return j.dump(2) + "\n";
}

ModelSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_json(buf.str());
}

} // namespace regimekit
