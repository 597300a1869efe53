#include "regimekit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "regimekit/errors.hpp"
#include "regimekit/version.hpp"
#include "json_util.hpp"

namespace regimekit {

namespace {

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "7.239*** (0.746)"; bare estimate when the SE is unavailable
std::string cell(double value, const std::optional<double>& se) {
    std::string s = fmt3(value) + star_label(stars(value, se));
    if (se) s += " (" + fmt3(*se) + ")";
    return s;
}

const char* fit_status_label(FitStatus s) {
    switch (s) {
        case FitStatus::converged: return "converged";
        case FitStatus::max_iter: return "max_iter";
        default: return "failed";
    }
}

FitStatus fit_status_from(const std::string& s) {
    if (s == "converged") return FitStatus::converged;
    if (s == "max_iter") return FitStatus::max_iter;
    if (s == "failed") return FitStatus::failed;
    throw LoadError("fit artifact: unknown status '" + s + "'");
}

const char* min_status_label(MinimizeStatus s) {
    switch (s) {
        case MinimizeStatus::converged: return "converged";
        case MinimizeStatus::max_iter: return "max_iter";
        case MinimizeStatus::stalled: return "stalled";
        default: return "failed";
    }
}

MinimizeStatus min_status_from(const std::string& s) {
    if (s == "converged") return MinimizeStatus::converged;
    if (s == "max_iter") return MinimizeStatus::max_iter;
    if (s == "stalled") return MinimizeStatus::stalled;
    if (s == "failed") return MinimizeStatus::failed;
    throw LoadError("fit artifact: unknown restart status '" + s + "'");
}

nlohmann::json prob_rows(const std::vector<std::array<double, 2>>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) out.push_back({r[0], r[1]});
    return out;
}

std::vector<std::array<double, 2>> prob_rows_from(const nlohmann::json& j) {
    std::vector<std::array<double, 2>> out;
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != 2)
            throw LoadError("fit artifact: probability rows must hold 2 entries");
        out.push_back({r[0].get<double>(), r[1].get<double>()});
    }
    return out;
}

nlohmann::json opt_num(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::optional<double> opt_num_from(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

} // namespace

std::string fit_to_json(const FitResult& fr, Period start) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["spec"] = nlohmann::json::parse(spec_to_json(fr.spec));
    j["params"] = detail::params_to_json(fr.params);

    nlohmann::json ses = nlohmann::json::array();
    for (const auto& se : fr.std_errors) ses.push_back(opt_num(se));
    j["std_errors"] = ses;

    j["loglik"] = fr.loglik;
    j["aic"] = fr.aic;
    j["n_obs"] = fr.n_obs;
    j["n_params"] = fr.n_params;
    j["status"] = fit_status_label(fr.status);
    j["best_restart"] = fr.best_restart;
    j["grad_inf_norm"] = fr.grad_inf_norm;
    j["warnings"] = fr.warnings;

    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : fr.restarts) {
        nlohmann::json e;
        e["index"] = r.index;
        // +inf (failed restart) is not representable in JSON
        e["neg_loglik"] = std::isfinite(r.neg_loglik) ? nlohmann::json(r.neg_loglik)
                                                      : nlohmann::json(nullptr);
        e["status"] = min_status_label(r.status);
        e["iterations"] = r.iterations;
        e["n_evals"] = r.n_evals;
        rs.push_back(std::move(e));
    }
    j["restarts"] = rs;

    j["start_period"] = start.str();
    j["predicted"] = prob_rows(fr.filter.predicted);
    j["filtered"] = prob_rows(fr.filter.filtered);
    j["per_obs_loglik"] = fr.filter.per_obs_loglik;
    j["smoothed"] = prob_rows(fr.smoothed.smoothed);

    nlohmann::json regimes = nlohmann::json::array();
    for (Regime r : fr.classification.regimes) regimes.push_back(r == Regime::surge ? 1 : 2);
    j["regimes"] = regimes;

    nlohmann::json eps = nlohmann::json::array();
    for (const auto& e : fr.classification.episodes)
        eps.push_back({{"start", e.start.str()}, {"end", e.end.str()}});
    j["episodes"] = eps;

    j["durations"] = {{"model_surge", opt_num(fr.durations.model_surge)},
                      {"model_steady", opt_num(fr.durations.model_steady)},
                      {"empirical_surge", opt_num(fr.durations.empirical_surge)},
                      {"empirical_steady", opt_num(fr.durations.empirical_steady)}};
    return j.dump(2) + "\n";
}

StoredFit fit_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("fit artifact: invalid JSON: ") + e.what());
    }
    StoredFit out;
    FitResult& fr = out.fit;
    try {
        fr.spec = spec_from_json(j.at("spec").dump());
        fr.params = detail::params_from_json(j.at("params"), fr.spec);
        for (const auto& se : j.at("std_errors")) fr.std_errors.push_back(opt_num_from(se));
        fr.loglik = j.at("loglik").get<double>();
        fr.aic = j.at("aic").get<double>();
        fr.n_obs = j.at("n_obs").get<std::size_t>();
        fr.n_params = j.at("n_params").get<std::size_t>();
        fr.status = fit_status_from(j.at("status").get<std::string>());
        fr.best_restart = j.at("best_restart").get<std::size_t>();
        fr.grad_inf_norm = j.at("grad_inf_norm").get<double>();
        fr.warnings = j.value("warnings", std::vector<std::string>{});
        for (const auto& e : j.value("restarts", nlohmann::json::array())) {
            RestartDiag d;
            d.index = e.at("index").get<std::size_t>();
            d.neg_loglik = e.at("neg_loglik").is_null()
                               ? std::numeric_limits<double>::infinity()
                               : e.at("neg_loglik").get<double>();
            d.status = min_status_from(e.at("status").get<std::string>());
            d.iterations = e.at("iterations").get<std::size_t>();
            d.n_evals = e.at("n_evals").get<std::size_t>();
            fr.restarts.push_back(d);
        }
        out.start = Period::parse(j.at("start_period").get<std::string>());
        fr.filter.loglik = fr.loglik;
        fr.filter.predicted = prob_rows_from(j.at("predicted"));
        fr.filter.filtered = prob_rows_from(j.at("filtered"));
        fr.filter.per_obs_loglik = j.at("per_obs_loglik").get<std::vector<double>>();
        fr.smoothed.smoothed = prob_rows_from(j.at("smoothed"));
        for (const auto& r : j.at("regimes")) {
            const int v = r.get<int>();
            if (v != 1 && v != 2) throw LoadError("fit artifact: regime labels must be 1 or 2");
            fr.classification.regimes.push_back(v == 1 ? Regime::surge : Regime::steady);
        }
        for (const auto& e : j.at("episodes"))
            fr.classification.episodes.push_back(
                {Period::parse(e.at("start").get<std::string>()),
                 Period::parse(e.at("end").get<std::string>())});
        const auto& d = j.at("durations");
        fr.durations.model_surge = opt_num_from(d.at("model_surge"));
        fr.durations.model_steady = opt_num_from(d.at("model_steady"));
        fr.durations.empirical_surge = opt_num_from(d.at("empirical_surge"));
        fr.durations.empirical_steady = opt_num_from(d.at("empirical_steady"));
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("fit artifact: ") + e.what());
    }
    if (fr.std_errors.size() != fr.n_params)
        throw LoadError("fit artifact: std_errors length does not match n_params");
    if (fr.filter.filtered.size() != fr.n_obs || fr.smoothed.smoothed.size() != fr.n_obs ||
        fr.classification.regimes.size() != fr.n_obs)
        throw LoadError("fit artifact: row counts do not match n_obs");
    return out;
}

StoredFit load_fit(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return fit_from_json(ss.str());
}

std::string markdown_table(const FitResult& fr) {
    const std::size_t k = fr.spec.n_regressors();
    const std::size_t block = 2 + k;
    auto se_at = [&](std::size_t i) { return fr.std_errors[i]; };

    std::ostringstream os;
    os << "Dependent variable: " << fr.spec.dep_name << "\n\n";
    os << "| Parameter | Estimate |\n| --- | --- |\n";
    const char* blocks[2] = {"Surge regime", "Steady regime"};
    for (std::size_t s = 0; s < 2; ++s) {
        const RegimeParams& rp = fr.params.regime[s];
        const std::string sup = "^" + std::to_string(s + 1);
        os << "| **" << blocks[s] << "** |  |\n";
        os << "| mu" << sup << " | " << cell(rp.mu, se_at(s * block)) << " |\n";
        os << "| log(sigma" << sup << ") | " << cell(rp.log_var, se_at(s * block + 1 + k))
           << " |\n";
        for (std::size_t jj = 0; jj < k; ++jj) {
            const RegressorRef& r = fr.spec.regressors[jj];
            os << "| " << r.name << "_{t";
            if (r.lag != 0) os << "-" << r.lag;
            os << "}" << sup << " | " << cell(rp.betas[jj], se_at(s * block + 1 + jj)) << " |\n";
        }
    }
    os << "| **Coefficients of transition probability** |  |\n";
    for (std::size_t s = 0; s < 2; ++s) {
        const std::string sup = "^" + std::to_string(s + 1);
        os << "| alpha_0" << sup << " | "
           << cell(fr.params.transition.alpha0[s], se_at(2 * block + s)) << " |\n";
        if (fr.params.transition.alpha1)
            os << "| alpha_1" << sup << " | "
               << cell((*fr.params.transition.alpha1)[s], se_at(2 * block + 2 + s)) << " |\n";
    }
    os << "| AIC | " << fmt3(fr.aic) << " |\n";
    os << "| Loglikelihood | " << fmt3(fr.loglik) << " |\n";
    os << "| Number of observations | " << fr.n_obs << " |\n";
    return os.str();
}

void write_probs_csv(const std::string& path, const FitResult& fr, Period start) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw LoadError("cannot open '" + path + "' for writing");
    os << "period,p_surge,p_steady,regime_label\n";
    for (std::size_t t = 0; t < fr.smoothed.smoothed.size(); ++t) {
        const auto& row = fr.smoothed.smoothed[t];
        os << start.plus(static_cast<int>(t)).str() << ',' << full(row[0]) << ','
           << full(row[1]) << ','
           << (fr.classification.regimes[t] == Regime::surge ? "surge" : "steady") << '\n';
    }
}

std::string probs_svg(const FitResult& fr, const std::vector<double>& dep, Period start) {
    const std::size_t n = fr.smoothed.smoothed.size();
    if (dep.size() != n) throw DomainError("probs_svg: series length does not match the fit");
    if (n == 0) throw DomainError("probs_svg: empty fit");

    const double x0 = 55.0, x1 = 845.0, y0 = 15.0, y1 = 325.0;
    auto xpos = [&](double i) {
        if (n == 1) return (x0 + x1) / 2.0;
        return x0 + (x1 - x0) * i / static_cast<double>(n - 1);
    };
    auto yprob = [&](double p) { return y1 - p * (y1 - y0); };

    double lo = dep[0], hi = dep[0];
    for (double v : dep) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double pad = (hi - lo) * 0.05;
    if (pad == 0.0) pad = 1.0;
    lo -= pad;
    hi += pad;
    auto ydep = [&](double v) { return y1 - (v - lo) / (hi - lo) * (y1 - y0); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"360\" "
          "viewBox=\"0 0 900 360\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"900\" height=\"360\" fill=\"white\"/>\n";

    const double half = (n == 1 ? (x1 - x0) / 2.0 : (x1 - x0) / (2.0 * static_cast<double>(n - 1)));
    for (const auto& e : fr.classification.episodes) {
        const double a = std::max(x0, xpos(e.start - start) - half);
        const double b = std::min(x1, xpos(e.end - start) + half);
        os << "<rect x=\"" << fmt2(a) << "\" y=\"" << fmt2(y0) << "\" width=\"" << fmt2(b - a)
           << "\" height=\"" << fmt2(y1 - y0) << "\" fill=\"#d9d9d9\"/>\n";
    }

    os << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y1) << "\" x2=\"" << fmt2(x1)
       << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y0) << "\" x2=\"" << fmt2(x0)
       << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt2(x1) << "\" y1=\"" << fmt2(y0) << "\" x2=\"" << fmt2(x1)
       << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double p = i * 0.25;
        os << "<text x=\"" << fmt2(x0 - 8) << "\" y=\"" << fmt2(yprob(p) + 4)
           << "\" text-anchor=\"end\">" << fmt2(p) << "</text>\n";
    }
    for (int i = 0; i <= 3; ++i) {
        const double v = lo + (hi - lo) * i / 3.0;
        os << "<text x=\"" << fmt2(x1 + 8) << "\" y=\"" << fmt2(ydep(v) + 4)
           << "\" text-anchor=\"start\">" << fmt2(v) << "</text>\n";
    }
    const std::size_t n_ticks = std::min<std::size_t>(6, n);
    std::size_t last_idx = n; // dedup guard
    for (std::size_t i = 0; i < n_ticks; ++i) {
        const std::size_t idx =
            n_ticks == 1 ? 0 : i * (n - 1) / (n_ticks - 1);
        if (idx == last_idx) continue;
        last_idx = idx;
        os << "<text x=\"" << fmt2(xpos(static_cast<double>(idx))) << "\" y=\"" << fmt2(y1 + 18)
           << "\" text-anchor=\"middle\">" << start.plus(static_cast<int>(idx)).str()
           << "</text>\n";
    }

    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t t = 0; t < n; ++t) {
        if (t) os << ' ';
        os << fmt2(xpos(static_cast<double>(t))) << ',' << fmt2(ydep(dep[t]));
    }
    os << "\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
          "stroke-dasharray=\"6 3\" points=\"";
    for (std::size_t t = 0; t < n; ++t) {
        if (t) os << ' ';
        os << fmt2(xpos(static_cast<double>(t))) << ',' << fmt2(yprob(fr.smoothed.smoothed[t][0]));
    }
    os << "\"/>\n";

    os << "<text x=\"" << fmt2(x0 + 6) << "\" y=\"" << fmt2(y0 + 13)
       << "\" fill=\"#1f77b4\">P(surge), smoothed</text>\n";
    os << "<text x=\"" << fmt2(x0 + 6) << "\" y=\"" << fmt2(y0 + 28) << "\">" << fr.spec.dep_name
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string describe_table(const std::vector<DescribeRow>& rows) {
    std::ostringstream os;
    os << "| Variable | Mean | SD | Max | Min | ADF | N |\n";
    os << "| --- | --- | --- | --- | --- | --- | --- |\n";
    for (const auto& r : rows) {
        os << "| " << r.name << " | " << fmt3(r.stats.mean) << " | " << fmt3(r.stats.sd) << " | "
           << fmt3(r.stats.max) << " | " << fmt3(r.stats.min) << " | ";
        if (r.adf_ok) os << fmt3(r.stats.adf_tstat) << reject_stars(r.stats.adf_reject_level);
        os << " | " << r.stats.n_obs << " |\n";
    }
    return os.str();
}

void write_describe_csv(const std::string& path, const std::vector<DescribeRow>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw LoadError("cannot open '" + path + "' for writing");
    os << "variable,mean,sd,max,min,adf_tstat,adf_reject,n\n";
    for (const auto& r : rows) {
        os << r.name << ',' << full(r.stats.mean) << ',' << full(r.stats.sd) << ','
           << full(r.stats.max) << ',' << full(r.stats.min) << ',';
        if (r.adf_ok) os << full(r.stats.adf_tstat) << ',' << reject_label(r.stats.adf_reject_level);
        else os << ',';
        os << ',' << r.stats.n_obs << '\n';
    }
}

} // namespace regimekit
