#include "regimekit/select.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "regimekit/csv.hpp"
#include "regimekit/dataset.hpp"
#include "regimekit/errors.hpp"

namespace regimekit {

namespace {

Stars minimum_stars(RejectLevel level) {
    switch (level) {
        case RejectLevel::p10: return Stars::one;
        case RejectLevel::p5: return Stars::two;
        case RejectLevel::p1: return Stars::three;
        default: throw DomainError("lag search: significance level must be 10%, 5% or 1%");
    }
}

// One estimation sample shared by every candidate: the searched variable
// enters the lag pool at all lags 1..max_lag next to the base columns, so
// the aligned window (and therefore AIC) is comparable across candidates.
Dataset common_sample(const std::vector<Series>& table, const ModelSpec& base,
                      const std::string& var, int max_lag) {
    const Series& dep = find_series(table, base.dep_name);
    const Series& vs = find_series(table, var);

    std::vector<std::pair<const Series*, int>> regs;
    for (const auto& r : base.regressors) regs.emplace_back(&find_series(table, r.name), r.lag);
    for (int l = 1; l <= max_lag; ++l) {
        bool have = false;
        for (const auto& r : base.regressors)
            if (r.name == var && r.lag == l) have = true;
        if (!have) regs.emplace_back(&vs, l);
    }
    std::optional<std::pair<const Series*, int>> tp;
    if (base.tp_covariate)
        tp = {&find_series(table, base.tp_covariate->name), base.tp_covariate->lag};
    return align(dep, regs, tp);
}

struct CandidateFit {
    LagCandidate row;
    std::optional<FitResult> fit;
};

CandidateFit run_candidate(const Dataset& ds, const ModelSpec& spec, int lag, int tp_lag,
                           const FitOptions& fit_opts, bool coef_from_transition) {
    CandidateFit out;
    out.row.lag = lag;
    out.row.tp_lag = tp_lag;
    try {
        FitResult fr = fit(ds, spec, fit_opts);
        out.row.ok = true;
        out.row.loglik = fr.loglik;
        out.row.aic = fr.aic;
        if (coef_from_transition) {
            for (int s = 0; s < 2; ++s) {
                CandidateCoef c{(*fr.params.transition.alpha1)[static_cast<std::size_t>(s)],
                                fr.std_errors[fr.n_params - 2 + static_cast<std::size_t>(s)]};
                out.row.coef[static_cast<std::size_t>(s)] = c;
            }
        } else {
            // searched regressor sits last in the spec's list
            const std::size_t k = spec.n_regressors();
            const std::size_t block = 2 + k;
            for (int s = 0; s < 2; ++s) {
                const std::size_t idx = static_cast<std::size_t>(s) * block + k; // last beta
                CandidateCoef c{fr.params.regime[static_cast<std::size_t>(s)].betas[k - 1],
                                fr.std_errors[idx]};
                out.row.coef[static_cast<std::size_t>(s)] = c;
            }
        }
        out.fit = std::move(fr);
    } catch (const Error& e) {
        out.row.note = e.what();
    }
    return out;
}

void require_not_in_base(const ModelSpec& base, const std::string& var) {
    for (const auto& r : base.regressors)
        if (r.name == var)
            throw DomainError("lag search: '" + var + "' is already a base regressor");
}

} // namespace

LagSearchResult min_significant_lag(const std::vector<Series>& table, const ModelSpec& base,
                                    const std::string& var, int max_lag, RejectLevel level,
                                    SignificanceRule rule, const FitOptions& fit_opts) {
    if (max_lag < 1) throw DomainError("lag search: max_lag must be at least 1");
    base.validate();
    require_not_in_base(base, var);
    const Stars need = minimum_stars(level);
    const Dataset ds = common_sample(table, base, var, max_lag);

    LagSearchResult out;
    for (int l = 1; l <= max_lag; ++l) {
        ModelSpec spec = base;
        spec.regressors.push_back({var, l});
        CandidateFit cf = run_candidate(ds, spec, l, -1, fit_opts, false);
        if (!cf.row.ok)
            out.warnings.push_back("lag " + std::to_string(l) + " skipped: " + cf.row.note);
        out.candidates.push_back(cf.row);
    }
    for (const auto& c : out.candidates) {
        if (!c.ok) continue;
        bool sig[2];
        for (int s = 0; s < 2; ++s) {
            const auto& cc = c.coef[static_cast<std::size_t>(s)];
            sig[s] = cc && cc->se && stars(cc->value, *cc->se) >= need;
        }
        const bool hit = rule == SignificanceRule::either_regime ? (sig[0] || sig[1])
                                                                 : (sig[0] && sig[1]);
        if (hit) {
            out.lag = c.lag;
            break;
        }
    }
    return out;
}

LagSearchResult aic_lag_search(const std::vector<Series>& table, const ModelSpec& base,
                               const std::string& var, SearchWhere where, int max_lag,
                               const FitOptions& fit_opts) {
    if (max_lag < 1) throw DomainError("lag search: max_lag must be at least 1");
    base.validate();
    if (where != SearchWhere::transition) require_not_in_base(base, var);

    const Dataset ds = common_sample(table, base, var, max_lag);
    LagSearchResult out;

    auto candidate_spec = [&](int reg_lag, int tp_lag) {
        ModelSpec spec = base;
        if (reg_lag > 0) spec.regressors.push_back({var, reg_lag});
        if (tp_lag > 0) {
            spec.transition_mode = TransitionMode::TVTP;
            spec.tp_covariate = RegressorRef{var, tp_lag};
        }
        return spec;
    };

    std::vector<std::pair<int, int>> grid;
    switch (where) {
        case SearchWhere::regression:
            for (int l = 1; l <= max_lag; ++l) grid.emplace_back(l, -1);
            break;
        case SearchWhere::transition:
            for (int l = 1; l <= max_lag; ++l) grid.emplace_back(-1, l);
            break;
        case SearchWhere::both:
            for (int l5 = 1; l5 <= max_lag; ++l5)
                for (int l0 = 1; l0 <= max_lag; ++l0) grid.emplace_back(l5, l0);
            break;
    }

    std::optional<std::size_t> best;
    for (const auto& [reg_lag, tp_lag] : grid) {
        CandidateFit cf = run_candidate(ds, candidate_spec(reg_lag, tp_lag), reg_lag, tp_lag,
                                        fit_opts, where == SearchWhere::transition);
        if (!cf.row.ok)
            out.warnings.push_back("candidate (" + std::to_string(reg_lag) + "," +
                                   std::to_string(tp_lag) + ") skipped: " + cf.row.note);
        out.candidates.push_back(cf.row);
        if (cf.row.ok && (!best || cf.row.aic < out.candidates[*best].aic))
            best = out.candidates.size() - 1;
    }
    if (!best) throw EstimationError("lag search: every candidate fit failed");
    const LagCandidate& win = out.candidates[*best];
    if (win.lag > 0) out.lag = win.lag;
    if (win.tp_lag > 0) out.tp_lag = win.tp_lag;
    return out;
}

void write_candidates_csv(const std::string& path, const LagSearchResult& result) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw LoadError("cannot open '" + path + "' for writing");
    os << "lag,tp_lag,status,loglik,aic,coef1,se1,stars1,coef2,se2,stars2\n";
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    auto lag_label = [](int l) { return l < 0 ? std::string() : std::to_string(l); };
    for (const auto& c : result.candidates) {
        os << lag_label(c.lag) << ',' << lag_label(c.tp_lag) << ','
           << (c.ok ? "ok" : "failed") << ',';
        if (c.ok) os << num(c.loglik) << ',' << num(c.aic);
        else os << ',';
        for (int s = 0; s < 2; ++s) {
            const auto& cc = c.coef[static_cast<std::size_t>(s)];
            os << ',';
            if (cc) {
                os << num(cc->value) << ',';
                if (cc->se) os << num(*cc->se) << ',' << star_label(stars(cc->value, *cc->se));
                else os << ',';
            } else {
                os << ",,";
            }
        }
        os << '\n';
    }
}

} // namespace regimekit
