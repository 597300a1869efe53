// Command-line front end: describe, fit, regimes, simulate, recover,
// lagsearch, transform. Every artifact is deterministic given the inputs
// and --seed; REGIMEKIT_OUT overrides --out-dir.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regimekit/csv.hpp"
#include "regimekit/dataset.hpp"
#include "regimekit/errors.hpp"
#include "regimekit/estimate.hpp"
#include "regimekit/report.hpp"
#include "regimekit/select.hpp"
#include "regimekit/simulate.hpp"
#include "regimekit/stats.hpp"
#include "regimekit/version.hpp"

using namespace regimekit;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kWarned = 3;
constexpr int kEstimationFailed = 4;

std::string resolve_out_dir(const std::string& flag) {
    const char* env = std::getenv("REGIMEKIT_OUT");
    std::string dir = (env && *env) ? env : flag;
    std::filesystem::create_directories(dir);
    return dir;
}

std::string join_path(const std::string& dir, const char* name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw LoadError("cannot open '" + path + "' for writing");
    os << text;
}

Dataset dataset_for(const std::vector<Series>& table, const ModelSpec& spec) {
    const Series& dep = find_series(table, spec.dep_name);
    std::vector<std::pair<const Series*, int>> regs;
    for (const auto& r : spec.regressors) regs.emplace_back(&find_series(table, r.name), r.lag);
    std::optional<std::pair<const Series*, int>> tp;
    if (spec.tp_covariate)
        tp = {&find_series(table, spec.tp_covariate->name), spec.tp_covariate->lag};
    return align(dep, regs, tp);
}

struct DescribeArgs {
    std::string csv, date_column = "period", out_dir = ".";
    std::vector<std::string> vars;
    std::size_t max_lag = 4;
};

int cmd_describe(const DescribeArgs& a) {
    auto table = load_csv(a.csv, a.date_column);
    std::vector<std::string> names = a.vars;
    if (names.empty())
        for (const auto& s : table) names.push_back(s.name);

    std::vector<DescribeRow> rows;
    for (const auto& name : names) {
        const Series& s = find_series(table, name);
        DescribeRow row;
        row.name = name;
        row.stats = summarize(s);
        try {
            AdfResult adf = adf_test(s, a.max_lag);
            row.stats.adf_tstat = adf.tstat;
            row.stats.adf_reject_level = adf.reject;
        } catch (const DomainError& e) {
            row.adf_ok = false;
            std::cerr << "warning: ADF skipped for '" << name << "': " << e.what() << "\n";
        }
        rows.push_back(std::move(row));
    }
    const std::string dir = resolve_out_dir(a.out_dir);
    write_describe_csv(join_path(dir, "describe.csv"), rows);
    std::cout << describe_table(rows);
    return kOk;
}

struct FitArgs {
    std::string csv, spec, date_column = "period", mode, out_dir = ".";
    std::size_t restarts = 20, max_iter = 500, jobs = 1;
    std::uint64_t seed = 0;
};

int cmd_fit(const FitArgs& a) {
    ModelSpec spec = load_spec(a.spec);
    if (a.mode == "ftp" && spec.tp_covariate) {
        std::cerr << "error: covariate requires tvtp\n";
        return kUsage;
    }
    if (a.mode == "tvtp" && !spec.tp_covariate) {
        std::cerr << "error: tvtp requires a transition covariate in the spec\n";
        return kUsage;
    }
    auto table = load_csv(a.csv, a.date_column);
    Dataset ds = dataset_for(table, spec);

    FitOptions opts;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.max_iter = a.max_iter;
    opts.jobs = a.jobs;
    FitResult fr = fit(ds, spec, opts);

    const std::string dir = resolve_out_dir(a.out_dir);
    const Period start = ds.periods.front();
    write_text(join_path(dir, "fit.json"), fit_to_json(fr, start));
    write_text(join_path(dir, "table.md"), markdown_table(fr));
    write_probs_csv(join_path(dir, "probs.csv"), fr, start);
    write_text(join_path(dir, "probs.svg"), probs_svg(fr, ds.dep, start));

    std::cout << markdown_table(fr);
    for (const auto& w : fr.warnings) std::cerr << "warning: " << w << "\n";
    const bool clean = fr.status == FitStatus::converged && fr.warnings.empty();
    return clean ? kOk : kWarned;
}

struct RegimesArgs {
    std::string fit;
};

std::string dur_cell(const std::optional<double>& d) {
    return d ? fmt3(*d) : std::string("n/a");
}

int cmd_regimes(const RegimesArgs& a) {
    StoredFit sf = load_fit(a.fit);
    const FitResult& fr = sf.fit;

    std::cout << "Surge episodes:\n";
    if (fr.classification.episodes.empty()) std::cout << "  (none)\n";
    for (const auto& e : fr.classification.episodes)
        std::cout << "  " << e.start.str() << " - " << e.end.str() << " ("
                  << (e.end - e.start + 1) << " quarters)\n";

    const bool tvtp = fr.spec.transition_mode == TransitionMode::TVTP;
    std::cout << "Durations (quarters):\n";
    std::cout << "  model-implied: surge " << dur_cell(fr.durations.model_surge) << ", steady "
              << dur_cell(fr.durations.model_steady);
    if (tvtp) std::cout << " [time-varying: evaluated at covariate mean]";
    std::cout << "\n";
    std::cout << "  empirical:     surge " << dur_cell(fr.durations.empirical_surge)
              << ", steady " << dur_cell(fr.durations.empirical_steady) << "\n";
    return kOk;
}

struct SimulateArgs {
    std::string dgp, out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> T;
};

int cmd_simulate(const SimulateArgs& a) {
    DGPConfig cfg = load_dgp(a.dgp);
    if (a.seed) cfg.seed = *a.seed;
    if (a.T) cfg.T = *a.T;
    SimOutput sim = simulate(cfg);

    // one rectangular table over the dependent variable's span
    const Series& dep = sim.raw.front();
    std::vector<Series> trimmed;
    for (const auto& s : sim.raw) {
        const int off = dep.start - s.start;
        Series t{s.name, dep.start, {}};
        t.values.assign(s.values.begin() + off, s.values.begin() + off + dep.size());
        trimmed.push_back(std::move(t));
    }
    const std::string dir = resolve_out_dir(a.out_dir);
    write_csv(join_path(dir, "sim_data.csv"), trimmed);

    std::ofstream st(join_path(dir, "states.csv"), std::ios::binary);
    st << "period,regime\n";
    for (std::size_t t = 0; t < sim.states.size(); ++t)
        st << dep.period_at(t).str() << ','
           << (sim.states[t] == Regime::surge ? "surge" : "steady") << '\n';

    std::cout << "wrote sim_data.csv and states.csv (" << dep.size() << " rows) to " << dir
              << "\n";
    return kOk;
}

struct RecoverArgs {
    std::string dgp, out_dir = ".";
    std::size_t reps = 0, restarts = 20, jobs = 1;
    std::optional<std::uint64_t> seed;
};

int cmd_recover(const RecoverArgs& a) {
    if (a.reps == 0) {
        std::cerr << "error: --reps must be at least 1\n";
        return kUsage;
    }
    DGPConfig cfg = load_dgp(a.dgp);
    const std::uint64_t base_seed = a.seed ? *a.seed : cfg.seed;
    const Params truth_p = normalize_labels(cfg.params);
    const std::vector<double> truth = pack(truth_p);
    const std::vector<std::string> names = param_names(cfg.spec);
    const std::size_t np = truth.size();

    const auto t0 = std::chrono::steady_clock::now();

    struct Rep {
        bool ok = false;
        std::string note;
        double loglik = 0.0, accuracy = 0.0;
        std::vector<double> est;
        std::vector<std::optional<double>> se;
    };
    std::vector<Rep> reps(a.reps);
    for (std::size_t r = 0; r < a.reps; ++r) {
        DGPConfig c = cfg;
        c.seed = base_seed + r;
        Rep& rep = reps[r];
        try {
            SimOutput sim = simulate(c);
            FitOptions opts;
            opts.restarts = a.restarts;
            opts.seed = c.seed;
            opts.jobs = a.jobs;
            FitResult fr = fit(sim.dataset, cfg.spec, opts);
            rep.ok = true;
            rep.loglik = fr.loglik;
            rep.est = pack(fr.params);
            rep.se = fr.std_errors;
            std::size_t hits = 0;
            for (std::size_t t = 0; t < sim.states.size(); ++t)
                if (fr.classification.regimes[t] == sim.states[t]) ++hits;
            rep.accuracy = static_cast<double>(hits) / static_cast<double>(sim.states.size());
        } catch (const Error& e) {
            rep.note = e.what();
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string dir = resolve_out_dir(a.out_dir);

    std::ofstream rr(join_path(dir, "recovery_reps.csv"), std::ios::binary);
    rr << "rep,seed,status,loglik,accuracy";
    for (const auto& n : names) rr << ',' << n;
    rr << '\n';
    for (std::size_t r = 0; r < a.reps; ++r) {
        const Rep& rep = reps[r];
        rr << r << ',' << base_seed + r << ',' << (rep.ok ? "ok" : "failed") << ',';
        if (rep.ok) {
            rr << full(rep.loglik) << ',' << full(rep.accuracy);
            for (double v : rep.est) rr << ',' << full(v);
        } else {
            rr << ',';
            for (std::size_t i = 0; i < np; ++i) rr << ',';
        }
        rr << '\n';
    }
    rr.close();

    std::size_t n_ok = 0;
    double acc_sum = 0.0;
    for (const auto& rep : reps)
        if (rep.ok) {
            ++n_ok;
            acc_sum += rep.accuracy;
        }

    std::ofstream report(join_path(dir, "recovery_report.csv"), std::ios::binary);
    report << "parameter,true_value,mean_estimate,bias,rmse,ci95_coverage\n";
    for (std::size_t i = 0; i < np; ++i) {
        double sum = 0.0, sumsq = 0.0;
        std::size_t covered = 0;
        for (const auto& rep : reps) {
            if (!rep.ok) continue;
            const double err = rep.est[i] - truth[i];
            sum += rep.est[i];
            sumsq += err * err;
            if (rep.se[i] && std::abs(err) <= 1.96 * *rep.se[i]) ++covered;
        }
        report << names[i] << ',' << full(truth[i]);
        if (n_ok > 0) {
            const double mean = sum / static_cast<double>(n_ok);
            report << ',' << full(mean) << ',' << full(mean - truth[i]) << ','
                   << full(std::sqrt(sumsq / static_cast<double>(n_ok))) << ','
                   << full(static_cast<double>(covered) / static_cast<double>(n_ok));
        } else {
            report << ",,,,";
        }
        report << '\n';
    }
    report << "classification_accuracy,1,";
    if (n_ok > 0) report << full(acc_sum / static_cast<double>(n_ok));
    report << ",,,\n";
    report.close();

    std::cout << a.reps << " replications, " << n_ok << " fits usable";
    if (n_ok > 0) std::cout << ", mean accuracy " << fmt3(acc_sum / static_cast<double>(n_ok));
    std::cout << "\nelapsed " << fmt3(elapsed) << " s\n"; // stdout only, never in artifacts
    return n_ok == 0 ? kEstimationFailed : kOk;
}

struct LagSearchArgs {
    std::string csv, spec, date_column = "period", var, rule = "min", where = "regression",
                out_dir = ".";
    int max_lag = 4, level = 10;
    std::size_t restarts = 20, jobs = 1;
    std::uint64_t seed = 0;
};

int cmd_lagsearch(const LagSearchArgs& a) {
    ModelSpec base = load_spec(a.spec);
    auto table = load_csv(a.csv, a.date_column);

    FitOptions opts;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.jobs = a.jobs;

    LagSearchResult res;
    if (a.rule == "min") {
        if (a.where != "regression") {
            std::cerr << "error: the minimum-significant-lag rule searches the regression only\n";
            return kUsage;
        }
        const RejectLevel level = a.level == 10   ? RejectLevel::p10
                                  : a.level == 5 ? RejectLevel::p5
                                                 : RejectLevel::p1;
        res = min_significant_lag(table, base, a.var, a.max_lag, level,
                                  SignificanceRule::either_regime, opts);
    } else {
        const SearchWhere where = a.where == "regression"   ? SearchWhere::regression
                                  : a.where == "transition" ? SearchWhere::transition
                                                            : SearchWhere::both;
        res = aic_lag_search(table, base, a.var, where, a.max_lag, opts);
    }

    const std::string dir = resolve_out_dir(a.out_dir);
    write_candidates_csv(join_path(dir, "candidates.csv"), res);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

    if (!res.lag && !res.tp_lag) {
        std::cout << "no lag selected\n";
    } else {
        std::cout << "selected:";
        if (res.lag) std::cout << " regression lag " << *res.lag;
        if (res.tp_lag) std::cout << " transition lag " << *res.tp_lag;
        std::cout << "\n";
    }
    return kOk;
}

struct TransformArgs {
    std::string csv, date_column = "period", out_dir = ".";
    std::vector<std::string> vars;
};

int cmd_transform(const TransformArgs& a) {
    auto table = load_csv(a.csv, a.date_column);
    std::vector<std::string> names = a.vars;
    if (names.empty())
        for (const auto& s : table) names.push_back(s.name);

    std::vector<Series> out;
    for (const auto& name : names) out.push_back(growth_rate(find_series(table, name)));

    const std::string dir = resolve_out_dir(a.out_dir);
    write_csv(join_path(dir, "growth.csv"), out, a.date_column);
    std::cout << "wrote growth.csv (" << (out.empty() ? 0 : out.front().size()) << " rows) to "
              << dir << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-regime Markov-switching analysis of quarterly time series"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    int rc = kOk;

    DescribeArgs da;
    auto* describe = app.add_subcommand("describe", "Summary statistics and ADF tests");
    describe->add_option("--csv", da.csv, "Input CSV")->required();
    describe->add_option("--date-column", da.date_column, "Date column name");
    describe->add_option("--vars", da.vars, "Variables (default: all)")->delimiter(',');
    describe->add_option("--max-lag", da.max_lag, "Maximum ADF augmentation lag");
    describe->add_option("--out-dir", da.out_dir, "Artifact directory");
    describe->callback([&] { rc = cmd_describe(da); });

    FitArgs fa;
    auto* fitc = app.add_subcommand("fit", "Estimate a regime-switching model");
    fitc->add_option("--csv", fa.csv, "Input CSV")->required();
    fitc->add_option("--spec", fa.spec, "Model spec JSON")->required();
    fitc->add_option("--date-column", fa.date_column, "Date column name");
    fitc->add_option("--mode", fa.mode, "Expected transition mode")
        ->check(CLI::IsMember({"ftp", "tvtp"}));
    fitc->add_option("--restarts", fa.restarts, "Optimizer restarts");
    fitc->add_option("--max-iter", fa.max_iter, "Iteration cap per restart");
    fitc->add_option("--seed", fa.seed, "Restart jitter seed");
    fitc->add_option("--jobs", fa.jobs, "Parallel restart workers");
    fitc->add_option("--out-dir", fa.out_dir, "Artifact directory");
    fitc->callback([&] { rc = cmd_fit(fa); });

    RegimesArgs ra;
    auto* regimes = app.add_subcommand("regimes", "Episodes and durations from a fit artifact");
    regimes->add_option("--fit", ra.fit, "fit.json path")->required();
    regimes->callback([&] { rc = cmd_regimes(ra); });

    SimulateArgs sa;
    std::uint64_t sim_seed = 0;
    std::size_t sim_T = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Draw a dataset from a DGP config");
    simulate_cmd->add_option("--dgp", sa.dgp, "DGP config JSON")->required();
    auto* sim_seed_opt = simulate_cmd->add_option("--seed", sim_seed, "Override the config seed");
    auto* sim_T_opt = simulate_cmd->add_option("-T,--T", sim_T, "Override the sample length");
    simulate_cmd->add_option("--out-dir", sa.out_dir, "Artifact directory");
    simulate_cmd->callback([&] {
        if (*sim_seed_opt) sa.seed = sim_seed;
        if (*sim_T_opt) sa.T = sim_T;
        rc = cmd_simulate(sa);
    });

    RecoverArgs va;
    std::uint64_t rec_seed = 0;
    auto* recover = app.add_subcommand("recover", "Monte Carlo parameter recovery for a DGP");
    recover->add_option("--dgp", va.dgp, "DGP config JSON")->required();
    recover->add_option("--reps", va.reps, "Replications")->required();
    auto* rec_seed_opt = recover->add_option("--seed", rec_seed, "Base seed (per-rep seed + r)");
    recover->add_option("--restarts", va.restarts, "Optimizer restarts per fit");
    recover->add_option("--jobs", va.jobs, "Parallel restart workers");
    recover->add_option("--out-dir", va.out_dir, "Artifact directory");
    recover->callback([&] {
        if (*rec_seed_opt) va.seed = rec_seed;
        rc = cmd_recover(va);
    });

    LagSearchArgs la;
    auto* lagsearch_cmd = app.add_subcommand("lagsearch", "Lag selection for one variable");
    lagsearch_cmd->add_option("--csv", la.csv, "Input CSV")->required();
    lagsearch_cmd->add_option("--spec", la.spec, "Base model spec JSON")->required();
    lagsearch_cmd->add_option("--var", la.var, "Series to search")->required();
    lagsearch_cmd->add_option("--rule", la.rule, "Selection rule")
        ->check(CLI::IsMember({"min", "aic"}));
    lagsearch_cmd->add_option("--where", la.where, "Where the variable enters (aic rule)")
        ->check(CLI::IsMember({"regression", "transition", "both"}));
    lagsearch_cmd->add_option("--max-lag", la.max_lag, "Largest lag searched");
    lagsearch_cmd->add_option("--level", la.level, "Significance level for the min rule (percent)")
        ->check(CLI::IsMember({10, 5, 1}));
    lagsearch_cmd->add_option("--date-column", la.date_column, "Date column name");
    lagsearch_cmd->add_option("--restarts", la.restarts, "Optimizer restarts per candidate");
    lagsearch_cmd->add_option("--seed", la.seed, "Restart jitter seed");
    lagsearch_cmd->add_option("--jobs", la.jobs, "Parallel restart workers");
    lagsearch_cmd->add_option("--out-dir", la.out_dir, "Artifact directory");
    lagsearch_cmd->callback([&] { rc = cmd_lagsearch(la); });

    TransformArgs ta;
    auto* transform = app.add_subcommand("transform", "Log growth rates of level series");
    transform->add_option("--csv", ta.csv, "Input CSV of levels")->required();
    transform->add_option("--date-column", ta.date_column, "Date column name");
    transform->add_option("--vars", ta.vars, "Variables (default: all)")->delimiter(',');
    transform->add_option("--out-dir", ta.out_dir, "Artifact directory");
    transform->callback([&] { rc = cmd_transform(ta); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const EstimationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEstimationFailed;
    } catch (const FilterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEstimationFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return rc;
}
