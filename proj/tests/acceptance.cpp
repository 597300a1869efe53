// Acceptance gate: nine checks, one printed line each, nonzero exit if
// any fails. Tolerances are pinned here on purpose; do not loosen them
// to make a run green.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "builders.hpp"
#include "oracle.hpp"
#include "regimekit/errors.hpp"
#include "regimekit/estimate.hpp"
#include "regimekit/filter.hpp"
#include "regimekit/model_spec.hpp"
#include "regimekit/params.hpp"
#include "regimekit/simulate.hpp"
#include "regimekit/stats.hpp"
#include "regimekit/transition.hpp"

using namespace regimekit;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    return v[mid];
}

std::string spec_file(const std::string& name) {
    return (fs::path(REGIMEKIT_SPEC_DIR) / name).string();
}

// 1. Filter and smoother agree with full path enumeration on small samples.
bool criterion1() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    double max_ll = 0.0, max_sm = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t T = 6 + static_cast<std::size_t>(i % 7);
        const std::size_t K = static_cast<std::size_t>(i % 3);
        const bool tvtp = i % 2 == 1;
        auto pr = testutil::random_problem(rng, T, K, tvtp);
        auto ref = testutil::enumerate_paths(pr.ds, pr.spec, pr.params);
        FilterOutput fo = loglikelihood(pr.ds, pr.spec, pr.params);
        SmoothOutput sm = smooth(fo, pr.ds, pr.spec, pr.params);
        max_ll = std::max(max_ll, std::abs(fo.loglik - ref.loglik));
        for (std::size_t t = 0; t < T; ++t)
            for (int s = 0; s < 2; ++s)
                max_sm = std::max(max_sm, std::abs(sm.smoothed[t][static_cast<std::size_t>(s)] -
                                                   ref.posterior[t][static_cast<std::size_t>(s)]));
    }
    const double el = seconds_since(t0);
    const bool ok = max_ll < 1e-9 && max_sm < 1e-10 && el < 10.0;
    std::printf("criterion 1: %s -- 50 problems, max |loglik diff| %.2e (tol 1e-9), "
                "max |smoothed diff| %.2e (tol 1e-10), %.2f s (budget 10)\n",
                ok ? "PASS" : "FAIL", max_ll, max_sm, el);
    return ok;
}

// 2. The per-observation AIC convention reproduces the published footer.
bool criterion2() {
    const double aic = aic_value(-132.753, 14, 101);
    const bool ok = std::abs(aic - 2.906) <= 0.001;
    std::printf("criterion 2: %s -- aic(-132.753, 14, 101) = %.6f vs 2.906 (tol 0.001)\n",
                ok ? "PASS" : "FAIL", aic);
    return ok;
}

// 3. Expected-duration arithmetic against the published figures.
bool criterion3() {
    const double d1 = expected_duration(0.7584);
    const double d2 = expected_duration(0.9433);
    const double e1 = std::abs(d1 - 4.139);
    const double e2 = std::abs(d2 - 17.625);

    // Round trip through the code path: recover the staying probabilities
    // from the published durations, then map them back.
    const double p11 = 1.0 - 1.0 / 4.139;
    const double p22 = 1.0 - 1.0 / 17.625;
    TransitionParams tp;
    tp.alpha0 = {std::log(p11 / (1.0 - p11)), std::log(p22 / (1.0 - p22))};
    const TransitionMatrix tm = transition_matrix_at(tp);
    const double r1 = std::abs(expected_duration(tm.p11) - 4.139);
    const double r2 = std::abs(expected_duration(tm.p22) - 17.625);

    const bool ok = e1 <= 0.01 && e2 <= 0.01 && r1 < 1e-9 && r2 < 1e-9;
    std::printf("criterion 3: %s -- 1/(1-0.7584) = %.4f (off %.1e, tol 0.01); "
                "1/(1-0.9433) = %.4f (off %.1e, tol 0.01); round trip from 4.139/17.625 "
                "reproduces both to %.0e. Note: 0.9433 is 1 - 1/17.625 = %.6f rounded to 4 "
                "decimals, and 1/(1-p) magnifies that rounding by about d^2 = %.0f, so the "
                "second gap cannot come under 0.01 from the quoted inputs.\n",
                ok ? "PASS" : "FAIL", d1, e1, d2, e2, std::max({r1, r2, 1e-12}), p22,
                17.625 * 17.625);
    return ok;
}

// 4. Transition-probability spot value at a published coefficient pair.
bool criterion4() {
    TransitionParams tp;
    tp.alpha0 = {2.394, 0.0};
    tp.alpha1 = std::array<double, 2>{-0.759, 0.0};
    const double p11 = transition_matrix_at(tp, 0.0).p11;
    const bool ok = std::abs(p11 - 0.9164) <= 1e-4;
    std::printf("criterion 4: %s -- logistic(2.394 - 0.759*0) = %.6f vs 0.9164 (tol 1e-4)\n",
                ok ? "PASS" : "FAIL", p11);
    return ok;
}

// 5. Parameter recovery on the shipped fixed-probability reference DGP.
bool criterion5() {
    const auto t0 = Clock::now();
    DGPConfig cfg = load_dgp(spec_file("recovery_ftp.json"));
    const std::vector<double> truth = pack(normalize_labels(cfg.params));
    const std::vector<std::string> names = param_names(cfg.spec);
    const double p11_true = logistic(cfg.params.transition.alpha0[0]);
    const double p22_true = logistic(cfg.params.transition.alpha0[1]);

    const int reps = 200;
    std::vector<int> covered(truth.size(), 0);
    std::vector<double> bias_mu1, bias_mu2, bias_p11, bias_p22, accuracy;
    int failures = 0;
    for (int r = 0; r < reps; ++r) {
        cfg.seed = static_cast<std::uint64_t>(r);
        SimOutput sim = simulate(cfg);
        FitOptions opts;
        opts.seed = static_cast<std::uint64_t>(r);
        opts.jobs = 4;
        FitResult fr;
        try {
            fr = fit(sim.dataset, cfg.spec, opts);
        } catch (const Error&) {
            ++failures;
            bias_mu1.push_back(1e9);
            bias_mu2.push_back(1e9);
            bias_p11.push_back(1e9);
            bias_p22.push_back(1e9);
            accuracy.push_back(0.0);
            continue;
        }
        const std::vector<double> est = pack(fr.params);
        for (std::size_t i = 0; i < truth.size(); ++i)
            if (fr.std_errors[i] &&
                std::abs(est[i] - truth[i]) <= 1.96 * *fr.std_errors[i])
                ++covered[i];
        bias_mu1.push_back(std::abs(fr.params.regime[0].mu - 6.0));
        bias_mu2.push_back(std::abs(fr.params.regime[1].mu - 1.0));
        bias_p11.push_back(std::abs(logistic(fr.params.transition.alpha0[0]) - p11_true));
        bias_p22.push_back(std::abs(logistic(fr.params.transition.alpha0[1]) - p22_true));
        std::size_t same = 0;
        for (std::size_t t = 0; t < sim.states.size(); ++t)
            same += fr.classification.regimes[t] == sim.states[t];
        accuracy.push_back(static_cast<double>(same) / static_cast<double>(sim.states.size()));
    }

    double min_cov = 1.0;
    std::string worst = "-";
    for (std::size_t i = 0; i < covered.size(); ++i) {
        const double c = static_cast<double>(covered[i]) / reps;
        if (c < min_cov) {
            min_cov = c;
            worst = names[i];
        }
    }
    const double m_mu1 = median(bias_mu1), m_mu2 = median(bias_mu2);
    const double m_p11 = median(bias_p11), m_p22 = median(bias_p22);
    const double m_acc = median(accuracy);
    const double el = seconds_since(t0);
    const bool ok = min_cov >= 0.90 && m_mu1 <= 0.6 && m_mu2 <= 0.1 && m_p11 <= 0.05 &&
                    m_p22 <= 0.05 && m_acc >= 0.90 && el < 300.0 && failures == 0;
    std::printf("criterion 5: %s -- 200 reps at T=400: min coverage %.3f (%s, floor 0.90); "
                "median |bias| mu 6: %.3f (cap 0.6), mu 1: %.3f (cap 0.1), p11: %.4f, "
                "p22: %.4f (caps 0.05); median accuracy %.3f (floor 0.90); %d failed fits; "
                "%.1f s (budget 300)\n",
                ok ? "PASS" : "FAIL", min_cov, worst.c_str(), m_mu1, m_mu2, m_p11, m_p22,
                m_acc, failures, el);
    return ok;
}

// 6. Sign recovery of the positive steady-regime transition slope.
bool criterion6() {
    const auto t0 = Clock::now();
    DGPConfig cfg = load_dgp(spec_file("recovery_tvtp.json"));
    const int reps = 200;
    int correct = 0;
    for (int r = 0; r < reps; ++r) {
        cfg.seed = static_cast<std::uint64_t>(r);
        SimOutput sim = simulate(cfg);
        FitOptions opts;
        opts.seed = static_cast<std::uint64_t>(r);
        opts.jobs = 4;
        try {
            FitResult fr = fit(sim.dataset, cfg.spec, opts);
            if (fr.params.transition.alpha1 && (*fr.params.transition.alpha1)[1] > 0.0)
                ++correct;
        } catch (const Error&) {
        }
    }
    const double el = seconds_since(t0);
    const bool ok = correct >= 170;
    std::printf("criterion 6: %s -- fitted slope positive in %d/200 reps (floor 170), %.1f s\n",
                ok ? "PASS" : "FAIL", correct, el);
    return ok;
}

// 7. Representative invariants, each at its stated tolerance.
bool criterion7() {
    std::mt19937_64 rng(99);
    auto pr = testutil::random_problem(rng, 60, 2, true);
    FilterOutput fo = loglikelihood(pr.ds, pr.spec, pr.params);
    SmoothOutput sm = smooth(fo, pr.ds, pr.spec, pr.params);

    double row_err = 0.0;
    for (std::size_t t = 0; t < fo.filtered.size(); ++t) {
        row_err = std::max(row_err, std::abs(fo.predicted[t][0] + fo.predicted[t][1] - 1.0));
        row_err = std::max(row_err, std::abs(fo.filtered[t][0] + fo.filtered[t][1] - 1.0));
        row_err = std::max(row_err, std::abs(sm.smoothed[t][0] + sm.smoothed[t][1] - 1.0));
    }
    const bool rows_ok = row_err < 1e-12;

    Params swapped = pr.params;
    std::swap(swapped.regime[0], swapped.regime[1]);
    std::swap(swapped.transition.alpha0[0], swapped.transition.alpha0[1]);
    if (swapped.transition.alpha1)
        std::swap((*swapped.transition.alpha1)[0], (*swapped.transition.alpha1)[1]);
    const double swap_err =
        std::abs(loglikelihood(pr.ds, pr.spec, swapped).loglik - fo.loglik);
    const bool swap_ok = swap_err < 1e-10;

    const bool boundary_ok = sm.smoothed.back()[0] == fo.filtered.back()[0] &&
                             sm.smoothed.back()[1] == fo.filtered.back()[1];

    // fixed-probability fit vs zero-slope time-varying fit on one dataset
    DGPConfig cfg;
    cfg.spec.transition_mode = TransitionMode::TVTP;
    cfg.spec.tp_covariate = RegressorRef{"z", 1};
    cfg.params.regime[0] = {6.0, {}, std::log(1.2)};
    cfg.params.regime[1] = {1.0, {}, std::log(0.6)};
    cfg.params.transition.alpha0 = {1.14398, 2.81164};
    cfg.params.transition.alpha1 = std::array<double, 2>{0.4, -0.3};
    cfg.T = 200;
    cfg.seed = 5;
    SimOutput sim = simulate(cfg);
    FitOptions fopts;
    fopts.restarts = 5;
    fopts.seed = 2;
    ModelSpec ftp_spec = cfg.spec;
    ftp_spec.transition_mode = TransitionMode::FTP;
    ftp_spec.tp_covariate.reset();
    FitResult f_ftp = fit(sim.dataset, ftp_spec, fopts);
    FitOptions pinned = fopts;
    pinned.fix_alpha1 = true;
    FitResult f_pin = fit(sim.dataset, cfg.spec, pinned);
    const double pin_err = std::abs(f_ftp.loglik - f_pin.loglik);
    const bool pin_ok = pin_err < 1e-6;

    // scale equivariance on one dataset
    DGPConfig sc;
    sc.spec.regressors = {{"x", 1}};
    sc.params.regime[0] = {6.0, {0.8}, 0.3};
    sc.params.regime[1] = {1.0, {-0.4}, -0.3};
    sc.params.transition.alpha0 = {1.14398, 2.81164};
    sc.T = 250;
    sc.seed = 17;
    SimOutput ssim = simulate(sc);
    FitOptions sopts;
    sopts.restarts = 4;
    sopts.seed = 2;
    sopts.tol = 1e-7;
    FitResult base = fit(ssim.dataset, sc.spec, sopts);
    Dataset scaled = ssim.dataset;
    for (double& v : scaled.regressors[0].values) v *= 10.0;
    FitResult resc = fit(scaled, sc.spec, sopts);
    const double scale_err =
        std::max(std::abs(base.loglik - resc.loglik),
                 std::abs(base.params.regime[0].betas[0] - 10.0 * resc.params.regime[0].betas[0]));
    const bool scale_ok = scale_err < 1e-6 * (1.0 + std::abs(base.loglik));

    bool pack_ok = true;
    for (int i = 0; i < 10; ++i) {
        auto rp = testutil::random_problem(rng, 10, 2, i % 2 == 1);
        const std::vector<double> flat = pack(rp.params);
        const std::vector<double> again = pack(unpack(flat, rp.spec));
        pack_ok = pack_ok && flat == again;
    }

    const bool ok = rows_ok && swap_ok && boundary_ok && pin_ok && scale_ok && pack_ok;
    std::printf("criterion 7: %s -- row sums %.1e (tol 1e-12); label swap %.1e (tol 1e-10); "
                "smoother boundary %s; pinned-slope vs fixed %.1e (tol 1e-6); scale %.1e; "
                "pack/unpack %s\n",
                ok ? "PASS" : "FAIL", row_err, swap_err, boundary_ok ? "exact" : "BROKEN",
                pin_err, scale_err, pack_ok ? "exact" : "BROKEN");
    return ok;
}

// 8. The fourteen shipped model specs parse and look structurally right.
bool criterion8() {
    int parsed = 0;
    bool shape_ok = true;
    for (int i = 1; i <= 14; ++i) {
        try {
            ModelSpec m = load_spec(spec_file("m" + std::to_string(i) + ".json"));
            ++parsed;
            if (i <= 8 && m.transition_mode != TransitionMode::FTP) shape_ok = false;
            if (i >= 9 && (m.transition_mode != TransitionMode::TVTP || !m.tp_covariate))
                shape_ok = false;
            if (i == 5 && m.regressors.size() != 4) shape_ok = false;
        } catch (const Error&) {
            shape_ok = false;
        }
    }
    const bool ok = parsed == 14 && shape_ok;
    std::printf("criterion 8: %s -- %d/14 model specs parse; exact published coefficients stay "
                "out of scope (data vintage), the specs make the table suite rerunnable\n",
                ok ? "PASS" : "FAIL", parsed);
    return ok;
}

// 9. Unit-root test size and power on simulated series.
bool criterion9() {
    const auto t0 = Clock::now();
    const int reps = 500;
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> stdn(0.0, 1.0);
    int null_kept = 0, alt_rejected = 0;
    for (int r = 0; r < reps; ++r) {
        Series walk{"w", Period(2000, 1), {}};
        double acc = 0.0;
        for (int t = 0; t < 200; ++t) {
            acc += stdn(rng);
            walk.values.push_back(acc);
        }
        null_kept += adf_test(walk, 4).reject == RejectLevel::none;

        Series noise{"n", Period(2000, 1), {}};
        for (int t = 0; t < 200; ++t) noise.values.push_back(stdn(rng));
        alt_rejected += adf_test(noise, 4).reject == RejectLevel::p1;
    }
    const double el = seconds_since(t0);
    const bool ok = null_kept >= 450 && alt_rejected >= 450 && el < 30.0;
    std::printf("criterion 9: %s -- unit root kept %d/500 (floor 450), white noise rejected "
                "at 1%% %d/500 (floor 450), %.1f s (budget 30)\n",
                ok ? "PASS" : "FAIL", null_kept, alt_rejected, el);
    return ok;
}

} // namespace

int main() {
    int failed = 0;
    failed += !criterion1();
    failed += !criterion2();
    failed += !criterion3();
    failed += !criterion4();
    failed += !criterion5();
    failed += !criterion6();
    failed += !criterion7();
    failed += !criterion8();
    failed += !criterion9();
    if (failed == 0)
        std::printf("acceptance: all 9 criteria pass\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
