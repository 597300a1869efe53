#include "regimekit/filter.hpp"

#include <cmath>
#include <numbers>

#include "regimekit/errors.hpp"
#include "regimekit/kernels/kernels.hpp"

namespace regimekit {

namespace {

// Guard on residual^2 / variance before exponentiation; exp(-350) is still
// comfortably inside double range, anything past this is a degenerate fit.
constexpr double kMaxStandardizedSq = 700.0;

std::array<double, 2> initial_distribution(const FilterInit& init, const TransitionMatrix& p1) {
    switch (init.kind) {
        case FilterInit::Kind::ergodic: {
            auto [pi1, pi2] = steady_state(p1);
            return {pi1, pi2};
        }
        case FilterInit::Kind::uniform: return {0.5, 0.5};
        case FilterInit::Kind::point_surge: return {1.0, 0.0};
        case FilterInit::Kind::point_steady: return {0.0, 1.0};
        case FilterInit::Kind::custom: return init.pi;
    }
    return {0.5, 0.5};
}

} // namespace

BoundModel bind(const Dataset& ds, const ModelSpec& spec) {
    spec.validate();
    if (ds.dep_name != spec.dep_name)
        throw DomainError("bind: dataset dependent variable '" + ds.dep_name +
                          "' does not match spec '" + spec.dep_name + "'");
    BoundModel m;
    m.ds = &ds;
    m.spec = &spec;
    for (const auto& r : spec.regressors) {
        const RegressorColumn* col = ds.find(r.name, r.lag);
        if (!col)
            throw DomainError("bind: dataset lacks regressor '" + r.name + "' at lag " +
                              std::to_string(r.lag));
        m.x.push_back(col->values.data());
    }
    if (spec.transition_mode == TransitionMode::TVTP) {
        const auto& ref = *spec.tp_covariate;
        const RegressorColumn* col = ds.find(ref.name, ref.lag);
        if (!col)
            throw DomainError("bind: dataset lacks transition covariate '" + ref.name +
                              "' at lag " + std::to_string(ref.lag));
        m.z = col->values.data();
    }
    return m;
}

FilterOutput loglikelihood(const BoundModel& m, const Params& p, const FilterInit& init) {
    const auto& ops = kernels::ops();
    const std::size_t n = m.n_obs();
    const std::size_t k = m.x.size();
    const bool tvtp = m.z != nullptr;

    // Regime-conditional residuals and squared standardized residuals,
    // computed as whole columns up front.
    std::array<std::vector<double>, 2> q;
    std::array<double, 2> prefactor;
    {
        std::vector<double> resid(n);
        for (int s = 0; s < 2; ++s) {
            const RegimeParams& rp = p.regime[static_cast<std::size_t>(s)];
            const double var = std::exp(rp.log_var);
            prefactor[static_cast<std::size_t>(s)] =
                1.0 / std::sqrt(2.0 * std::numbers::pi * var);
            ops.residuals(m.ds->dep.data(), m.x.data(), rp.betas.data(), k, rp.mu,
                          resid.data(), n);
            q[static_cast<std::size_t>(s)].resize(n);
            ops.scaled_square(resid.data(), 1.0 / var, q[static_cast<std::size_t>(s)].data(), n);
        }
    }

    auto matrix_at = [&](std::size_t t) {
        return tvtp ? transition_matrix_at(p.transition, m.z[t])
                    : transition_matrix_at(p.transition);
    };
    TransitionMatrix constant_tm;
    if (!tvtp) constant_tm = matrix_at(0);

    FilterOutput out;
    out.predicted.resize(n);
    out.filtered.resize(n);
    out.per_obs_loglik.resize(n);

    std::array<double, 2> prev{};
    for (std::size_t t = 0; t < n; ++t) {
        const TransitionMatrix tm = tvtp ? matrix_at(t) : constant_tm;
        std::array<double, 2>& pred = out.predicted[t];
        if (t == 0) {
            pred = initial_distribution(init, tm);
        } else {
            pred[0] = prev[0] * tm.p11 + prev[1] * tm.p21();
            pred[1] = prev[0] * tm.p12() + prev[1] * tm.p22;
        }

        std::array<double, 2> joint;
        for (int s = 0; s < 2; ++s) {
            const double qs = q[static_cast<std::size_t>(s)][t];
            if (!(qs <= kMaxStandardizedSq))
                throw FilterError("non-finite density", static_cast<std::ptrdiff_t>(t));
            joint[static_cast<std::size_t>(s)] =
                pred[static_cast<std::size_t>(s)] *
                (prefactor[static_cast<std::size_t>(s)] * std::exp(-0.5 * qs));
        }
        const double norm = joint[0] + joint[1];
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw FilterError("non-finite density", static_cast<std::ptrdiff_t>(t));
        out.filtered[t] = {joint[0] / norm, joint[1] / norm};
        out.per_obs_loglik[t] = std::log(norm);
        out.loglik += out.per_obs_loglik[t];
        prev = out.filtered[t];
    }
    return out;
}

FilterOutput loglikelihood(const Dataset& ds, const ModelSpec& spec, const Params& p,
                           const FilterInit& init) {
    return loglikelihood(bind(ds, spec), p, init);
}

SmoothOutput smooth(const FilterOutput& fo, const BoundModel& m, const Params& p) {
    const std::size_t n = fo.filtered.size();
    const bool tvtp = m.z != nullptr;
    SmoothOutput out;
    out.smoothed.resize(n);
    if (n == 0) return out;

    out.smoothed[n - 1] = fo.filtered[n - 1];
    TransitionMatrix constant_tm;
    if (!tvtp) constant_tm = transition_matrix_at(p.transition);

    for (std::size_t t = n - 1; t-- > 0;) {
        const TransitionMatrix tm =
            tvtp ? transition_matrix_at(p.transition, m.z[t + 1]) : constant_tm;
        const auto& next_sm = out.smoothed[t + 1];
        const auto& next_pred = fo.predicted[t + 1];
        const double r0 = next_sm[0] / next_pred[0];
        const double r1 = next_sm[1] / next_pred[1];
        double s0 = fo.filtered[t][0] * (tm.p11 * r0 + tm.p12() * r1);
        double s1 = fo.filtered[t][1] * (tm.p21() * r0 + tm.p22 * r1);
        const double total = s0 + s1;
        if (!(total > 0.0) || !std::isfinite(total))
            throw FilterError("degenerate smoother step", static_cast<std::ptrdiff_t>(t));
        out.smoothed[t] = {s0 / total, s1 / total};
    }
    return out;
}

SmoothOutput smooth(const FilterOutput& fo, const Dataset& ds, const ModelSpec& spec,
                    const Params& p) {
    return smooth(fo, bind(ds, spec), p);
}

Classification classify(const SmoothOutput& sm, const std::vector<Period>& periods) {
    Classification cl;
    cl.regimes.reserve(sm.smoothed.size());
    for (const auto& row : sm.smoothed)
        cl.regimes.push_back(row[0] > 0.5 ? Regime::surge : Regime::steady);

    for (std::size_t t = 0; t < cl.regimes.size(); ++t) {
        if (cl.regimes[t] != Regime::surge) continue;
        std::size_t start = t;
        while (t + 1 < cl.regimes.size() && cl.regimes[t + 1] == Regime::surge) ++t;
        cl.episodes.push_back({periods[start], periods[t]});
    }
    return cl;
}

Durations empirical_durations(const Classification& cl) {
    Durations d;
    std::size_t surge_q = 0;
    for (Regime r : cl.regimes)
        if (r == Regime::surge) ++surge_q;
    const std::size_t steady_q = cl.regimes.size() - surge_q;

    std::size_t steady_eps = 0;
    for (std::size_t t = 0; t < cl.regimes.size(); ++t) {
        if (cl.regimes[t] != Regime::steady) continue;
        ++steady_eps;
        while (t + 1 < cl.regimes.size() && cl.regimes[t + 1] == Regime::steady) ++t;
    }

    if (!cl.episodes.empty())
        d.empirical_surge = static_cast<double>(surge_q) / static_cast<double>(cl.episodes.size());
    if (steady_eps > 0)
        d.empirical_steady = static_cast<double>(steady_q) / static_cast<double>(steady_eps);
    return d;
}

Durations durations(const TransitionMatrix& tm, const Classification& cl) {
    Durations d = empirical_durations(cl);
    d.model_surge = expected_duration(tm.p11);
    d.model_steady = expected_duration(tm.p22);
    return d;
}

} // namespace regimekit
