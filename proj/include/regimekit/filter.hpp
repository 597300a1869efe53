#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "regimekit/dataset.hpp"
#include "regimekit/model_spec.hpp"
#include "regimekit/params.hpp"
#include "regimekit/transition.hpp"

namespace regimekit {

// Column 0 = surge regime, column 1 = steady regime, throughout.
struct FilterOutput {
    double loglik = 0.0;
    std::vector<std::array<double, 2>> predicted; // P(s_t = j | info_{t-1})
    std::vector<std::array<double, 2>> filtered;  // P(s_t = j | info_t)
    std::vector<double> per_obs_loglik;
};

struct SmoothOutput {
    std::vector<std::array<double, 2>> smoothed; // P(s_t = j | info_T)
};

// Distribution the recursion starts from. Ergodic uses the transition
// matrix at the first observation; the point kinds exist for absorbing
// chains whose ergodic distribution is undefined in spirit.
struct FilterInit {
    enum class Kind { ergodic, uniform, point_surge, point_steady, custom };
    Kind kind = Kind::ergodic;
    std::array<double, 2> pi{0.5, 0.5}; // read only for custom

    static FilterInit ergodic() { return {}; }
    static FilterInit uniform() { return {Kind::uniform, {0.5, 0.5}}; }
    static FilterInit point_surge() { return {Kind::point_surge, {1.0, 0.0}}; }
    static FilterInit point_steady() { return {Kind::point_steady, {0.0, 1.0}}; }
    static FilterInit custom(double pi1) { return {Kind::custom, {pi1, 1.0 - pi1}}; }
};

// Dataset columns resolved against a spec once, so repeated likelihood
// evaluations skip the name lookups. Pointers borrow from the dataset.
struct BoundModel {
    const Dataset* ds = nullptr;
    const ModelSpec* spec = nullptr;
    std::vector<const double*> x; // per-spec-regressor columns
    const double* z = nullptr;    // transition covariate column (TVTP)

    std::size_t n_obs() const { return ds->n_obs(); }
};

// Throws DomainError when the dataset lacks a required column.
BoundModel bind(const Dataset& ds, const ModelSpec& spec);

// Forward recursion: predict with the transition matrix at t, update by
// Bayes rule with the regime-conditional Gaussian density, accumulate the
// log normalizing constant. Throws FilterError (carrying t) when a
// squared standardized residual exceeds the overflow guard.
FilterOutput loglikelihood(const BoundModel& m, const Params& p,
                           const FilterInit& init = FilterInit::ergodic());
FilterOutput loglikelihood(const Dataset& ds, const ModelSpec& spec, const Params& p,
                           const FilterInit& init = FilterInit::ergodic());

// Backward recursion over the filter output; the last row equals the last
// filtered row exactly.
SmoothOutput smooth(const FilterOutput& fo, const BoundModel& m, const Params& p);
SmoothOutput smooth(const FilterOutput& fo, const Dataset& ds, const ModelSpec& spec,
                    const Params& p);

enum class Regime { surge, steady };

struct Episode {
    Period start;
    Period end; // inclusive
};

struct Classification {
    std::vector<Regime> regimes;   // one per row
    std::vector<Episode> episodes; // maximal consecutive surge runs
};

// Surge iff smoothed surge probability > 0.5; a tie classifies as steady.
Classification classify(const SmoothOutput& sm, const std::vector<Period>& periods);

struct Durations {
    std::optional<double> model_surge;     // 1/(1-p11)
    std::optional<double> model_steady;    // 1/(1-p22)
    std::optional<double> empirical_surge; // surge quarters / surge episodes
    std::optional<double> empirical_steady;
};

// Model-implied durations from a constant matrix; absent entries where
// there are no episodes of a regime.
Durations durations(const TransitionMatrix& tm, const Classification& cl);
Durations empirical_durations(const Classification& cl);

} // namespace regimekit
