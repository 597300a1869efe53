#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regimekit/dataset.hpp"
#include "regimekit/filter.hpp"
#include "regimekit/model_spec.hpp"
#include "regimekit/params.hpp"
#include "regimekit/series.hpp"

namespace regimekit {

struct GeneratorSpec {
    double mean = 0.0;
    double sd = 1.0;
};

// Generative counterpart of the estimated model: regressors are i.i.d.
// Gaussian streams, the regime chain moves by the (possibly covariate-
// driven) transition matrix, and the dependent variable is the regime's
// regression plus Gaussian noise.
struct DGPConfig {
    ModelSpec spec;
    Params params;
    std::size_t T = 200;
    std::uint64_t seed = 0;
    std::map<std::string, GeneratorSpec> generators; // by name; default N(0,1)
    Period start = Period(2000, 1);
};

struct SimOutput {
    Dataset dataset;              // T rows, aligned like an estimation sample
    std::vector<Regime> states;   // true regime per row
    std::vector<Series> raw;      // dep + source streams, CSV-exportable
};

// Fully reproducible from cfg.seed: same seed, same bits.
SimOutput simulate(const DGPConfig& cfg);

DGPConfig dgp_from_json(const std::string& text);
std::string dgp_to_json(const DGPConfig& cfg);
DGPConfig load_dgp(const std::string& path);

} // namespace regimekit
