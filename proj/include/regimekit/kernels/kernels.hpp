#pragma once

#include <cstddef>
#include <string>

namespace regimekit::kernels {

// Dense double-precision kernels behind the filter and the regression
// helpers. Two implementations exist: a scalar reference and an AVX2+FMA
// variant; one is selected at process start from CPU capabilities. The
// environment variable REGIMEKIT_SIMD ("scalar" or "avx2") forces a
// backend, which the equivalence tests use to pin both sides.
struct Ops {
    const char* name;

    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]
    double (*sum)(const double* a, std::size_t n);
    // sum_i a[i]^2
    double (*sumsq)(const double* a, std::size_t n);
    // out[i] = y[i] - mu - sum_k beta[k] * x[k][i]
    void (*residuals)(const double* y, const double* const* x, const double* beta,
                      std::size_t k, double mu, double* out, std::size_t n);
    // out[i] = r[i] * r[i] * scale
    void (*scaled_square)(const double* r, double scale, double* out, std::size_t n);
};

// Backend selected for this process (stable after first call).
const Ops& ops();

// Named backends for direct access in tests and benchmarks.
const Ops& scalar_ops();
const Ops* avx2_ops(); // nullptr when unsupported by the build or the CPU

bool cpu_supports_avx2();

} // namespace regimekit::kernels
