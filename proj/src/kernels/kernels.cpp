#include "regimekit/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace regimekit::kernels {

namespace {

double scalar_dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double scalar_sum(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double scalar_sumsq(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
    return acc;
}

void scalar_residuals(const double* y, const double* const* x, const double* beta,
                      std::size_t k, double mu, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = y[i] - mu;
    for (std::size_t j = 0; j < k; ++j) {
        const double* xj = x[j];
        const double bj = beta[j];
        for (std::size_t i = 0; i < n; ++i) out[i] -= bj * xj[i];
    }
}

void scalar_scaled_square(const double* r, double scale, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = r[i] * r[i] * scale;
}

const Ops kScalar = {
    "scalar", scalar_dot, scalar_sum, scalar_sumsq, scalar_residuals, scalar_scaled_square,
};

const Ops& pick() {
    if (const char* forced = std::getenv("REGIMEKIT_SIMD")) {
        if (std::strcmp(forced, "scalar") == 0) return kScalar;
        if (std::strcmp(forced, "avx2") == 0) {
            if (const Ops* v = avx2_ops()) return *v;
            return kScalar; // forced backend unavailable: fall back, never crash
        }
    }
    if (const Ops* v = avx2_ops()) return *v;
    return kScalar;
}

} // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& ops() {
    static const Ops& chosen = pick();
    return chosen;
}

bool cpu_supports_avx2() {
#if defined(__x86_64__) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

} // namespace regimekit::kernels
