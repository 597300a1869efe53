// AVX2+FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; entry is gated behind cpu_supports_avx2() so the rest
// of the binary stays runnable on older CPUs.

#include "regimekit/kernels/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

namespace regimekit::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sw = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i] * b[i];
    return out;
}

double avx2_sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i];
    return out;
}

double avx2_sumsq(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i] * a[i];
    return out;
}

void avx2_residuals(const double* y, const double* const* x, const double* beta,
                    std::size_t k, double mu, double* out, std::size_t n) {
    const __m256d vmu = _mm256_set1_pd(mu);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), vmu));
    for (; i < n; ++i) out[i] = y[i] - mu;

    for (std::size_t j = 0; j < k; ++j) {
        const double* xj = x[j];
        const __m256d bj = _mm256_set1_pd(beta[j]);
        std::size_t t = 0;
        for (; t + 4 <= n; t += 4) {
            __m256d r = _mm256_loadu_pd(out + t);
            r = _mm256_fnmadd_pd(bj, _mm256_loadu_pd(xj + t), r);
            _mm256_storeu_pd(out + t, r);
        }
        for (; t < n; ++t) out[t] -= beta[j] * xj[t];
    }
}

void avx2_scaled_square(const double* r, double scale, double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(r + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(v, v), vs));
    }
    for (; i < n; ++i) out[i] = r[i] * r[i] * scale;
}

const Ops kAvx2 = {
    "avx2", avx2_dot, avx2_sum, avx2_sumsq, avx2_residuals, avx2_scaled_square,
};

} // namespace

const Ops* avx2_ops() {
    return cpu_supports_avx2() ? &kAvx2 : nullptr;
}

} // namespace regimekit::kernels

#else // non-x86 build: no AVX2 backend

namespace regimekit::kernels {
const Ops* avx2_ops() { return nullptr; }
} // namespace regimekit::kernels

#endif
