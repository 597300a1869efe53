#include "regimekit/linalg.hpp"

#include <cmath>
#include <cstddef>

#include "regimekit/errors.hpp"
#include "regimekit/kernels/kernels.hpp"

namespace regimekit::linalg {

std::optional<std::vector<double>> invert(std::vector<double> a, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::fabs(a[r * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (!(best > 1e-300)) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
                std::swap(inv[pivot * n + j], inv[col * n + j]);
            }
        }
        const double d = a[col * n + col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] /= d;
            inv[col * n + j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r * n + col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    for (double v : inv)
        if (!std::isfinite(v)) return std::nullopt;
    return inv;
}

OlsFit ols(const std::vector<const double*>& cols, const double* y, std::size_t n,
           bool add_intercept) {
    const auto& ops = kernels::ops();
    std::vector<double> ones;
    std::vector<const double*> x;
    if (add_intercept) {
        ones.assign(n, 1.0);
        x.push_back(ones.data());
    }
    x.insert(x.end(), cols.begin(), cols.end());
    const std::size_t k = x.size();
    if (k == 0) throw DomainError("ols: no columns");
    if (n <= k) throw DomainError("ols: need more observations than columns");

    std::vector<double> xtx(k * k), xty(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double v = ops.dot(x[i], x[j], n);
            xtx[i * k + j] = v;
            xtx[j * k + i] = v;
        }
        xty[i] = ops.dot(x[i], y, n);
    }

    auto xtx_inv = invert(xtx, k);
    if (!xtx_inv) throw DomainError("ols: singular design matrix");

    OlsFit fit;
    fit.n = n;
    fit.k = k;
    fit.coef.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) fit.coef[i] += (*xtx_inv)[i * k + j] * xty[j];

    std::vector<double> resid(y, y + n);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < n; ++t) resid[t] -= fit.coef[j] * x[j][t];
    fit.ssr = ops.sumsq(resid.data(), n);
    fit.sigma2 = fit.ssr / static_cast<double>(n - k);

    fit.se.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double v = fit.sigma2 * (*xtx_inv)[i * k + i];
        fit.se[i] = v > 0.0 ? std::sqrt(v) : 0.0;
    }
    return fit;
}

} // namespace regimekit::linalg
