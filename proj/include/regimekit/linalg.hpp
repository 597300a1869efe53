#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace regimekit::linalg {

// Row-major n×n inverse by Gauss-Jordan with partial pivoting.
// Returns nullopt when a pivot falls below the singularity threshold.
std::optional<std::vector<double>> invert(std::vector<double> a, std::size_t n);

struct OlsFit {
    std::vector<double> coef;   // intercept first when requested
    std::vector<double> se;
    double ssr = 0.0;           // sum of squared residuals
    double sigma2 = 0.0;        // ssr / (n - k)
    std::size_t n = 0;
    std::size_t k = 0;          // columns including the intercept
};

// Least squares of y on the given columns via the normal equations.
// Column count stays small here (a handful of lags), so no QR is needed.
// Throws DomainError when n <= k or the cross-product matrix is singular.
OlsFit ols(const std::vector<const double*>& cols, const double* y, std::size_t n,
           bool add_intercept);

} // namespace regimekit::linalg
