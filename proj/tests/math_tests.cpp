#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "regimekit/errors.hpp"
#include "regimekit/linalg.hpp"
#include "regimekit/stats.hpp"

using namespace regimekit;

TEST_CASE("matrix inverse on small systems") {
    // [[2,1],[1,3]]^-1 = 1/5 [[3,-1],[-1,2]]
    auto inv = linalg::invert({2, 1, 1, 3}, 2);
    REQUIRE(inv.has_value());
    CHECK((*inv)[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK((*inv)[1] == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK((*inv)[3] == doctest::Approx(0.4).epsilon(1e-12));

    CHECK_FALSE(linalg::invert({1, 2, 2, 4}, 2).has_value());
    CHECK_FALSE(linalg::invert({0}, 1).has_value());

    // A * A^-1 = I on a random well-conditioned matrix
    std::mt19937_64 rng(7);
    std::normal_distribution<double> d(0.0, 1.0);
    const std::size_t n = 5;
    std::vector<double> a(n * n);
    for (auto& v : a) v = d(rng);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] += 4.0;
    auto ai = linalg::invert(a, n);
    REQUIRE(ai.has_value());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += a[i * n + k] * (*ai)[k * n + j];
            CHECK(acc == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("ols recovers a clean linear relation") {
    // y = 2 + 3x, no noise: exact coefficients, zero residual
    std::vector<double> x = {0, 1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 + 3.0 * v);
    auto fit = linalg::ols({x.data()}, y.data(), x.size(), true);
    CHECK(fit.coef[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.coef[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.ssr == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    CHECK(fit.k == 2);
    CHECK(fit.n == 6);
}

TEST_CASE("ols standard errors match hand formulas") {
    // Simple regression: se(b) = s / sqrt(Sxx), s^2 = SSR/(n-2)
    std::mt19937_64 rng(11);
    std::normal_distribution<double> d(0.0, 1.0);
    const std::size_t n = 60;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = d(rng);
        y[i] = 1.0 + 0.5 * x[i] + 0.3 * d(rng);
    }
    auto fit = linalg::ols({x.data()}, y.data(), n, true);

    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= n;
    ybar /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    double b = sxy / sxx;
    double a = ybar - b * xbar;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - a - b * x[i];
        ssr += e * e;
    }
    double s2 = ssr / (n - 2);

    CHECK(fit.coef[1] == doctest::Approx(b).epsilon(1e-10));
    CHECK(fit.coef[0] == doctest::Approx(a).epsilon(1e-10));
    CHECK(fit.se[1] == doctest::Approx(std::sqrt(s2 / sxx)).epsilon(1e-8));

    CHECK_THROWS_AS(linalg::ols({x.data(), x.data()}, y.data(), n, true), DomainError);
    CHECK_THROWS_AS(linalg::ols({x.data()}, y.data(), 2, true), DomainError);
}

TEST_CASE("summarize two-point and constant cases") {
    Series s{"v", Period(2000, 1), {1.0, 3.0}};
    auto st = summarize(s);
    CHECK(st.mean == doctest::Approx(2.0));
    CHECK(st.sd == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12)); // 1.414
    CHECK(st.max == doctest::Approx(3.0));
    CHECK(st.min == doctest::Approx(1.0));
    CHECK(st.n_obs == 2);

    Series c{"c", Period(2000, 1), {5.0, 5.0, 5.0}};
    CHECK(summarize(c).sd == doctest::Approx(0.0).scale(1.0));

    Series one{"o", Period(2000, 1), {5.0}};
    CHECK_THROWS_AS(summarize(one), DomainError);
}

TEST_CASE("summarize variance equals brute-force definition") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d(1.0, 4.0);
    Series s{"v", Period(2000, 1), {}};
    for (int i = 0; i < 87; ++i) s.values.push_back(d(rng));
    auto st = summarize(s);

    double mean = 0.0;
    for (double v : s.values) mean += v;
    mean /= static_cast<double>(s.size());
    double ss = 0.0;
    for (double v : s.values) ss += (v - mean) * (v - mean);
    double var = ss / static_cast<double>(s.size() - 1);
    CHECK(st.sd * st.sd == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("adf rejects stationary noise and flags the lag used") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> d(0.0, 1.0);
    Series s{"wn", Period(1990, 1), {}};
    for (int i = 0; i < 200; ++i) s.values.push_back(d(rng));

    auto r = adf_test(s, 4);
    CHECK(r.reject == RejectLevel::p1);
    CHECK(r.tstat < -3.44);
    CHECK(r.n_used >= 190);
}

TEST_CASE("adf keeps the null on a frozen random walk draw") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> d(0.0, 1.0);
    Series s{"rw", Period(1990, 1), {0.0}};
    for (int i = 1; i < 200; ++i) s.values.push_back(s.values.back() + d(rng));

    auto r = adf_test(s, 4);
    CHECK(r.reject == RejectLevel::none);
}

TEST_CASE("adf tstat ignores a constant offset") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d(0.0, 1.0);
    Series s{"a", Period(1990, 1), {}};
    double y = 0.0;
    for (int i = 0; i < 150; ++i) {
        y = 0.6 * y + d(rng);
        s.values.push_back(y);
    }
    Series shifted = s;
    for (auto& v : shifted.values) v += 1000.0;

    auto r1 = adf_test(s, 4);
    auto r2 = adf_test(shifted, 4);
    CHECK(r1.tstat == doctest::Approx(r2.tstat).epsilon(1e-8));
    CHECK(r1.lag == r2.lag);
}

TEST_CASE("adf input validation") {
    Series s{"x", Period(2000, 1), std::vector<double>(12, 1.0)};
    CHECK_THROWS_AS(adf_test(s, 4), DomainError); // too short
    Series c{"c", Period(2000, 1), std::vector<double>(50, 2.0)};
    CHECK_THROWS_AS(adf_test(c, 4), DomainError); // constant: degenerate
}

TEST_CASE("reject level labels and stars") {
    CHECK(reject_label(RejectLevel::none) == "none");
    CHECK(reject_label(RejectLevel::p10) == "10%");
    CHECK(reject_label(RejectLevel::p5) == "5%");
    CHECK(reject_label(RejectLevel::p1) == "1%");
    CHECK(reject_stars(RejectLevel::none).empty());
    CHECK(reject_stars(RejectLevel::p5) == "**");
    CHECK(reject_stars(RejectLevel::p1) == "***");
}
