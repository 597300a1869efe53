#include <doctest.h>

#include <random>

#include "regimekit/dataset.hpp"
#include "regimekit/errors.hpp"

using namespace regimekit;

namespace {

Series make_series(const std::string& name, Period start, std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    Series s{name, start, {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(d(rng));
    return s;
}

} // namespace

TEST_CASE("align drops rows for the maximum lag") {
    Series dep = make_series("pd", Period(1998, 1), 102, 1); // 1998Q1..2023Q2
    Series reg = dep;
    reg.name = "pd_lagsrc";

    auto ds = align(dep, {{&reg, 1}});
    CHECK(ds.n_obs() == 101);
    CHECK(ds.periods.front() == Period(1998, 2));
    CHECK(ds.periods.back() == Period(2023, 2));
    // row t of the lagged column equals the source at t-1 (never fabricated)
    REQUIRE(ds.regressors.size() == 1);
    for (std::size_t t = 0; t < ds.n_obs(); ++t) {
        CHECK(ds.dep[t] == dep.values[t + 1]);
        CHECK(ds.regressors[0].values[t] == reg.values[t]);
    }
}

TEST_CASE("align with zero lags keeps the full common span") {
    Series dep = make_series("pd", Period(2000, 1), 40, 2);
    Series a = make_series("a", Period(2000, 1), 40, 3);
    auto ds = align(dep, {{&a, 0}});
    CHECK(ds.n_obs() == 40);
    CHECK(ds.periods.front() == Period(2000, 1));
}

TEST_CASE("align window is governed by the largest lag") {
    Series dep = make_series("pd", Period(2000, 1), 60, 4);
    Series a = make_series("a", Period(2000, 1), 60, 5);
    Series z = make_series("z", Period(2000, 1), 60, 6);
    auto ds = align(dep, {{&a, 4}}, {{&z, 2}});
    CHECK(ds.n_obs() == 56); // span - 4
    CHECK(ds.periods.front() == Period(2001, 1));
    REQUIRE(ds.tp_covariate.has_value());
    for (std::size_t t = 0; t < ds.n_obs(); ++t) {
        CHECK(ds.regressors[0].values[t] == a.values[t]);         // t-4 of source
        CHECK(ds.tp_covariate->values[t] == z.values[t + 2]);     // t-2 of source
    }
}

TEST_CASE("align respects differing spans") {
    Series dep = make_series("pd", Period(2000, 1), 50, 7);   // ..2012Q2
    Series late = make_series("a", Period(2005, 1), 30, 8);   // 2005Q1..2012Q2
    auto ds = align(dep, {{&late, 1}});
    CHECK(ds.periods.front() == Period(2005, 2));
    CHECK(ds.n_obs() == 29);
}

TEST_CASE("align errors on insufficient overlap naming the first usable period") {
    Series dep = make_series("pd", Period(2000, 1), 25, 9);
    Series a = make_series("a", Period(2004, 1), 25, 10); // overlap 2004Q1..2006Q1 lagged
    CHECK_THROWS_WITH_AS(align(dep, {{&a, 2}}),
                         "align: only 7 usable rows from 2004Q3, need 20", DomainError);

    Series b = make_series("b", Period(2030, 1), 25, 11);
    CHECK_THROWS_AS(align(dep, {{&b, 0}}), DomainError); // disjoint spans
}

TEST_CASE("dataset find locates columns by name and lag") {
    Series dep = make_series("pd", Period(2000, 1), 40, 12);
    Series a = make_series("a", Period(2000, 1), 40, 13);
    Series z = make_series("z", Period(2000, 1), 40, 14);
    auto ds = align(dep, {{&a, 1}, {&a, 3}}, {{&z, 2}});

    REQUIRE(ds.find("a", 1) != nullptr);
    REQUIRE(ds.find("a", 3) != nullptr);
    CHECK(ds.find("a", 1)->values != ds.find("a", 3)->values);
    REQUIRE(ds.find("z", 2) != nullptr);
    CHECK(ds.find("a", 2) == nullptr);
    CHECK(ds.find("q", 1) == nullptr);
}
