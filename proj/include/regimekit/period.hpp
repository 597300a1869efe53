#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace regimekit {

// A calendar quarter, the time index of every series in the library.
// Label grammar is strictly "YYYYQn" with n in 1..4; the successor of
// (y, 4) is (y+1, 1).
class Period {
public:
    constexpr Period() = default;
    Period(int year, int quarter); // throws DomainError on quarter outside 1..4

    static Period parse(std::string_view label); // throws LoadError

    int year() const { return year_; }
    int quarter() const { return quarter_; }

    Period plus(int quarters) const;

    // Number of quarters from b to a (a - b).
    friend int operator-(const Period& a, const Period& b) {
        return (a.year_ - b.year_) * 4 + (a.quarter_ - b.quarter_);
    }

    auto operator<=>(const Period&) const = default;

    std::string str() const;

private:
    int year_ = 1900;
    int quarter_ = 1;
};

} // namespace regimekit
