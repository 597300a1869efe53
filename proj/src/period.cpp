#include "regimekit/period.hpp"

#include <cctype>
#include <charconv>

#include "regimekit/errors.hpp"

namespace regimekit {

Period::Period(int year, int quarter) : year_(year), quarter_(quarter) {
    if (quarter < 1 || quarter > 4)
        throw DomainError("invalid quarter " + std::to_string(quarter) +
                          " (expected 1..4)");
}

Period Period::parse(std::string_view label) {
    auto fail = [&](const char* why) -> Period {
        throw LoadError(std::string(why) + ": '" + std::string(label) + "'");
    };
    if (label.size() != 6) fail("invalid period label (expected YYYYQn)");
    for (int i = 0; i < 4; ++i)
        if (!std::isdigit(static_cast<unsigned char>(label[i])))
            fail("invalid year in period label");
    if (label[4] != 'Q' && label[4] != 'q') fail("invalid period label (expected YYYYQn)");
    if (!std::isdigit(static_cast<unsigned char>(label[5])))
        fail("invalid quarter in period label");

    int year = 0;
    std::from_chars(label.data(), label.data() + 4, year);
    int quarter = label[5] - '0';
    if (quarter < 1 || quarter > 4) fail("invalid quarter");
    return Period(year, quarter);
}

Period Period::plus(int quarters) const {
    int idx = year_ * 4 + (quarter_ - 1) + quarters;
    Period p;
    p.year_ = idx / 4;
    p.quarter_ = idx % 4 + 1;
    if (p.quarter_ <= 0) { // negative index wrap
        p.year_ -= 1;
        p.quarter_ += 4;
    }
    return p;
}

std::string Period::str() const {
    return std::to_string(year_) + "Q" + std::to_string(quarter_);
}

} // namespace regimekit
