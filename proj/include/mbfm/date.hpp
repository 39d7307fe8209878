#pragma once

#include <compare>
#include <string>

namespace mbfm {

// Calendar date (UTC, day precision). ISO-8601 `YYYY-MM-DD` on the wire.
struct Date {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31, validated against the month

    auto operator<=>(const Date&) const = default;

    bool ok() const;

    // Days since 1970-01-01; valid dates only.
    long serial() const;

    std::string iso() const;

    // Throws SyntaxError on anything that is not a valid `YYYY-MM-DD`.
    static Date parse(const std::string& text);

    // First day of the month `count` months after (or before, if negative)
    // this date's month. Day-of-month is discarded.
    Date add_months_first_day(int count) const;

    // Calendar date `count` days after (before, if negative) this one.
    Date add_days(long count) const;

    bool first_of_month() const { return day == 1; }
};

// Signed whole-month distance from a's month to b's month, ignoring days.
int month_diff(const Date& a, const Date& b);

} // namespace mbfm
