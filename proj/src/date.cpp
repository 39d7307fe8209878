#include "mbfm/date.hpp"

#include "mbfm/errors.hpp"

#include <chrono>
#include <cstdio>

namespace mbfm {

namespace {

std::chrono::year_month_day to_ymd(const Date& d) {
    return std::chrono::year{d.year} / d.month / d.day;
}

} // namespace

bool Date::ok() const {
    return to_ymd(*this).ok();
}

long Date::serial() const {
    const std::chrono::sys_days days{to_ymd(*this)};
    return days.time_since_epoch().count();
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::parse(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (text.size() != 10 ||
        std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &extra) != 3) {
        throw SyntaxError("not an ISO-8601 date (YYYY-MM-DD): '" + text + "'", 0);
    }
    Date date{y, m, d};
    if (!date.ok()) {
        throw SyntaxError("no such calendar date: '" + text + "'", 0);
    }
    return date;
}

Date Date::add_months_first_day(int count) const {
    const int base = year * 12 + (month - 1) + count;
    // floor division keeps negative month offsets on the right year
    int y = base / 12;
    int m = base % 12;
    if (m < 0) {
        y -= 1;
        m += 12;
    }
    return Date{y, m + 1, 1};
}

Date Date::add_days(long count) const {
    const std::chrono::sys_days base{to_ymd(*this)};
    const std::chrono::year_month_day ymd{base + std::chrono::days{count}};
    return Date{int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
}

int month_diff(const Date& a, const Date& b) {
    return (b.year * 12 + b.month) - (a.year * 12 + a.month);
}

} // namespace mbfm
