#include "memento/temporal.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "memento/errors.hpp"

namespace memento {
namespace {

constexpr std::array<const char*, 7> kWeekdays = {"Mon", "Tue", "Wed", "Thu",
                                                  "Fri", "Sat", "Sun"};
constexpr std::array<const char*, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : d[m - 1];
}

// Howard Hinnant's civil calendar algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

// 0 = Monday ... 6 = Sunday
int weekday_from_days(std::int64_t z) {
    return static_cast<int>(z >= -3 ? (z + 3) % 7 : (z + 4) % 7 + 6);
}

int parse_digits(std::string_view s, std::size_t pos, std::size_t n, const std::string& raw) {
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (i >= s.size() || s[i] < '0' || s[i] > '9') throw MalformedDate(raw);
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

}  // namespace

Timestamp Timestamp::from_civil(int year, int month, int day, int hour, int minute, int second) {
    std::int64_t days = days_from_civil(year, month, day);
    return Timestamp::from_unix(days * 86400 + hour * 3600 + minute * 60 + second);
}

Timestamp::Civil Timestamp::civil() const {
    std::int64_t days = secs_ / 86400;
    std::int64_t rem = secs_ % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    Civil c{};
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>(rem % 3600 / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

Timestamp parse_http_date(std::string_view raw) {
    const std::string r(raw);
    // "Www, DD Mmm YYYY HH:MM:SS GMT" — 29 chars, nothing else accepted.
    if (raw.size() != 29) throw MalformedDate(r);
    if (raw[3] != ',' || raw[4] != ' ' || raw[7] != ' ' || raw[11] != ' ' || raw[16] != ' ' ||
        raw[19] != ':' || raw[22] != ':' || raw.substr(25) != " GMT")
        throw MalformedDate(r);

    int wd = -1;
    for (int i = 0; i < 7; ++i)
        if (raw.substr(0, 3) == kWeekdays[i]) wd = i;
    int mon = 0;
    for (int i = 0; i < 12; ++i)
        if (raw.substr(8, 3) == kMonths[i]) mon = i + 1;
    if (wd < 0 || mon == 0) throw MalformedDate(r);

    int day = parse_digits(raw, 5, 2, r);
    int year = parse_digits(raw, 12, 4, r);
    int hour = parse_digits(raw, 17, 2, r);
    int minute = parse_digits(raw, 20, 2, r);
    int second = parse_digits(raw, 23, 2, r);

    if (day < 1 || day > days_in_month(year, mon) || hour > 23 || minute > 59 || second > 59)
        throw MalformedDate(r);
    if (weekday_from_days(days_from_civil(year, mon, day)) != wd) throw MalformedDate(r);
    return Timestamp::from_civil(year, mon, day, hour, minute, second);
}

std::string format_http_date(Timestamp t) {
    auto c = t.civil();
    int wd = weekday_from_days(days_from_civil(c.year, c.month, c.day));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s, %02d %s %04d %02d:%02d:%02d GMT", kWeekdays[wd], c.day,
                  kMonths[c.month - 1], c.year, c.hour, c.minute, c.second);
    return buf;
}

Timestamp parse_iso8601(std::string_view raw) {
    const std::string r(raw);
    if (raw.size() < 10 || raw[4] != '-' || raw[7] != '-') throw MalformedDate(r);
    int year = parse_digits(raw, 0, 4, r);
    int mon = parse_digits(raw, 5, 2, r);
    int day = parse_digits(raw, 8, 2, r);
    if (mon < 1 || mon > 12 || day < 1 || day > days_in_month(year, mon)) throw MalformedDate(r);
    int hour = 0, minute = 0, second = 0;
    std::int64_t offset = 0;
    if (raw.size() > 10) {
        if ((raw[10] != 'T' && raw[10] != ' ') || raw.size() < 19 || raw[13] != ':' ||
            raw[16] != ':')
            throw MalformedDate(r);
        hour = parse_digits(raw, 11, 2, r);
        minute = parse_digits(raw, 14, 2, r);
        second = parse_digits(raw, 17, 2, r);
        if (hour > 23 || minute > 59 || second > 59) throw MalformedDate(r);
        std::string_view tail = raw.substr(19);
        if (tail == "Z" || tail.empty()) {
            // UTC
        } else if ((tail[0] == '+' || tail[0] == '-') && tail.size() == 6 && tail[3] == ':') {
            int oh = parse_digits(tail, 1, 2, r);
            int om = parse_digits(tail, 4, 2, r);
            offset = (oh * 3600 + om * 60) * (tail[0] == '+' ? 1 : -1);
        } else {
            throw MalformedDate(r);
        }
    }
    return Timestamp::from_unix(
        Timestamp::from_civil(year, mon, day, hour, minute, second).unix_seconds() - offset);
}

std::string format_iso8601(Timestamp t) {
    auto c = t.civil();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                  c.hour, c.minute, c.second);
    return buf;
}

Timestamp parse_yyyymmdd(std::string_view raw) {
    const std::string r(raw);
    if (raw.size() != 8) throw MalformedDate(r);
    int year = parse_digits(raw, 0, 4, r);
    int mon = parse_digits(raw, 4, 2, r);
    int day = parse_digits(raw, 6, 2, r);
    if (mon < 1 || mon > 12 || day < 1 || day > days_in_month(year, mon)) throw MalformedDate(r);
    return Timestamp::from_civil(year, mon, day);
}

std::string format_yyyymmdd(Timestamp t) {
    auto c = t.civil();
    char buf[12];
    std::snprintf(buf, sizeof buf, "%04d%02d%02d", c.year, c.month, c.day);
    return buf;
}

}  // namespace memento
