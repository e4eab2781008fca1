#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace memento {

/// A UTC instant at second granularity. HTTP carries no sub-second time,
/// so seconds since the Unix epoch are the whole state.
class Timestamp {
public:
    Timestamp() = default;
    static Timestamp from_unix(std::int64_t secs) { return Timestamp(secs); }
    static Timestamp from_civil(int year, int month, int day, int hour = 0, int minute = 0,
                                int second = 0);

    std::int64_t unix_seconds() const { return secs_; }

    struct Civil {
        int year, month, day, hour, minute, second;
    };
    Civil civil() const;

    auto operator<=>(const Timestamp&) const = default;

private:
    explicit Timestamp(std::int64_t secs) : secs_(secs) {}
    std::int64_t secs_ = 0;
};

// Fixed-length HTTP-date, e.g. "Thu, 20 Mar 2008 00:00:00 GMT".
// Throws MalformedDate on anything non-canonical (wrong weekday included).
Timestamp parse_http_date(std::string_view raw);
std::string format_http_date(Timestamp t);

// ISO 8601 for manifests and TimeMap literals. Accepts "YYYY-MM-DD",
// "...THH:MM:SSZ" and numeric offsets ("+00:00"); always normalized to UTC.
Timestamp parse_iso8601(std::string_view raw);
std::string format_iso8601(Timestamp t);

// Memento URL date segment.
Timestamp parse_yyyymmdd(std::string_view raw);
std::string format_yyyymmdd(Timestamp t);

/// Half-open validity span [start, end); an absent end means still current.
struct Interval {
    Timestamp start;
    std::optional<Timestamp> end;

    bool covers(Timestamp t) const {
        return start <= t && (!end || t < *end);
    }
    bool operator==(const Interval&) const = default;
};

inline bool interval_covers(const Interval& iv, Timestamp t) { return iv.covers(t); }

}  // namespace memento
