#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "memento/client.hpp"
#include "memento/temporal.hpp"

namespace memento {

struct SeriesSpec {
    std::vector<std::string> resources;  // original or TimeGate URIs
    std::vector<Timestamp> times;        // strictly increasing
    std::string property;
};

// Line-oriented spec file: "resource <uri>", "time <ISO-8601>",
// "property <uri>". Comments start with '#'.
SeriesSpec load_series_spec(const std::filesystem::path& path);

struct SeriesCell {
    std::optional<double> value;
    std::string memento_uri;  // provenance: final URI that answered
    std::optional<Timestamp> content_datetime;
    std::string anomaly;  // "out-of-range", "missing-property", ...
};

struct SeriesResult {
    SeriesSpec spec;
    std::vector<std::vector<SeriesCell>> cells;  // [resource][time]
};

// One negotiated fetch per (resource, time); per-cell failures degrade to
// an anomaly note, only a resource with no reachable cell at all aborts.
SeriesResult run_series(const SeriesSpec& spec, const Client& client);

// Numeric normalization for the wild literal forms versioned data carries:
// currency symbols, thousands separators, trailing parenthesized notes,
// scientific notation. Absent result = not a number, with the reason.
std::optional<double> normalize(std::string_view raw, std::string* reason = nullptr);

std::string emit_csv(const SeriesResult& result);
// Chart parameter string (URL-encoded) carrying the same series.
std::string emit_chart_params(const SeriesResult& result);

std::string format_series_number(double v);

}  // namespace memento
