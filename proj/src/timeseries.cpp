#include "memento/timeseries.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "memento/errors.hpp"
#include "memento/ntriples.hpp"
#include "memento/uri.hpp"

namespace memento {
namespace {

// A resource list entry may be a TimeGate URI; the negotiation subject is
// the original URI embedded after /timegate/.
std::string subject_of(const std::string& resource) {
    auto pos = resource.find("/timegate/");
    if (pos == std::string::npos) return resource;
    return resource.substr(pos + 10);
}

bool strip_prefix(std::string_view& s, std::string_view prefix) {
    if (s.substr(0, prefix.size()) != prefix) return false;
    s.remove_prefix(prefix.size());
    return true;
}

}  // namespace

SeriesSpec load_series_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read series spec " + path.string());
    SeriesSpec spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto space = line.find(' ');
        std::string key = line.substr(0, space);
        std::string value = space == std::string::npos ? "" : line.substr(space + 1);
        if (key == "resource" && !value.empty())
            spec.resources.push_back(value);
        else if (key == "time" && !value.empty())
            spec.times.push_back(parse_iso8601(value));
        else if (key == "property" && !value.empty())
            spec.property = value;
        else
            throw Error("bad series spec line " + std::to_string(lineno) + ": " + line);
    }
    if (spec.resources.empty() || spec.times.empty() || spec.property.empty())
        throw Error("series spec needs at least one resource, one time and a property");
    for (std::size_t i = 1; i < spec.times.size(); ++i)
        if (!(spec.times[i - 1] < spec.times[i]))
            throw Error("series spec times must be strictly increasing");
    return spec;
}

SeriesResult run_series(const SeriesSpec& spec, const Client& client) {
    SeriesResult result;
    result.spec = spec;
    std::size_t reachable_resources = 0;
    for (const auto& resource : spec.resources) {
        std::string subject = subject_of(resource);
        std::vector<SeriesCell> row;
        bool any_reachable = false;
        for (Timestamp t : spec.times) {
            SeriesCell cell;
            try {
                auto res = client.fetch_at(resource, t, "application/n-triples");
                any_reachable = true;
                cell.memento_uri = res.final_uri;
                cell.content_datetime = res.content_datetime;
                auto triples = parse_ntriples_string(res.body);
                auto values = select_values(triples, subject, spec.property);
                if (values.empty() && !triples.empty()) {
                    // The resource URI may be an emulation URL rather than the
                    // archived subject; representations carry one subject.
                    bool single = true;
                    for (const auto& t : triples)
                        if (t.subject != triples.front().subject) single = false;
                    if (single)
                        values = select_values(triples, triples.front().subject, spec.property);
                }
                if (values.empty()) {
                    cell.anomaly = "missing-property";
                } else {
                    if (values.size() > 1)
                        cell.anomaly = "multiple-values(" + std::to_string(values.size()) + ")";
                    std::string reason;
                    cell.value = normalize(values.front(), &reason);
                    if (!cell.value)
                        cell.anomaly = cell.anomaly.empty() ? reason : cell.anomaly + "; " + reason;
                }
            } catch (const OutOfRange& e) {
                any_reachable = true;
                cell.anomaly = "out-of-range: " + e.server_range();
            } catch (const Error& e) {
                cell.anomaly = std::string("error: ") + e.what();
            }
            row.push_back(std::move(cell));
        }
        if (any_reachable) ++reachable_resources;
        result.cells.push_back(std::move(row));
    }
    if (reachable_resources == 0)
        throw TransportError("no resource in the series spec was reachable");
    return result;
}

std::optional<double> normalize(std::string_view raw, std::string* reason) {
    auto fail = [&](const char* why) -> std::optional<double> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    std::string_view s = raw;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);

    // Trailing parenthesized annotation: "29000 (2008 est.)"
    if (auto paren = s.find('('); paren != std::string_view::npos) s = s.substr(0, paren);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);

    // Leading currency symbols.
    while (true) {
        if (!s.empty() && s.front() == '$') s.remove_prefix(1);
        else if (strip_prefix(s, "\xE2\x82\xAC")) {}  // €
        else if (strip_prefix(s, "\xC2\xA3")) {}      // £
        else break;
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    }
    if (s.empty()) return fail("non-numeric");

    // Thousands separators.
    std::string cleaned;
    for (char c : s) {
        if (c == ',') continue;
        cleaned += c;
    }

    double value = 0;
    auto [ptr, ec] = std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), value);
    if (ec != std::errc{} || ptr != cleaned.data() + cleaned.size()) return fail("non-numeric");
    if (reason) reason->clear();
    return value;
}

std::string format_series_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string emit_csv(const SeriesResult& result) {
    std::string out = "resource";
    for (Timestamp t : result.spec.times) out += "," + format_iso8601(t);
    out += "\n";
    for (std::size_t r = 0; r < result.spec.resources.size(); ++r) {
        out += result.spec.resources[r];
        for (const auto& cell : result.cells[r]) {
            out += ",";
            if (cell.value) out += format_series_number(*cell.value);
        }
        out += "\n";
    }
    return out;
}

std::string emit_chart_params(const SeriesResult& result) {
    std::string data, labels, axis;
    for (std::size_t r = 0; r < result.spec.resources.size(); ++r) {
        if (r) {
            data += "|";
            labels += "|";
        }
        labels += url_encode(result.spec.resources[r]);
        for (std::size_t c = 0; c < result.cells[r].size(); ++c) {
            if (c) data += ",";
            if (result.cells[r][c].value)
                data += format_series_number(*result.cells[r][c].value);
        }
    }
    for (Timestamp t : result.spec.times) axis += "|" + url_encode(format_iso8601(t));
    return "cht=lc&chd=t:" + data + "&chdl=" + labels + "&chxl=0:" + axis;
}

}  // namespace memento
