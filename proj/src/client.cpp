#include "memento/client.hpp"

#include <httplib.h>

#include "memento/uri.hpp"

namespace memento {

Client::RawResponse Client::request(
    const std::string& method, const std::string& uri,
    const std::vector<std::pair<std::string, std::string>>& headers) const {
    auto parts = split_uri(uri);
    if (!parts) throw TransportError("not an absolute URI: " + uri);

    httplib::Client cli(parts->origin);
    cli.set_follow_location(false);
    httplib::Headers hdrs(headers.begin(), headers.end());
    httplib::Result result =
        method == "HEAD" ? cli.Head(parts->path, hdrs) : cli.Get(parts->path, hdrs);
    if (!result) throw TransportError(uri + ": " + httplib::to_string(result.error()));

    RawResponse out;
    out.status = result->status;
    out.body = result->body;
    out.media_type = result->get_header_value("Content-Type");
    out.location = result->get_header_value("Location");
    out.content_datetime = result->get_header_value("Content-Datetime");
    // Link may repeat; every value contributes entries.
    auto count = result->get_header_value_count("Link");
    for (std::size_t i = 0; i < count; ++i) {
        auto parsed = parse_link_header(result->get_header_value("Link", i));
        out.links.insert(out.links.end(), parsed.begin(), parsed.end());
    }
    return out;
}

std::string Client::discover_timegate(const std::string& uri) const {
    RawResponse res;
    try {
        res = request("HEAD", uri, {});
        if (res.status == 404 || res.links.empty()) res = request("GET", uri, {});
    } catch (const TransportError&) {
        res = request("GET", uri, {});
    }
    if (auto tg = find_rel(res.links, LinkRelation::timegate())) return *tg;
    throw NoTimeGate(uri);
}

MementoResponse Client::follow(const std::string& start_uri, std::optional<Timestamp> t,
                               const std::string& media) const {
    std::vector<std::pair<std::string, std::string>> headers = {{"Accept", media}};
    if (t) headers.emplace_back("Accept-Datetime", format_http_date(*t));
    std::string uri = start_uri;
    int hops = 0;
    while (true) {
        RawResponse res = request("GET", uri, headers);
        if (res.status == 302 || res.status == 303 || res.status == 301 || res.status == 307) {
            if (res.location.empty()) throw TransportError("redirect without Location at " + uri);
            if (++hops > max_hops_) throw TooManyRedirects(start_uri);
            uri = res.location;
            continue;
        }
        if (res.status == 406) {
            std::string range = res.body;
            while (!range.empty() && (range.back() == '\n' || range.back() == '\r'))
                range.pop_back();
            throw OutOfRange(range);
        }
        if (res.status != 200)
            throw TransportError(uri + ": unexpected status " + std::to_string(res.status));

        MementoResponse out;
        out.final_uri = uri;
        out.body = std::move(res.body);
        out.media_type = res.media_type;
        out.links = std::move(res.links);
        out.hops = hops;
        if (!res.content_datetime.empty())
            out.content_datetime = parse_http_date(res.content_datetime);
        // Detect gap-rule answers: the next memento started at or before the
        // instant we asked for, so the returned version's validity had ended.
        if (out.content_datetime && t) {
            for (const auto& entry : out.links) {
                for (const auto& rel : entry.rels) {
                    if (rel == LinkRelation::next_memento()) {
                        for (const auto& [name, value] : entry.params) {
                            if (name == "datetime" && parse_http_date(value) <= *t)
                                out.gap_warning = true;
                        }
                    }
                }
            }
        }
        return out;
    }
}

MementoResponse Client::fetch_at(const std::string& uri, Timestamp t,
                                 const std::string& media) const {
    return follow(discover_timegate(uri), t, media);
}

MementoResponse Client::get(const std::string& uri, const std::string& media) const {
    return follow(uri, std::nullopt, media);
}

MementoResponse Client::renavigate(const std::string& memento_uri, Timestamp t,
                                   const std::string& media) const {
    RawResponse res = request("GET", memento_uri, {});
    auto original = find_rel(res.links, LinkRelation::original());
    if (!original) throw NoOriginalLink(memento_uri);
    return fetch_at(*original, t, media);
}

}  // namespace memento
