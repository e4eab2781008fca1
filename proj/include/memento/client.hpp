#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memento/errors.hpp"
#include "memento/link_header.hpp"
#include "memento/temporal.hpp"

namespace memento {

class NoTimeGate : public Error {
public:
    explicit NoTimeGate(const std::string& uri) : Error("no timegate link on " + uri) {}
};

class NoOriginalLink : public Error {
public:
    explicit NoOriginalLink(const std::string& uri) : Error("no original link on " + uri) {}
};

class TransportError : public Error {
public:
    explicit TransportError(const std::string& why) : Error("transport error: " + why) {}
};

class TooManyRedirects : public Error {
public:
    explicit TooManyRedirects(const std::string& uri)
        : Error("too many redirects fetching " + uri) {}
};

class OutOfRange : public Error {
public:
    explicit OutOfRange(const std::string& range) : Error("406: " + range), range_(range) {}
    const std::string& server_range() const { return range_; }

private:
    std::string range_;
};

struct MementoResponse {
    std::string final_uri;
    std::string body;
    std::string media_type;
    std::optional<Timestamp> content_datetime;  // set iff a memento answered
    std::vector<LinkEntry> links;
    int hops = 0;
    // Requested instant past the returned version's apparent validity
    // (gap-rule answer); informational only.
    bool gap_warning = false;
};

/// Follow-your-nose Memento client: discovers the TimeGate from the Link
/// header, negotiates with Accept-Datetime and walks redirects.
class Client {
public:
    explicit Client(int max_hops = 5) : max_hops_(max_hops) {}

    // Target of the first rel="timegate" link on a HEAD (GET fallback).
    std::string discover_timegate(const std::string& uri) const;

    MementoResponse fetch_at(const std::string& uri, Timestamp t,
                             const std::string& media = "application/n-triples") const;

    // Plain GET without datetime negotiation, redirects followed.
    MementoResponse get(const std::string& uri,
                        const std::string& media = "application/n-triples") const;

    // Resolve the original from a memento's Link set, then fetch_at.
    MementoResponse renavigate(const std::string& memento_uri, Timestamp t,
                               const std::string& media = "application/n-triples") const;

private:
    struct RawResponse {
        int status = 0;
        std::string body;
        std::string media_type;
        std::string location;
        std::string content_datetime;
        std::vector<LinkEntry> links;
    };
    RawResponse request(const std::string& method, const std::string& uri,
                        const std::vector<std::pair<std::string, std::string>>& headers) const;

    MementoResponse follow(const std::string& start_uri, std::optional<Timestamp> t,
                           const std::string& media) const;

    int max_hops_;
};

}  // namespace memento
