#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace memento {

/// A link relation token, canonical lowercase. Known Memento relations get
/// named constructors; anything else is kept verbatim as an extension token.
struct LinkRelation {
    std::string token;

    static LinkRelation timegate() { return {"timegate"}; }
    static LinkRelation timebundle() { return {"timebundle"}; }
    static LinkRelation original() { return {"original"}; }
    static LinkRelation first_memento() { return {"first-memento"}; }
    static LinkRelation last_memento() { return {"last-memento"}; }
    static LinkRelation prev_memento() { return {"prev-memento"}; }
    static LinkRelation next_memento() { return {"next-memento"}; }

    // Case-insensitive input, canonical lowercase out.
    static LinkRelation from_token(std::string_view raw);

    bool operator==(const LinkRelation&) const = default;
};

struct LinkEntry {
    std::string target;                                        // absolute URI
    std::vector<LinkRelation> rels;                            // non-empty
    std::vector<std::pair<std::string, std::string>> params;   // order preserved, rel excluded

    bool operator==(const LinkEntry&) const = default;
};

// Full Link header value, possibly several comma-separated links.
// Throws MalformedLink on unbalanced brackets or a link without rel.
std::vector<LinkEntry> parse_link_header(std::string_view raw);

std::string format_link_header(const std::vector<LinkEntry>& entries);

// First target carrying rel, in header order.
std::optional<std::string> find_rel(const std::vector<LinkEntry>& entries,
                                    const LinkRelation& rel);

}  // namespace memento
