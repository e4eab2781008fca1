#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memento/archive.hpp"
#include "memento/link_header.hpp"
#include "memento/temporal.hpp"

namespace memento {

struct NegotiationRequest {
    std::string subject;
    std::optional<Timestamp> accept_datetime;
    bool explicit_negotiate = false;  // "Negotiate: 1.0"
    std::vector<std::string> accept_media;
};

/// Outcome of datetime conneg. The http layer turns these into 302/300/406.
struct NegotiationDecision {
    enum class Kind { RedirectToMemento, RedirectToOriginal, MultipleChoices, NotAcceptable };
    Kind kind = Kind::NotAcceptable;
    std::string subject;
    std::optional<MementoRecord> record;        // RedirectToMemento
    std::vector<MementoRecord> candidates;      // MultipleChoices, ascending start
    std::optional<Interval> known_range;        // NotAcceptable: [earliest, latest snapshot]
};

// Decision rules, in precedence order: explicit negotiate lists all
// versions; no Accept-Datetime redirects to the most recent memento;
// otherwise the archive lookup picks redirect-to-original (current range),
// not-acceptable (pre-range) or the covering memento.
NegotiationDecision negotiate(const Archive& archive, const NegotiationRequest& req);

// Link set for a redirect decision: original + first/last and any prev/next
// for a memento target; timegate + timebundle when sent back to the
// original. Memento links carry a datetime parameter.
std::vector<LinkEntry> decision_links(const Archive& archive,
                                      const NegotiationDecision& decision);

}  // namespace memento
