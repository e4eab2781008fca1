#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "memento/archive.hpp"
#include "memento/temporal.hpp"

namespace memento {

/// Description of a TimeBundle: every memento with its validity period,
/// plus the original resource and its TimeGate.
struct TimeMapDoc {
    struct MementoEntry {
        std::string uri;
        Interval period;  // end always present

        bool operator==(const MementoEntry&) const = default;
    };

    std::string timemap_uri;
    std::string timebundle_uri;
    std::string original;
    std::string timegate;
    Interval covers;  // hull of the periods, end = latest snapshot date
    std::vector<MementoEntry> mementos;  // ascending by start
    Timestamp created;
    Timestamp modified;

    bool operator==(const TimeMapDoc&) const = default;
};

// Assembled from the archive's version list; throws UnknownSubject when the
// subject has no memento records.
TimeMapDoc build_timemap(const Archive& archive, const std::string& subject);

// Deterministic RDF/XML with inline Period nodes, xsd:dateTime literals
// emitted with a trailing "Z".
std::string serialize_rdfxml(const TimeMapDoc& doc);

struct ParsedTimeMap {
    TimeMapDoc doc;
    std::vector<std::string> warnings;  // e.g. inverted periods that got swapped
};

// Accepts inline Periods and rdf:nodeID indirection; a Period with
// start > end is swapped and reported as a warning, never an error.
// Throws MalformedTimeMap with the offending element.
ParsedTimeMap parse_rdfxml(std::string_view bytes);

}  // namespace memento
