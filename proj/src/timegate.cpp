#include "memento/timegate.hpp"

#include "memento/errors.hpp"

namespace memento {

NegotiationDecision negotiate(const Archive& archive, const NegotiationRequest& req) {
    if (!archive.known_subject(req.subject)) throw UnknownSubject(req.subject);
    auto versions = archive.list_versions(req.subject);

    NegotiationDecision d;
    d.subject = req.subject;

    // The client asked for the choice list; that overrides everything else.
    if (req.explicit_negotiate) {
        d.kind = NegotiationDecision::Kind::MultipleChoices;
        d.candidates = versions;
        return d;
    }

    if (!req.accept_datetime) {
        if (versions.empty()) {
            d.kind = NegotiationDecision::Kind::RedirectToOriginal;
        } else {
            d.kind = NegotiationDecision::Kind::RedirectToMemento;
            d.record = versions.back();
        }
        return d;
    }

    auto result = archive.lookup(req.subject, *req.accept_datetime);
    switch (result.kind) {
        case LookupResult::Kind::Current:
            d.kind = NegotiationDecision::Kind::RedirectToOriginal;
            break;
        case LookupResult::Kind::OutOfRange: {
            d.kind = NegotiationDecision::Kind::NotAcceptable;
            Timestamp earliest =
                versions.empty() ? archive.latest_snapshot_date() : versions.front().interval.start;
            d.known_range = Interval{earliest, archive.latest_snapshot_date()};
            break;
        }
        case LookupResult::Kind::Memento: {
            // Snapshot dates are unique per archive, but guard anyway: several
            // records sharing the selected Content-Datetime means 300.
            std::vector<MementoRecord> same;
            for (const auto& v : versions)
                if (v.interval.start == result.record->interval.start) same.push_back(v);
            if (same.size() > 1) {
                d.kind = NegotiationDecision::Kind::MultipleChoices;
                d.candidates = std::move(same);
            } else {
                d.kind = NegotiationDecision::Kind::RedirectToMemento;
                d.record = result.record;
            }
            break;
        }
    }
    return d;
}

std::vector<LinkEntry> decision_links(const Archive& archive,
                                      const NegotiationDecision& decision) {
    std::vector<LinkEntry> links;
    auto memento_entry = [](const MementoRecord& rec, LinkRelation rel) {
        LinkEntry e{rec.memento_uri, {rel}, {}};
        e.params.emplace_back("datetime", format_http_date(rec.interval.start));
        return e;
    };

    if (decision.kind == NegotiationDecision::Kind::RedirectToMemento) {
        const auto& rec = *decision.record;
        links.push_back({decision.subject, {LinkRelation::original()}, {}});
        auto n = archive.neighbors(decision.subject, rec);
        links.push_back(memento_entry(n.first, LinkRelation::first_memento()));
        links.push_back(memento_entry(n.last, LinkRelation::last_memento()));
        if (n.prev) links.push_back(memento_entry(*n.prev, LinkRelation::prev_memento()));
        if (n.next) links.push_back(memento_entry(*n.next, LinkRelation::next_memento()));
    } else if (decision.kind == NegotiationDecision::Kind::RedirectToOriginal) {
        links.push_back(
            {archive.base_url() + "/timegate/" + decision.subject, {LinkRelation::timegate()}, {}});
        links.push_back({archive.base_url() + "/timebundle/" + decision.subject,
                         {LinkRelation::timebundle()},
                         {}});
    }
    return links;
}

}  // namespace memento
