#include "memento/timemap.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "memento/errors.hpp"
#include "memento/xml.hpp"

namespace memento {
namespace {

const std::string kMem = "http://www.mementoweb.org/terms/tb/";
const std::string kOre = "http://www.openarchives.org/ore/terms/";
const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
const std::string kDcTerms = "http://purl.org/dc/terms/";
const std::string kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";

using NsMap = std::map<std::string, std::string>;

NsMap with_decls(const XmlNode& node, NsMap nsmap) {
    for (const auto& [k, v] : node.attrs) {
        if (k == "xmlns")
            nsmap[""] = v;
        else if (k.rfind("xmlns:", 0) == 0)
            nsmap[k.substr(6)] = v;
    }
    return nsmap;
}

std::string expand(const std::string& name, const NsMap& nsmap) {
    auto colon = name.find(':');
    std::string prefix = colon == std::string::npos ? "" : name.substr(0, colon);
    std::string local = colon == std::string::npos ? name : name.substr(colon + 1);
    auto it = nsmap.find(prefix);
    if (it == nsmap.end()) return local;
    return it->second + local;
}

struct PeriodRaw {
    Timestamp start;
    Timestamp end;
};

class TimeMapReader {
public:
    ParsedTimeMap read(const XmlNode& root) {
        NsMap nsmap = with_decls(root, {});
        if (expand(root.name, nsmap) != kRdf + "RDF")
            throw MalformedTimeMap("document element is not rdf:RDF");

        collect_periods(root, nsmap);
        for (const auto& child : root.children) visit(child, nsmap);

        if (out_.doc.timemap_uri.empty()) throw MalformedTimeMap("no mem:TimeMap node");
        if (out_.doc.timegate.empty()) throw MalformedTimeMap("no mem:TimeGate node");
        if (out_.doc.mementos.empty()) throw MalformedTimeMap("no mem:Memento nodes");
        if (!has_covers_) throw MalformedTimeMap("TimeGate without mem:covers");

        std::sort(out_.doc.mementos.begin(), out_.doc.mementos.end(),
                  [](const auto& a, const auto& b) { return a.period.start < b.period.start; });
        return std::move(out_);
    }

private:
    ParsedTimeMap out_;
    std::map<std::string, PeriodRaw> periods_by_node_id_;
    bool has_covers_ = false;

    static Timestamp read_datetime(const XmlNode& node, const std::string& where) {
        try {
            return parse_iso8601(node.text);
        } catch (const MalformedDate&) {
            throw MalformedTimeMap(where + ": bad xsd:dateTime \"" + node.text + "\"");
        }
    }

    PeriodRaw read_period(const XmlNode& node, const NsMap& outer, const std::string& where) {
        NsMap nsmap = with_decls(node, outer);
        std::optional<Timestamp> start, end;
        for (const auto& child : node.children) {
            auto name = expand(child.name, with_decls(child, nsmap));
            if (name == kMem + "start") start = read_datetime(child, where);
            if (name == kMem + "end") end = read_datetime(child, where);
        }
        if (!start || !end) throw MalformedTimeMap(where + ": Period missing start or end");
        return {*start, *end};
    }

    // nodeID-addressed Periods can appear anywhere in the document.
    void collect_periods(const XmlNode& node, const NsMap& outer) {
        NsMap nsmap = with_decls(node, outer);
        if (expand(node.name, nsmap) == kMem + "Period") {
            if (const auto* node_id = node.attr("rdf:nodeID"))
                periods_by_node_id_[*node_id] = read_period(node, nsmap, "mem:Period " + *node_id);
        }
        for (const auto& child : node.children) collect_periods(child, nsmap);
    }

    Interval normalized(PeriodRaw p, const std::string& where) {
        if (p.end < p.start) {
            std::swap(p.start, p.end);
            out_.warnings.push_back("swapped inverted period on " + where);
        }
        if (p.start == p.end) throw MalformedTimeMap(where + ": empty period");
        return Interval{p.start, p.end};
    }

    // Inline Period child, or rdf:nodeID reference on the property element.
    Interval period_of_property(const XmlNode& prop, const NsMap& nsmap,
                                const std::string& where) {
        if (const auto* node_id = prop.attr("rdf:nodeID")) {
            auto it = periods_by_node_id_.find(*node_id);
            if (it == periods_by_node_id_.end())
                throw MalformedTimeMap(where + ": dangling rdf:nodeID " + *node_id);
            return normalized(it->second, where);
        }
        for (const auto& child : prop.children) {
            if (expand(child.name, with_decls(child, nsmap)) == kMem + "Period")
                return normalized(read_period(child, nsmap, where), where);
        }
        throw MalformedTimeMap(where + ": no Period");
    }

    static std::string resource_of(const XmlNode& prop) {
        if (const auto* r = prop.attr("rdf:resource")) return *r;
        for (const auto& child : prop.children)
            if (const auto* about = child.attr("rdf:about")) return *about;
        return "";
    }

    std::vector<std::string> types_of(const XmlNode& node, const NsMap& nsmap) {
        std::vector<std::string> types;
        std::string name = expand(node.name, nsmap);
        if (name != kRdf + "Description") types.push_back(name);
        for (const auto& child : node.children) {
            if (expand(child.name, with_decls(child, nsmap)) == kRdf + "type")
                if (const auto* r = child.attr("rdf:resource")) types.push_back(*r);
        }
        return types;
    }

    static bool has_type(const std::vector<std::string>& types, const std::string& t) {
        return std::find(types.begin(), types.end(), t) != types.end();
    }

    void visit(const XmlNode& node, const NsMap& outer) {
        NsMap nsmap = with_decls(node, outer);
        auto types = types_of(node, nsmap);

        if (has_type(types, kOre + "ResourceMap") || has_type(types, kMem + "TimeMap")) {
            if (const auto* about = node.attr("rdf:about")) out_.doc.timemap_uri = *about;
            for (const auto& child : node.children) {
                auto name = expand(child.name, with_decls(child, nsmap));
                if (name == kDcTerms + "created")
                    out_.doc.created = read_datetime(child, "dcterms:created");
                else if (name == kDcTerms + "modified")
                    out_.doc.modified = read_datetime(child, "dcterms:modified");
                else if (name == kOre + "describes")
                    for (const auto& agg : child.children) visit(agg, nsmap);
            }
            return;
        }

        if (has_type(types, kOre + "Aggregation") || has_type(types, kMem + "TimeBundle")) {
            if (const auto* about = node.attr("rdf:about")) out_.doc.timebundle_uri = *about;
            return;
        }

        if (has_type(types, kMem + "TimeGate")) {
            const auto* about = node.attr("rdf:about");
            if (!about) throw MalformedTimeMap("mem:TimeGate without rdf:about");
            out_.doc.timegate = *about;
            for (const auto& child : node.children) {
                auto name = expand(child.name, with_decls(child, nsmap));
                if (name == kMem + "timeGateFor") out_.doc.original = resource_of(child);
                if (name == kMem + "covers") {
                    out_.doc.covers = period_of_property(child, nsmap, "mem:TimeGate covers");
                    has_covers_ = true;
                }
            }
            return;
        }

        if (has_type(types, kMem + "Memento")) {
            const auto* about = node.attr("rdf:about");
            if (!about) throw MalformedTimeMap("mem:Memento without rdf:about");
            TimeMapDoc::MementoEntry entry;
            entry.uri = *about;
            bool has_for = false, has_period = false;
            for (const auto& child : node.children) {
                auto name = expand(child.name, with_decls(child, nsmap));
                if (name == kMem + "mementoFor") {
                    has_for = !resource_of(child).empty();
                    if (out_.doc.original.empty()) out_.doc.original = resource_of(child);
                }
                if (name == kMem + "validOver") {
                    entry.period =
                        period_of_property(child, nsmap, "mem:Memento " + entry.uri);
                    has_period = true;
                }
            }
            if (!has_for)
                throw MalformedTimeMap("mem:Memento " + entry.uri + ": missing mem:mementoFor");
            if (!has_period)
                throw MalformedTimeMap("mem:Memento " + entry.uri + ": missing mem:validOver");
            out_.doc.mementos.push_back(std::move(entry));
            return;
        }
    }
};

}  // namespace

TimeMapDoc build_timemap(const Archive& archive, const std::string& subject) {
    auto versions = archive.list_versions(subject);
    if (versions.empty()) throw UnknownSubject(subject);

    TimeMapDoc doc;
    const std::string& base = archive.base_url();
    doc.timemap_uri = base + "/timemap/rdf/" + subject;
    doc.timebundle_uri = base + "/timebundle/" + subject;
    doc.original = subject;
    doc.timegate = base + "/timegate/" + subject;
    doc.covers = {versions.front().interval.start, archive.latest_snapshot_date()};
    for (const auto& rec : versions)
        doc.mementos.push_back({rec.memento_uri, {rec.interval.start, *rec.interval.end}});
    doc.created = archive.created_at();
    doc.modified = archive.created_at();
    return doc;
}

std::string serialize_rdfxml(const TimeMapDoc& doc) {
    std::ostringstream out;
    auto period = [&](const Interval& iv, const char* indent) {
        out << indent << "<mem:Period>\n"
            << indent << "  <mem:start rdf:datatype=\"" << kXsdDateTime << "\">"
            << format_iso8601(iv.start) << "</mem:start>\n"
            << indent << "  <mem:end rdf:datatype=\"" << kXsdDateTime << "\">"
            << format_iso8601(*iv.end) << "</mem:end>\n"
            << indent << "</mem:Period>\n";
    };

    out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
        << "<rdf:RDF\n"
        << "  xmlns:dcterms='" << kDcTerms << "'\n"
        << "  xmlns:mem='" << kMem << "'\n"
        << "  xmlns:dc='http://purl.org/dc/elements/1.1/'\n"
        << "  xmlns:rdf='" << kRdf << "'\n"
        << "  xmlns:ore='" << kOre << "'>\n";

    out << "<ore:ResourceMap rdf:about=\"" << xml_escape(doc.timemap_uri) << "\">\n"
        << "  <rdf:type rdf:resource=\"" << kMem << "TimeMap\"/>\n"
        << "  <dcterms:created>" << format_iso8601(doc.created) << "</dcterms:created>\n"
        << "  <dcterms:modified>" << format_iso8601(doc.modified) << "</dcterms:modified>\n"
        << "  <dc:format>application/rdf+xml</dc:format>\n"
        << "  <ore:describes>\n"
        << "    <ore:Aggregation rdf:about=\"" << xml_escape(doc.timebundle_uri) << "\">\n"
        << "      <rdf:type rdf:resource=\"" << kMem << "TimeBundle\"/>\n"
        << "      <dc:title>Memento Time Bundle for " << xml_escape(doc.original)
        << "</dc:title>\n";
    for (const auto& m : doc.mementos)
        out << "      <ore:aggregates rdf:resource=\"" << xml_escape(m.uri) << "\"/>\n";
    out << "      <ore:aggregates rdf:resource=\"" << xml_escape(doc.timegate) << "\"/>\n"
        << "      <ore:aggregates rdf:resource=\"" << xml_escape(doc.original) << "\"/>\n"
        << "    </ore:Aggregation>\n"
        << "  </ore:describes>\n"
        << "</ore:ResourceMap>\n";

    out << "<mem:TimeGate rdf:about=\"" << xml_escape(doc.timegate) << "\">\n"
        << "  <mem:timeGateFor rdf:resource=\"" << xml_escape(doc.original) << "\"/>\n"
        << "  <mem:covers>\n";
    period(doc.covers, "    ");
    out << "  </mem:covers>\n"
        << "</mem:TimeGate>\n";

    out << "<mem:OriginalResource rdf:about=\"" << xml_escape(doc.original) << "\"/>\n";

    for (const auto& m : doc.mementos) {
        out << "<mem:Memento rdf:about=\"" << xml_escape(m.uri) << "\">\n"
            << "  <mem:mementoFor rdf:resource=\"" << xml_escape(doc.original) << "\"/>\n"
            << "  <mem:validOver>\n";
        period(m.period, "    ");
        out << "  </mem:validOver>\n"
            << "</mem:Memento>\n";
    }

    out << "</rdf:RDF>\n";
    return out.str();
}

ParsedTimeMap parse_rdfxml(std::string_view bytes) {
    XmlNode root;
    try {
        root = parse_xml(bytes);
    } catch (const Error& e) {
        throw MalformedTimeMap(e.what());
    }
    return TimeMapReader().read(root);
}

}  // namespace memento
