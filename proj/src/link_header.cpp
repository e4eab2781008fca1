#include "memento/link_header.hpp"

#include <cctype>

#include "memento/errors.hpp"

namespace memento {
namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

// token or quoted-string
std::string read_param_value(std::string_view s, std::size_t& i) {
    std::string out;
    if (i < s.size() && s[i] == '"') {
        ++i;
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\' && i + 1 < s.size()) ++i;
            out += s[i++];
        }
        if (i >= s.size()) throw MalformedLink("unterminated quoted-string");
        ++i;
    } else {
        while (i < s.size() && s[i] != ';' && s[i] != ',' && s[i] != ' ' && s[i] != '\t')
            out += s[i++];
    }
    return out;
}

}  // namespace

LinkRelation LinkRelation::from_token(std::string_view raw) { return {to_lower(raw)}; }

std::vector<LinkEntry> parse_link_header(std::string_view raw) {
    std::vector<LinkEntry> entries;
    std::size_t i = 0;
    while (true) {
        skip_ws(raw, i);
        while (i < raw.size() && raw[i] == ',') {
            ++i;
            skip_ws(raw, i);
        }
        if (i >= raw.size()) break;
        if (raw[i] != '<') throw MalformedLink("expected '<' at position " + std::to_string(i));
        auto close = raw.find('>', i);
        if (close == std::string_view::npos) throw MalformedLink("missing '>'");
        LinkEntry entry;
        entry.target = std::string(raw.substr(i + 1, close - i - 1));
        i = close + 1;
        skip_ws(raw, i);
        while (i < raw.size() && raw[i] == ';') {
            ++i;
            skip_ws(raw, i);
            std::string name;
            while (i < raw.size() && raw[i] != '=' && raw[i] != ';' && raw[i] != ',' &&
                   raw[i] != ' ' && raw[i] != '\t')
                name += raw[i++];
            if (name.empty()) throw MalformedLink("empty parameter name");
            skip_ws(raw, i);
            std::string value;
            if (i < raw.size() && raw[i] == '=') {
                ++i;
                skip_ws(raw, i);
                value = read_param_value(raw, i);
            }
            skip_ws(raw, i);
            if (to_lower(name) == "rel") {
                if (!entry.rels.empty()) continue;  // first rel wins
                std::size_t p = 0;
                while (p < value.size()) {
                    while (p < value.size() && value[p] == ' ') ++p;
                    std::size_t e = p;
                    while (e < value.size() && value[e] != ' ') ++e;
                    if (e > p) entry.rels.push_back(LinkRelation::from_token(
                        std::string_view(value).substr(p, e - p)));
                    p = e;
                }
            } else {
                entry.params.emplace_back(to_lower(name), value);
            }
        }
        if (entry.rels.empty()) throw MalformedLink("link without rel: <" + entry.target + ">");
        entries.push_back(std::move(entry));
        skip_ws(raw, i);
        if (i < raw.size() && raw[i] != ',')
            throw MalformedLink("unexpected character at position " + std::to_string(i));
    }
    return entries;
}

std::string format_link_header(const std::vector<LinkEntry>& entries) {
    std::string out;
    for (const auto& entry : entries) {
        if (!out.empty()) out += ", ";
        out += '<';
        out += entry.target;
        out += ">; rel=\"";
        for (std::size_t r = 0; r < entry.rels.size(); ++r) {
            if (r) out += ' ';
            out += entry.rels[r].token;
        }
        out += '"';
        for (const auto& [name, value] : entry.params) {
            out += "; ";
            out += name;
            out += "=\"";
            for (char c : value) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
        }
    }
    return out;
}

std::optional<std::string> find_rel(const std::vector<LinkEntry>& entries,
                                    const LinkRelation& rel) {
    for (const auto& entry : entries)
        for (const auto& r : entry.rels)
            if (r == rel) return entry.target;
    return std::nullopt;
}

}  // namespace memento
