#include "memento/xml.hpp"

#include <cctype>

#include "memento/errors.hpp"

namespace memento {
namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    bool eof() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    bool starts_with(std::string_view p) const { return s.substr(i, p.size()) == p; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw Error("xml parse error at offset " + std::to_string(i) + ": " + why);
    }
};

std::string decode_entities(Cursor& c, std::string_view raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '&') {
            out += raw[i];
            continue;
        }
        auto semi = raw.find(';', i);
        if (semi == std::string_view::npos) c.fail("unterminated entity");
        std::string_view ent = raw.substr(i + 1, semi - i - 1);
        if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "amp") out += '&';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else c.fail("unknown entity &" + std::string(ent) + ";");
        i = semi;
    }
    return out;
}

std::string read_name(Cursor& c) {
    std::size_t start = c.i;
    while (!c.eof()) {
        char ch = c.peek();
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == ':' || ch == '_' || ch == '-' ||
            ch == '.')
            ++c.i;
        else
            break;
    }
    if (c.i == start) c.fail("expected name");
    return std::string(c.s.substr(start, c.i - start));
}

void skip_misc(Cursor& c) {
    while (true) {
        c.skip_ws();
        if (c.starts_with("<!--")) {
            auto end = c.s.find("-->", c.i);
            if (end == std::string_view::npos) c.fail("unterminated comment");
            c.i = end + 3;
        } else if (c.starts_with("<?")) {
            auto end = c.s.find("?>", c.i);
            if (end == std::string_view::npos) c.fail("unterminated processing instruction");
            c.i = end + 2;
        } else {
            return;
        }
    }
}

XmlNode parse_element(Cursor& c) {
    if (c.eof() || c.peek() != '<') c.fail("expected element");
    ++c.i;
    XmlNode node;
    node.name = read_name(c);
    while (true) {
        c.skip_ws();
        if (c.eof()) c.fail("unterminated start tag");
        if (c.starts_with("/>")) {
            c.i += 2;
            return node;
        }
        if (c.peek() == '>') {
            ++c.i;
            break;
        }
        std::string attr = read_name(c);
        c.skip_ws();
        if (c.eof() || c.peek() != '=') c.fail("expected '=' after attribute " + attr);
        ++c.i;
        c.skip_ws();
        if (c.eof() || (c.peek() != '"' && c.peek() != '\'')) c.fail("expected quoted value");
        char q = c.peek();
        ++c.i;
        auto end = c.s.find(q, c.i);
        if (end == std::string_view::npos) c.fail("unterminated attribute value");
        node.attrs.emplace_back(attr, decode_entities(c, c.s.substr(c.i, end - c.i)));
        c.i = end + 1;
    }
    // content
    while (true) {
        if (c.eof()) c.fail("unterminated element <" + node.name + ">");
        if (c.starts_with("</")) {
            c.i += 2;
            std::string closing = read_name(c);
            if (closing != node.name)
                c.fail("mismatched close tag </" + closing + "> for <" + node.name + ">");
            c.skip_ws();
            if (c.eof() || c.peek() != '>') c.fail("malformed close tag");
            ++c.i;
            return node;
        }
        if (c.starts_with("<!--")) {
            auto end = c.s.find("-->", c.i);
            if (end == std::string_view::npos) c.fail("unterminated comment");
            c.i = end + 3;
        } else if (c.peek() == '<') {
            node.children.push_back(parse_element(c));
        } else {
            std::size_t start = c.i;
            while (!c.eof() && c.peek() != '<') ++c.i;
            node.text += decode_entities(c, c.s.substr(start, c.i - start));
        }
    }
}

}  // namespace

const std::string* XmlNode::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs)
        if (k == name) return &v;
    return nullptr;
}

XmlNode parse_xml(std::string_view input) {
    Cursor c{input};
    skip_misc(c);
    XmlNode root = parse_element(c);
    skip_misc(c);
    if (!c.eof()) c.fail("content after document element");
    return root;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace memento
