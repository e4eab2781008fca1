#include "memento/ntriples.hpp"

#include <cstdio>
#include <sstream>

#include "memento/errors.hpp"

namespace memento {
namespace {

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

std::string read_iri(const std::string& s, std::size_t& i, std::size_t lineno) {
    if (i >= s.size() || s[i] != '<') throw NtSyntaxError(lineno, "expected IRI");
    auto close = s.find('>', i);
    if (close == std::string::npos) throw NtSyntaxError(lineno, "unterminated IRI");
    std::string iri = s.substr(i + 1, close - i - 1);
    if (iri.empty()) throw NtSyntaxError(lineno, "empty IRI");
    i = close + 1;
    return iri;
}

std::string read_quoted(const std::string& s, std::size_t& i, std::size_t lineno) {
    std::string out;
    ++i;  // opening quote
    while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\') {
            if (i + 1 >= s.size()) throw NtSyntaxError(lineno, "dangling escape");
            char e = s[++i];
            switch (e) {
                case 't': out += '\t'; break;
                case 'b': out += '\b'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 'f': out += '\f'; break;
                case '"': out += '"'; break;
                case '\'': out += '\''; break;
                case '\\': out += '\\'; break;
                case 'u':
                case 'U': {
                    std::size_t n = e == 'u' ? 4 : 8;
                    if (i + n >= s.size()) throw NtSyntaxError(lineno, "truncated \\u escape");
                    unsigned long cp = 0;
                    for (std::size_t k = 1; k <= n; ++k) {
                        char h = s[i + k];
                        int v = h >= '0' && h <= '9'   ? h - '0'
                                : h >= 'a' && h <= 'f' ? h - 'a' + 10
                                : h >= 'A' && h <= 'F' ? h - 'A' + 10
                                                       : -1;
                        if (v < 0) throw NtSyntaxError(lineno, "bad hex digit in escape");
                        cp = cp * 16 + static_cast<unsigned long>(v);
                    }
                    append_utf8(out, cp);
                    i += n;
                    break;
                }
                default:
                    throw NtSyntaxError(lineno, std::string("unknown escape \\") + e);
            }
            ++i;
        } else {
            out += s[i++];
        }
    }
    if (i >= s.size()) throw NtSyntaxError(lineno, "unterminated literal");
    ++i;  // closing quote
    return out;
}

std::string read_blank_label(const std::string& s, std::size_t& i) {
    std::size_t start = i + 2;
    std::size_t e = start;
    while (e < s.size() && s[e] != ' ' && s[e] != '\t' && s[e] != '.') ++e;
    std::string label = s.substr(start, e - start);
    i = e;
    return label;
}

void escape_into(std::string& out, const std::string& value) {
    for (char c : value) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
}

}  // namespace

Triple parse_ntriples_line(const std::string& line, std::size_t lineno) {
    Triple t;
    std::size_t i = 0;
    skip_ws(line, i);
    if (i < line.size() && line.compare(i, 2, "_:") == 0)
        throw NtSyntaxError(lineno, "blank-node subject not allowed");
    t.subject = read_iri(line, i, lineno);
    skip_ws(line, i);
    t.predicate = read_iri(line, i, lineno);
    skip_ws(line, i);
    if (i >= line.size()) throw NtSyntaxError(lineno, "missing object");
    if (line[i] == '<') {
        t.object = {Term::Kind::Iri, read_iri(line, i, lineno), "", ""};
    } else if (line[i] == '"') {
        Term obj;
        obj.kind = Term::Kind::Literal;
        obj.lexical = read_quoted(line, i, lineno);
        if (i < line.size() && line[i] == '@') {
            std::size_t e = ++i;
            while (e < line.size() && line[e] != ' ' && line[e] != '\t' && line[e] != '.') ++e;
            obj.lang = line.substr(i, e - i);
            if (obj.lang.empty()) throw NtSyntaxError(lineno, "empty language tag");
            i = e;
        } else if (i + 1 < line.size() && line[i] == '^' && line[i + 1] == '^') {
            i += 2;
            obj.datatype = read_iri(line, i, lineno);
        }
        t.object = std::move(obj);
    } else if (line.compare(i, 2, "_:") == 0) {
        Term obj;
        obj.kind = Term::Kind::Blank;
        obj.lexical = read_blank_label(line, i);
        if (obj.lexical.empty()) throw NtSyntaxError(lineno, "empty blank-node label");
        t.object = std::move(obj);
    } else {
        throw NtSyntaxError(lineno, "missing object");
    }
    skip_ws(line, i);
    if (i >= line.size() || line[i] != '.') throw NtSyntaxError(lineno, "missing terminating '.'");
    ++i;
    skip_ws(line, i);
    if (i != line.size()) throw NtSyntaxError(lineno, "trailing content after '.'");
    return t;
}

std::optional<Triple> NTriplesParser::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = 0;
        skip_ws(line, i);
        if (i == line.size() || line[i] == '#') continue;
        try {
            return parse_ntriples_line(line, line_);
        } catch (const NtSyntaxError&) {
            if (strict_) throw;
            ++skipped_;
        }
    }
    return std::nullopt;
}

std::string serialize_triple(const Triple& t) {
    std::string out = "<" + t.subject + "> <" + t.predicate + "> ";
    switch (t.object.kind) {
        case Term::Kind::Iri:
            out += "<" + t.object.lexical + ">";
            break;
        case Term::Kind::Blank:
            out += "_:" + t.object.lexical;
            break;
        case Term::Kind::Literal:
            out += '"';
            escape_into(out, t.object.lexical);
            out += '"';
            if (!t.object.lang.empty())
                out += "@" + t.object.lang;
            else if (!t.object.datatype.empty())
                out += "^^<" + t.object.datatype + ">";
            break;
    }
    out += " .";
    return out;
}

std::vector<std::string> select_values(const std::vector<Triple>& triples,
                                       const std::string& subject,
                                       const std::string& predicate) {
    std::vector<std::string> values;
    for (const auto& t : triples)
        if (t.subject == subject && t.predicate == predicate) values.push_back(t.object.lexical);
    return values;
}

std::vector<Triple> parse_ntriples_string(const std::string& text) {
    std::istringstream in(text);
    NTriplesParser parser(in);
    std::vector<Triple> triples;
    while (auto t = parser.next()) triples.push_back(std::move(*t));
    return triples;
}

}  // namespace memento
