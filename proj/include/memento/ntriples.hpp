#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace memento {

struct Term {
    enum class Kind { Iri, Literal, Blank };
    Kind kind = Kind::Iri;
    std::string lexical;   // IRI, literal value (unescaped) or blank label
    std::string datatype;  // literal only, may be empty
    std::string lang;      // literal only, may be empty

    bool operator==(const Term&) const = default;
};

struct Triple {
    std::string subject;    // IRI; blank-node subjects are rejected
    std::string predicate;  // IRI
    Term object;

    bool operator==(const Triple&) const = default;
};

// One statement per line. Strict mode throws NtSyntaxError with the line
// number; otherwise bad lines are counted and skipped. Memory use is one
// line at a time regardless of stream size.
class NTriplesParser {
public:
    explicit NTriplesParser(std::istream& in, bool strict = true)
        : in_(in), strict_(strict) {}

    std::optional<Triple> next();

    std::size_t skipped() const { return skipped_; }
    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    bool strict_;
    std::size_t line_ = 0;
    std::size_t skipped_ = 0;
};

// Single statement, no trailing newline.
std::string serialize_triple(const Triple& t);

Triple parse_ntriples_line(const std::string& line, std::size_t lineno = 1);

// Object literal lexical forms of all (subject, predicate) matches, in
// document order.
std::vector<std::string> select_values(const std::vector<Triple>& triples,
                                       const std::string& subject,
                                       const std::string& predicate);

std::vector<Triple> parse_ntriples_string(const std::string& text);

}  // namespace memento
