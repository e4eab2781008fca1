#pragma once

#include <stdexcept>
#include <string>

namespace memento {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MalformedDate : public Error {
public:
    explicit MalformedDate(const std::string& raw)
        : Error("malformed HTTP date: \"" + raw + "\"") {}
};

class MalformedLink : public Error {
public:
    explicit MalformedLink(const std::string& why) : Error("malformed Link header: " + why) {}
};

class NtSyntaxError : public Error {
public:
    NtSyntaxError(std::size_t line, const std::string& why)
        : Error("N-Triples syntax error at line " + std::to_string(line) + ": " + why),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IngestError : public Error {
public:
    explicit IngestError(const std::string& why) : Error("ingest failed: " + why) {}
};

class DateOrderError : public Error {
public:
    explicit DateOrderError(const std::string& why) : Error("DateOrderError: " + why) {}
};

class UnknownSubject : public Error {
public:
    explicit UnknownSubject(const std::string& subject)
        : Error("unknown subject: " + subject) {}
};

class MalformedTimeMap : public Error {
public:
    explicit MalformedTimeMap(const std::string& path_and_why)
        : Error("malformed TimeMap: " + path_and_why) {}
};

}  // namespace memento
