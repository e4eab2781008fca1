#include "memento/uri.hpp"

#include <cctype>
#include <cstdio>

namespace memento {

bool is_absolute_uri(std::string_view uri) {
    if (uri.empty() || !std::isalpha(static_cast<unsigned char>(uri[0]))) return false;
    auto colon = uri.find("://");
    if (colon == std::string_view::npos || colon == 0) return false;
    for (std::size_t i = 0; i < colon; ++i) {
        char c = uri[i];
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return false;
    }
    return colon + 3 < uri.size();  // non-empty authority
}

std::string last_path_segment(std::string_view uri) {
    auto slash = uri.rfind('/');
    if (slash == std::string_view::npos) return std::string(uri);
    return std::string(uri.substr(slash + 1));
}

std::optional<UriParts> split_uri(std::string_view uri) {
    auto scheme_end = uri.find("://");
    if (scheme_end == std::string_view::npos) return std::nullopt;
    auto path_start = uri.find('/', scheme_end + 3);
    UriParts parts;
    if (path_start == std::string_view::npos) {
        parts.origin = std::string(uri);
        parts.path = "/";
    } else {
        parts.origin = std::string(uri.substr(0, path_start));
        parts.path = std::string(uri.substr(path_start));
    }
    return parts;
}

std::string url_encode(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", c);
            out += buf;
        }
    }
    return out;
}

}  // namespace memento
