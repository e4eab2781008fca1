#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace memento {

// Scheme + authority present and non-empty.
bool is_absolute_uri(std::string_view uri);

// Last path segment, e.g. ".../resource/France" -> "France".
std::string last_path_segment(std::string_view uri);

struct UriParts {
    std::string origin;  // scheme://host[:port]
    std::string path;    // path + query, "/" when empty
};
std::optional<UriParts> split_uri(std::string_view uri);

std::string url_encode(std::string_view s);

}  // namespace memento
