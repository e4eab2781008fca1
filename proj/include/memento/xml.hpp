#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace memento {

// Just enough XML for the TimeMap vocabulary: elements, attributes, text,
// comments and the five predefined entities. No DTD, no CDATA.
struct XmlNode {
    std::string name;  // as written, prefix included
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlNode> children;
    std::string text;

    const std::string* attr(std::string_view name) const;
};

XmlNode parse_xml(std::string_view input);

std::string xml_escape(std::string_view s);

}  // namespace memento
