#ifndef STORYBOARD_SRC_XML_DOM_HPP
#define STORYBOARD_SRC_XML_DOM_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace storyboard::detail {

// Minimal element tree built on expat. Attribute order is document order.
struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlElement> children;
    std::string text;
    long line = 0;

    const std::string* attribute(std::string_view key) const;
};

// Throws ParseError(file, line, ...) on malformed input.
XmlElement parse_xml(std::string_view xml, const std::string& file);

std::string escape_xml(std::string_view text);

} // namespace storyboard::detail

#endif
