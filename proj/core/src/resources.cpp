#include "storyboard/resources.hpp"

#include "storyboard/errors.hpp"
#include "xml_dom.hpp"

#include <cctype>

namespace storyboard {

namespace {

constexpr std::string_view kinds[] = {"string", "color", "dimen"};

bool is_dimension(std::string_view v)
{
    std::size_t i = 0;
    bool digits = false;
    while (i < v.size()
           && (std::isdigit(static_cast<unsigned char>(v[i])) || v[i] == '.'
               || (i == 0 && v[i] == '-'))) {
        digits = digits || std::isdigit(static_cast<unsigned char>(v[i]));
        ++i;
    }
    auto unit = v.substr(i);
    return digits
           && (unit == "dp" || unit == "dip" || unit == "sp" || unit == "px");
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

bool ResourceTable::is_reference(std::string_view value)
{
    if (!value.starts_with('@')) {
        return false;
    }
    auto slash = value.find('/');
    if (slash == std::string_view::npos) {
        return false;
    }
    auto type = value.substr(1, slash - 1);
    if (type.starts_with('+')) {
        type.remove_prefix(1);
    }
    if (slash + 1 == value.size()) {
        return false;
    }
    for (auto k : kinds) {
        if (type == k) {
            return true;
        }
    }
    return false;
}

std::optional<std::string> ResourceTable::find(std::string_view ref) const
{
    if (!is_reference(ref)) {
        return std::nullopt;
    }
    auto slash = ref.find('/');
    auto type = ref.substr(1, slash - 1);
    std::string name(ref.substr(slash + 1));
    const std::map<std::string, std::string>* table = nullptr;
    if (type == "string") {
        table = &strings;
    }
    else if (type == "color") {
        table = &colors;
    }
    else {
        table = &dimens;
    }
    auto it = table->find(name);
    if (it == table->end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string ResourceTable::resolve(std::string_view ref) const
{
    if (auto v = find(ref)) {
        return *v;
    }
    throw UnresolvedAttribute("undeclared resource " + std::string(ref));
}

std::optional<std::string> normalize_color(std::string_view text)
{
    if (!text.starts_with('#')) {
        return std::nullopt;
    }
    auto hex = text.substr(1);
    for (char c : hex) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) {
            return std::nullopt;
        }
    }
    std::string rgb;
    switch (hex.size()) {
    case 3:
        for (char c : hex) {
            rgb += c;
            rgb += c;
        }
        break;
    case 6: rgb = hex; break;
    case 8: rgb = hex.substr(2); break;
    default: return std::nullopt;
    }
    for (auto& c : rgb) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return "#" + rgb;
}

void parse_values(std::string_view xml, const std::string& file,
                  ResourceTable& table)
{
    auto dom = detail::parse_xml(xml, file);
    if (dom.name != "resources") {
        throw ParseError(file, dom.line, "expected <resources> root");
    }
    for (const auto& el : dom.children) {
        const auto* name = el.attribute("name");
        if (!name || name->empty()) {
            throw ParseError(file, el.line, "<" + el.name + "> without name");
        }
        auto value = trim(el.text);
        if (el.name == "string") {
            table.strings[*name] = value;
        }
        else if (el.name == "color") {
            auto color = normalize_color(value);
            if (!color) {
                throw ParseError(file, el.line,
                                 "invalid color '" + value + "'");
            }
            table.colors[*name] = *color;
        }
        else if (el.name == "dimen") {
            if (!is_dimension(value)) {
                throw ParseError(file, el.line,
                                 "invalid dimension '" + value + "'");
            }
            table.dimens[*name] = value;
        }
        // Other resource kinds (integer, style, ...) are not used.
    }
}

} // namespace storyboard
