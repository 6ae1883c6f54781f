#ifndef STORYBOARD_RESOURCES_HPP
#define STORYBOARD_RESOURCES_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace storyboard {

/// Values from `res/values/{strings,colors,dimens}.xml`.
struct ResourceTable {
    std::map<std::string, std::string> strings;
    std::map<std::string, std::string> colors; // normalized to #RRGGBB
    std::map<std::string, std::string> dimens; // e.g. "16dp"

    /// True for `@string/x`, `@color/x` and `@dimen/x` style references.
    static bool is_reference(std::string_view value);

    /// Looks up a reference. Returns nullopt for undeclared names or
    /// unsupported resource types.
    std::optional<std::string> find(std::string_view ref) const;

    /// Like find(), but an undeclared name throws UnresolvedAttribute.
    std::string resolve(std::string_view ref) const;

    friend bool operator==(const ResourceTable&, const ResourceTable&) = default;
};

/// Normalizes `#RGB`, `#RRGGBB` and `#AARRGGBB` to upper-case `#RRGGBB`.
/// Returns nullopt when the text is not a color literal.
std::optional<std::string> normalize_color(std::string_view text);

/// Parses one values file (`<resources>` root). Entries are merged into
/// `table`. Throws ParseError on malformed XML or invalid values.
void parse_values(std::string_view xml, const std::string& file,
                  ResourceTable& table);

} // namespace storyboard

#endif
