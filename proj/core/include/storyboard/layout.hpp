#ifndef STORYBOARD_LAYOUT_HPP
#define STORYBOARD_LAYOUT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace storyboard {

/// Attributes of a component in document order. Names are stored without
/// the `android:` prefix. Equality ignores order.
class AttributeSet {
public:
    using value_type = std::pair<std::string, std::string>;
    using const_iterator = std::vector<value_type>::const_iterator;

    AttributeSet() = default;
    AttributeSet(std::initializer_list<value_type> init);

    /// Inserts or overwrites.
    void set(std::string name, std::string value);
    /// Inserts; returns false if the name already exists.
    bool insert(std::string name, std::string value);
    bool erase(std::string_view name);

    const std::string* find(std::string_view name) const;
    std::string get_or(std::string_view name, std::string fallback) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const_iterator begin() const noexcept { return items_.begin(); }
    const_iterator end() const noexcept { return items_.end(); }

    friend bool operator==(const AttributeSet& a, const AttributeSet& b);

private:
    std::vector<value_type> items_;
};

struct ComponentNode {
    std::string tag;
    AttributeSet attributes;
    std::vector<ComponentNode> children;

    /// Value of `android:id` without the `@+id/` / `@id/` prefix.
    std::optional<std::string> id() const;

    std::size_t subtree_size() const;

    friend bool operator==(const ComponentNode&, const ComponentNode&) = default;
};

struct LayoutDocument {
    std::string name; // file stem
    ComponentNode root;

    friend bool operator==(const LayoutDocument&, const LayoutDocument&) = default;
};

/// Strips a package qualifier: `androidx.recyclerview.widget.RecyclerView`
/// becomes `RecyclerView`.
std::string_view simple_tag(std::string_view tag);

/// Widgets that can never hold children.
bool is_leaf_widget(std::string_view tag);

/// Anything that is not a leaf widget is treated as a ViewGroup, including
/// custom container classes.
inline bool is_view_group(std::string_view tag) { return !is_leaf_widget(tag); }

/// Strips `android:` from an attribute name.
std::string_view normalize_attribute_name(std::string_view name);

/// Parses a layout document. `file` is used for error messages and its stem
/// becomes the document name when `name` is empty.
/// Throws ParseError on malformed XML, duplicate attributes, a non-ViewGroup
/// root, or a leaf widget with children.
LayoutDocument parse_layout(std::string_view xml, const std::string& file,
                            std::string name = {});

/// Serializes a component tree to the layout XML dialect. Attribute names
/// are written with the `android:` prefix; the output re-parses to an equal
/// tree.
std::string serialize_layout(const ComponentNode& root);

} // namespace storyboard

#endif
